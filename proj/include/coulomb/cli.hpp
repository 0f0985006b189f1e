#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coulomb/coulomb_core.hpp"
#include "coulomb/summation.hpp"
#include "coulomb/table.hpp"

namespace coulomb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitVerifyFailed = 4;
inline constexpr int kExitIo = 5;

/// Name of the environment variable capping the worker thread count.
inline constexpr const char* kThreadsEnv = "COULOMB_KIT_THREADS";

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Command { amplitude, partial_sum, phase_shifts, cross_section, kernel_demo, verify };

enum class Spacing { linear, log };

struct AngleGrid {
  double theta_min = 0.1;
  double theta_max = 3.141592653589793;
  int count = 64;
  Spacing spacing = Spacing::linear;

  /// DomainError if theta_min <= 0 or theta_max > pi; UsageError if the
  /// bounds are reversed or count < 1.
  void validate() const;
  std::vector<double> points() const;
};

struct RunConfig {
  Command command = Command::amplitude;
  PhysicalParams params{1.0, 0.0};
  AngleGrid angle_grid;
  SummationConfig summation = SummationConfig::defaults();
  OutputFormat output = OutputFormat::csv;
  std::string output_path = "-";

  // command-specific
  bool series_method = false;        // amplitude --method series
  bool smoothed_partial_sum = false; // partial-sum --mode smoothed
  int lmax = 0;                      // phase-shifts, partial-sum raw, kernel-demo
  double epsilon = 0.1;              // kernel-demo
  double x_min = -1.0;               // kernel-demo
  double x_max = 1.0;
  int x_count = 101;
  double tolerance = 1e-3;           // verify

  /// Verbatim argument list and flag values, echoed into JSON meta.
  std::vector<std::string> args;
  nlohmann::ordered_json flags = nlohmann::ordered_json::object();
};

/// Parses a full argument list (without the program name). Throws
/// UsageError, DomainError or ConfigError. Returns nullopt when help was
/// requested (help text goes to `help_out`).
std::optional<RunConfig> parse_arguments(std::span<const std::string> args, std::ostream& help_out);

/// Builds the output table for a parsed configuration. For `verify`,
/// `verify_passed` receives the comparison outcome.
Table execute(const RunConfig& cfg, bool* verify_passed = nullptr);

/// Full front end: parse, execute, emit. Returns the process exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace coulomb::cli
