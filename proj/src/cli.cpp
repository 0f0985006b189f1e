#include "coulomb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <sstream>

#include "coulomb/errors.hpp"
#include "coulomb/kernels.hpp"

namespace coulomb::cli {
namespace {

constexpr double kPi = std::numbers::pi;

struct RawOptions {
  double k = 1.0;
  double beta = 0.0;
  double mu = 0.0;
  double kappa = 0.0;
  double energy = 0.0;
  double hbar = 1.0;

  double theta_min = 0.1;
  double theta_max = kPi;
  double theta = kPi / 2.0;
  int count = 64;
  std::string spacing = "linear";
  bool degrees = false;

  int lmax = 0;
  double eps_max = 0.1;
  double eps_ratio = 0.5;
  int eps_count = 6;
  int extrap_order = 4;
  std::string damping = "exp";

  std::string method = "closed";
  std::string mode = "raw";
  double epsilon = 0.1;
  double x_min = -1.0;
  double x_max = 1.0;
  double tol = 1e-3;

  std::string format = "csv";
  std::string output = "-";
};

const std::vector<std::string> kDirectFlags = {"--k", "--beta"};
const std::vector<std::string> kPhysicalFlags = {"--mu", "--kappa", "--E", "--hbar"};

void add_params(CLI::App* sub, RawOptions& o) {
  sub->add_option("--k", o.k, "wavenumber k > 0 (default 1)");
  sub->add_option("--beta", o.beta, "Coulomb strength beta (beta > 0 attractive)");
  sub->add_option("--mu", o.mu, "reduced mass (physical style)");
  sub->add_option("--kappa", o.kappa, "coupling kappa in V = -kappa/r (physical style)");
  sub->add_option("--E", o.energy, "incident energy > 0 (physical style)");
  sub->add_option("--hbar", o.hbar, "reduced Planck constant (physical style, default 1)");
}

void add_output(CLI::App* sub, RawOptions& o) {
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", o.output, "output path, '-' for standard output");
}

void add_grid(CLI::App* sub, RawOptions& o) {
  sub->add_option("--theta-min", o.theta_min, "smallest angle (> 0)");
  sub->add_option("--theta-max", o.theta_max, "largest angle (<= pi)");
  sub->add_option("--count", o.count, "number of angles");
  sub->add_option("--spacing", o.spacing, "linear or log")->check(CLI::IsMember({"linear", "log"}));
  sub->add_flag("--degrees", o.degrees, "angles given in degrees");
}

void add_summation(CLI::App* sub, RawOptions& o) {
  sub->add_option("--lmax", o.lmax, "truncation order (default: from smallest eps)");
  sub->add_option("--eps-max", o.eps_max, "largest damping parameter (default 0.1)");
  sub->add_option("--eps-ratio", o.eps_ratio, "geometric ratio of the eps schedule (default 0.5)");
  sub->add_option("--eps-count", o.eps_count, "number of eps values (default 6)");
  sub->add_option("--extrap-order", o.extrap_order, "Neville order, 0 = smallest eps (default 4)");
  sub->add_option("--damping", o.damping, "exp: exp(-eps l); heat: exp(-eps l(l+1))")
      ->check(CLI::IsMember({"exp", "heat"}));
}

void add_single_angle(CLI::App* sub, RawOptions& o) {
  sub->add_option("--theta", o.theta, "scattering angle (default pi/2)");
  sub->add_flag("--degrees", o.degrees, "angle given in degrees");
}

double to_radians(double v, bool degrees) { return degrees ? v / 180.0 * kPi : v; }

// Defaults are radians; --degrees only rescales values the user actually gave.
double angle_option(const CLI::App* sub, const char* name, double value, bool degrees) {
  return sub->get_option(name)->count() > 0 ? to_radians(value, degrees) : value;
}

PhysicalParams resolve_params(const CLI::App* sub, const RawOptions& o) {
  const auto given = [&](const std::vector<std::string>& names) {
    return std::any_of(names.begin(), names.end(), [&](const std::string& n) {
      const auto* opt = sub->get_option_no_throw(n);
      return opt != nullptr && opt->count() > 0;
    });
  };
  const bool direct = given(kDirectFlags);
  const bool physical = given(kPhysicalFlags);
  if (direct && physical) {
    throw UsageError("give either --k/--beta or --mu/--kappa/--E/--hbar, not both");
  }
  if (physical) {
    for (const char* n : {"--mu", "--kappa", "--E"}) {
      if (sub->get_option(n)->count() == 0) {
        throw UsageError(std::string("physical parameterization needs ") + n);
      }
    }
    return params_from_physical(o.mu, o.kappa, o.energy, o.hbar);
  }
  if (sub->get_option("--beta")->count() == 0) {
    throw UsageError("--beta is required (or --mu/--kappa/--E)");
  }
  return PhysicalParams(o.k, o.beta);
}

SummationConfig resolve_summation(const CLI::App* sub, const RawOptions& o) {
  const Damping damping = o.damping == "heat" ? Damping::heat : Damping::exponential;
  auto cfg = SummationConfig::geometric(o.eps_max, o.eps_ratio, o.eps_count, o.extrap_order, damping);
  if (sub->get_option("--lmax")->count() > 0) cfg.l_max = o.lmax;
  cfg.validate();
  return cfg;
}

nlohmann::ordered_json echo_flags(const CLI::App* sub) {
  nlohmann::ordered_json flags = nlohmann::ordered_json::object();
  for (const auto* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    if (opt->get_expected_max() == 0) {
      flags[opt->get_name()] = true;
    } else {
      flags[opt->get_name()] = opt->results().back();
    }
  }
  return flags;
}

nlohmann::ordered_json summation_meta(const SummationConfig& s) {
  nlohmann::ordered_json m;
  m["l_max"] = s.resolved_l_max();
  m["epsilons"] = s.epsilons;
  m["extrapolation_order"] = s.extrapolation_order;
  m["damping"] = s.damping == Damping::heat ? "heat" : "exp";
  return m;
}

std::string_view command_name(Command c) {
  switch (c) {
    case Command::amplitude: return "amplitude";
    case Command::partial_sum: return "partial-sum";
    case Command::phase_shifts: return "phase-shifts";
    case Command::cross_section: return "cross-section";
    case Command::kernel_demo: return "kernel-demo";
    case Command::verify: return "verify";
  }
  return "unknown";
}

int threads_from_env() {
  const char* raw = std::getenv(kThreadsEnv);
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096) {
    throw UsageError(std::string(kThreadsEnv) + " must be an integer >= 1");
  }
  return static_cast<int>(v);
}

Table amplitude_table(const RunConfig& cfg, kernels::Execution exec) {
  const auto thetas = cfg.angle_grid.points();
  const auto results = cfg.series_method
                           ? kernels::series_amplitude_sweep(thetas, cfg.params, cfg.summation, true, exec)
                           : kernels::closed_amplitude_sweep(thetas, cfg.params, exec);
  Table t;
  t.columns = {"theta", "re_f", "im_f", "abs_f2", "method", "error_estimate"};
  for (const auto& r : results) {
    t.rows.push_back({r.theta, r.f.real(), r.f.imag(), std::norm(r.f), std::string(to_string(r.method)),
                      r.error_estimate});
  }
  return t;
}

Table cross_section_table(const RunConfig& cfg, kernels::Execution exec) {
  const auto thetas = cfg.angle_grid.points();
  const auto results = kernels::closed_amplitude_sweep(thetas, cfg.params, exec);
  Table t;
  t.columns = {"theta", "dsigma_domega", "rutherford"};
  for (const auto& r : results) {
    t.rows.push_back({r.theta, std::norm(r.f), rutherford_cross_section(r.theta, cfg.params)});
  }
  return t;
}

Table phase_shift_table(const RunConfig& cfg) {
  Table t;
  t.columns = {"l", "delta", "re_S", "im_S"};
  for (int l = 0; l <= cfg.lmax; ++l) {
    const auto w = s_matrix(l, cfg.params);
    t.rows.push_back({static_cast<long long>(l), w.delta, w.s.real(), w.s.imag()});
  }
  return t;
}

Table partial_sum_table(const RunConfig& cfg) {
  const double theta = cfg.angle_grid.theta_min;
  const Complex inv_two_ik = 1.0 / Complex(0.0, 2.0 * cfg.params.k());
  if (cfg.smoothed_partial_sum) {
    const auto sa = series_amplitude_with_report(theta, cfg.params, cfg.summation, true);
    return convergence_table(sa.report, inv_two_ik);
  }
  const auto sums = unregularized_partial_sums(theta, cfg.params, cfg.lmax);
  Table t;
  t.columns = {"n", "re_f", "im_f", "abs_f"};
  for (std::size_t n = 0; n < sums.size(); ++n) {
    t.rows.push_back({static_cast<long long>(n), sums[n].real(), sums[n].imag(), std::abs(sums[n])});
  }
  return t;
}

Table kernel_table(const RunConfig& cfg, kernels::Execution exec) {
  std::vector<double> xs(static_cast<std::size_t>(cfg.x_count));
  for (int i = 0; i < cfg.x_count; ++i) {
    xs[static_cast<std::size_t>(i)] =
        cfg.x_count == 1 ? cfg.x_min : cfg.x_min + (cfg.x_max - cfg.x_min) * i / (cfg.x_count - 1);
  }
  if (cfg.x_count > 1) xs.back() = cfg.x_max;
  const auto values = kernels::delta_kernel_grid(xs, cfg.epsilon, cfg.lmax, exec);
  Table t;
  t.columns = {"x", "value"};
  for (std::size_t i = 0; i < xs.size(); ++i) t.rows.push_back({xs[i], values[i]});
  return t;
}

Table verify_table(const RunConfig& cfg, bool* passed) {
  const double theta = cfg.angle_grid.theta_min;
  const auto series = series_amplitude(theta, cfg.params, cfg.summation, false);
  const auto closed = closed_amplitude(theta, cfg.params);
  const double abs_error = std::abs(series.f - closed.f);
  const double scale = std::abs(closed.f);
  // With beta = 0 the closed amplitude vanishes; fall back to the absolute error.
  const double rel_error = scale > 0.0 ? abs_error / scale : abs_error;
  const bool ok = rel_error <= cfg.tolerance;
  if (passed) *passed = ok;
  Table t;
  t.columns = {"theta", "re_series", "im_series", "re_closed", "im_closed", "abs_error", "rel_error", "tol",
               "passed"};
  t.rows.push_back({theta, series.f.real(), series.f.imag(), closed.f.real(), closed.f.imag(), abs_error,
                    rel_error, cfg.tolerance, ok});
  return t;
}

}  // namespace

void AngleGrid::validate() const {
  if (!(theta_min > 0.0)) throw DomainError("angle grid: theta_min must be > 0");
  if (!(theta_max <= kPi)) throw DomainError("angle grid: theta_max must be <= pi");
  if (!(theta_min <= theta_max)) throw UsageError("angle grid: theta_min > theta_max");
  if (count < 1) throw UsageError("angle grid: count must be >= 1");
}

std::vector<double> AngleGrid::points() const {
  validate();
  std::vector<double> pts(static_cast<std::size_t>(count));
  if (count == 1) {
    pts[0] = theta_min;
    return pts;
  }
  const double span = count - 1.0;
  for (int i = 0; i < count; ++i) {
    const double t = i / span;
    pts[static_cast<std::size_t>(i)] = spacing == Spacing::linear
                                           ? theta_min + (theta_max - theta_min) * t
                                           : theta_min * std::pow(theta_max / theta_min, t);
  }
  pts.back() = theta_max;
  return pts;
}

std::optional<RunConfig> parse_arguments(std::span<const std::string> args, std::ostream& help_out) {
  RawOptions o;
  CLI::App app{"coulomb-kit: Coulomb scattering amplitude from the closed form and the regularized partial-wave series"};
  app.require_subcommand(1);

  auto* amplitude = app.add_subcommand("amplitude", "f(theta) on an angle grid. Columns: theta,re_f,im_f,abs_f2,method,error_estimate");
  add_params(amplitude, o);
  add_grid(amplitude, o);
  add_summation(amplitude, o);
  amplitude->add_option("--method", o.method, "closed or series")->check(CLI::IsMember({"closed", "series"}));
  add_output(amplitude, o);

  auto* partial = app.add_subcommand(
      "partial-sum",
      "Partial sums at one angle. raw columns: n,re_f,im_f,abs_f; smoothed columns: kind,epsilon,re,im,abs_error");
  add_params(partial, o);
  add_single_angle(partial, o);
  add_summation(partial, o);
  partial->add_option("--mode", o.mode, "raw (default) or smoothed")->check(CLI::IsMember({"raw", "smoothed"}));
  add_output(partial, o);

  auto* phases = app.add_subcommand("phase-shifts", "S_l and delta_l for l = 0..lmax. Columns: l,delta,re_S,im_S");
  add_params(phases, o);
  phases->add_option("--lmax", o.lmax, "largest l (default 20)");
  add_output(phases, o);

  auto* cross = app.add_subcommand("cross-section", "|f|^2 on an angle grid. Columns: theta,dsigma_domega,rutherford");
  add_params(cross, o);
  add_grid(cross, o);
  add_output(cross, o);

  auto* kernel = app.add_subcommand("kernel-demo", "sum (2l+1) exp(-eps l) P_l(x) on an x grid. Columns: x,value");
  kernel->add_option("--epsilon", o.epsilon, "damping parameter (default 0.1)");
  kernel->add_option("--lmax", o.lmax, "truncation order (default ceil(ln(1e16)/epsilon))");
  kernel->add_option("--x-min", o.x_min, "default -1");
  kernel->add_option("--x-max", o.x_max, "default 1");
  kernel->add_option("--count", o.count, "number of x points (default 101)");
  add_output(kernel, o);

  auto* verify = app.add_subcommand(
      "verify",
      "Compare series and closed amplitude at one angle; exit 4 if rel error > tol. "
      "Columns: theta,re_series,im_series,re_closed,im_closed,abs_error,rel_error,tol,passed");
  add_params(verify, o);
  add_single_angle(verify, o);
  add_summation(verify, o);
  verify->add_option("--tol", o.tol, "relative tolerance (default 1e-3)");
  add_output(verify, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    help_out << (subs.empty() ? app.help() : subs.front()->help());
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    help_out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    throw UsageError(std::string(e.what()) + "\n\n" + (subs.empty() ? app.help() : subs.front()->help()));
  }

  const CLI::App* sub = app.get_subcommands().front();
  RunConfig cfg;
  cfg.args.assign(args.begin(), args.end());
  cfg.flags = echo_flags(sub);
  cfg.output = o.format == "json" ? OutputFormat::json : OutputFormat::csv;
  cfg.output_path = o.output;

  if (sub == amplitude || sub == cross) {
    cfg.command = sub == amplitude ? Command::amplitude : Command::cross_section;
    cfg.params = resolve_params(sub, o);
    cfg.angle_grid = {angle_option(sub, "--theta-min", o.theta_min, o.degrees),
                      angle_option(sub, "--theta-max", o.theta_max, o.degrees), o.count,
                      o.spacing == "log" ? Spacing::log : Spacing::linear};
    cfg.angle_grid.validate();
    if (sub == amplitude) {
      cfg.series_method = o.method == "series";
      cfg.summation = resolve_summation(sub, o);
    }
  } else if (sub == partial || sub == verify) {
    cfg.command = sub == partial ? Command::partial_sum : Command::verify;
    cfg.params = resolve_params(sub, o);
    const double theta = angle_option(sub, "--theta", o.theta, o.degrees);
    cfg.angle_grid = {theta, theta, 1, Spacing::linear};
    cfg.angle_grid.validate();
    check_scattering_angle(theta);
    cfg.smoothed_partial_sum = o.mode == "smoothed";
    // in raw mode --lmax is the number of partial sums, not a truncation order
    if (sub == verify || cfg.smoothed_partial_sum) cfg.summation = resolve_summation(sub, o);
    cfg.lmax = sub->get_option("--lmax")->count() > 0 ? o.lmax : 200;
    if (cfg.lmax < 0) throw UsageError("--lmax must be >= 0");
    cfg.tolerance = o.tol;
    if (!(cfg.tolerance >= 0.0)) throw UsageError("--tol must be >= 0");
  } else if (sub == phases) {
    cfg.command = Command::phase_shifts;
    cfg.params = resolve_params(sub, o);
    cfg.lmax = sub->get_option("--lmax")->count() > 0 ? o.lmax : 20;
    if (cfg.lmax < 0) throw UsageError("--lmax must be >= 0");
  } else {
    cfg.command = Command::kernel_demo;
    if (!(o.epsilon > 0.0)) throw UsageError("--epsilon must be > 0");
    cfg.epsilon = o.epsilon;
    cfg.lmax = sub->get_option("--lmax")->count() > 0 ? o.lmax
                                                      : static_cast<int>(std::ceil(kTailExponent / o.epsilon));
    if (cfg.lmax < 0) throw UsageError("--lmax must be >= 0");
    cfg.x_min = o.x_min;
    cfg.x_max = o.x_max;
    cfg.x_count = sub->get_option("--count")->count() > 0 ? o.count : 101;
    if (cfg.x_count < 1) throw UsageError("--count must be >= 1");
    if (!(cfg.x_min >= -1.0 && cfg.x_max <= 1.0)) throw DomainError("kernel-demo: x grid must lie in [-1, 1]");
    if (!(cfg.x_min <= cfg.x_max)) throw UsageError("kernel-demo: --x-min > --x-max");
  }
  return cfg;
}

Table execute(const RunConfig& cfg, bool* verify_passed) {
  kernels::Execution exec{true, threads_from_env()};
  Table t;
  switch (cfg.command) {
    case Command::amplitude: t = amplitude_table(cfg, exec); break;
    case Command::cross_section: t = cross_section_table(cfg, exec); break;
    case Command::phase_shifts: t = phase_shift_table(cfg); break;
    case Command::partial_sum: t = partial_sum_table(cfg); break;
    case Command::kernel_demo: t = kernel_table(cfg, exec); break;
    case Command::verify: t = verify_table(cfg, verify_passed); break;
  }

  auto& meta = t.meta;
  nlohmann::ordered_json head;
  head["command"] = command_name(cfg.command);
  head["args"] = cfg.args;
  head["flags"] = cfg.flags;
  head["k"] = cfg.params.k();
  head["beta"] = cfg.params.beta();
  if (cfg.params.velocity()) head["velocity"] = *cfg.params.velocity();
  switch (cfg.command) {
    case Command::amplitude:
    case Command::cross_section:
      head["theta_min"] = cfg.angle_grid.theta_min;
      head["theta_max"] = cfg.angle_grid.theta_max;
      head["count"] = cfg.angle_grid.count;
      head["spacing"] = cfg.angle_grid.spacing == Spacing::log ? "log" : "linear";
      if (cfg.command == Command::amplitude) {
        head["method"] = cfg.series_method ? "series" : "closed";
        if (cfg.series_method) head["summation"] = summation_meta(cfg.summation);
      }
      break;
    case Command::partial_sum:
    case Command::verify:
      head["theta"] = cfg.angle_grid.theta_min;
      if (cfg.command == Command::verify || cfg.smoothed_partial_sum) {
        head["summation"] = summation_meta(cfg.summation);
      } else {
        head["lmax"] = cfg.lmax;
      }
      if (cfg.command == Command::verify) head["tol"] = cfg.tolerance;
      break;
    case Command::phase_shifts:
      head["lmax"] = cfg.lmax;
      break;
    case Command::kernel_demo:
      head.erase("k");
      head.erase("beta");
      head["epsilon"] = cfg.epsilon;
      head["lmax"] = cfg.lmax;
      head["x_min"] = cfg.x_min;
      head["x_max"] = cfg.x_max;
      head["count"] = cfg.x_count;
      break;
  }
  // keep command-specific report fields (if any) after the echoed config
  head.update(meta);
  meta = std::move(head);
  return t;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_arguments(args, out);
    if (!cfg) return kExitOk;
    bool passed = true;
    const Table table = execute(*cfg, &passed);
    emit_table(table, cfg->output, cfg->output_path, out);
    return passed ? kExitOk : kExitVerifyFailed;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const RangeError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const OverflowError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace coulomb::cli
