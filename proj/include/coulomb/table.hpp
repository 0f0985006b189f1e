#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "coulomb/summation.hpp"

namespace coulomb {

/// monostate is an absent value: empty CSV field, JSON null.
using Cell = std::variant<std::monostate, double, long long, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
};

enum class OutputFormat { csv, json };

/// 17 significant digits, scientific, '.' decimal separator.
std::string format_double(double v);

/// CSV: header row, comma separated, '\n' line ends.
/// JSON: {"meta": {...}, "rows": [{column: value, ...}, ...]} followed by '\n'.
void write_table(const Table& table, OutputFormat format, std::ostream& os);

/// Writes to `sink`, or to `stdout_stream` when sink is "-". Throws IoError.
void emit_table(const Table& table, OutputFormat format, const std::string& sink, std::ostream& stdout_stream);

/// One row per eps plus a final "extrapolated" row (eps = 0). Values are
/// multiplied by `scale` (1 for g / G, 1/(2ik) for amplitude units).
Table convergence_table(const ConvergenceReport& report, Complex scale = {1.0, 0.0});

}  // namespace coulomb
