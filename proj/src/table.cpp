#include "coulomb/table.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "coulomb/errors.hpp"

namespace coulomb {
namespace {

struct CsvCell {
  std::ostream& os;
  void operator()(std::monostate) const {}
  void operator()(double v) const { os << format_double(v); }
  void operator()(long long v) const { os << v; }
  void operator()(const std::string& v) const { os << v; }
  void operator()(bool v) const { os << (v ? "true" : "false"); }
};

nlohmann::ordered_json to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      cell);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_table(const Table& table, OutputFormat format, std::ostream& os) {
  if (format == OutputFormat::csv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      os << (c ? "," : "") << table.columns[c];
    }
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) os << ',';
        std::visit(CsvCell{os}, row[c]);
      }
      os << '\n';
    }
    return;
  }

  nlohmann::ordered_json doc;
  doc["meta"] = table.meta;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
      obj[table.columns[c]] = to_json(row[c]);
    }
    doc["rows"].push_back(std::move(obj));
  }
  os << doc.dump(2) << '\n';
}

void emit_table(const Table& table, OutputFormat format, const std::string& sink, std::ostream& stdout_stream) {
  if (sink == "-") {
    write_table(table, format, stdout_stream);
    stdout_stream.flush();
    if (!stdout_stream) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream file(sink, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file: " + sink);
  write_table(table, format, file);
  file.close();
  if (!file) throw IoError("failed writing output file: " + sink);
}

Table convergence_table(const ConvergenceReport& report, Complex scale) {
  Table t;
  t.columns = {"kind", "epsilon", "re", "im", "abs_error"};
  const auto error_cell = [&](Complex v) -> Cell {
    if (!report.reference) return std::monostate{};
    return std::abs((v - *report.reference) * scale);
  };
  for (std::size_t i = 0; i < report.epsilons.size(); ++i) {
    const Complex v = report.partial_values[i];
    const Complex s = v * scale;
    t.rows.push_back({std::string("damped"), report.epsilons[i], s.real(), s.imag(), error_cell(v)});
  }
  const Complex e = report.extrapolated * scale;
  t.rows.push_back({std::string("extrapolated"), 0.0, e.real(), e.imag(), error_cell(report.extrapolated)});

  auto& m = t.meta["report"];
  m["l_max"] = report.l_max;
  m["tail_estimate"] = report.tail_estimate;
  m["truncation_weight"] = report.truncation_weight;
  m["truncation_ok"] = report.truncation_ok;
  m["near_forward"] = report.near_forward;
  m["extrapolation_spread"] = report.extrapolation_spread * std::abs(scale);
  return t;
}

}  // namespace coulomb
