#include "pih/metrics.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pih {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

CsvWriter::CsvWriter(const std::string& path, const std::string& name,
                     const std::vector<std::string>& header) {
  open(path, name, header);
}

void CsvWriter::open(const std::string& path, const std::string& name,
                     const std::vector<std::string>& header) {
  out_.open(path, std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot write csv: " + path);
  columns_ = header.size();
  out_ << "# pih-csv v1 " << name << "\n";
  for (size_t i = 0; i < header.size(); ++i) out_ << header[i] << (i + 1 < header.size() ? "," : "");
  out_ << "\n";
  out_.flush();
}

void CsvWriter::write_row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw std::invalid_argument("csv: row width does not match header");
  for (size_t i = 0; i < values.size(); ++i)
    out_ << format_value(values[i]) << (i + 1 < values.size() ? "," : "");
  out_ << "\n";
}

void CsvWriter::flush() { out_.flush(); }

int CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv: " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# pih-csv", 0) != 0)
    throw std::runtime_error("csv parse error at row 1: missing schema line in " + path);
  t.schema = line;
  if (!std::getline(in, line))
    throw std::runtime_error("csv parse error at row 2: missing header in " + path);
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  int64_t row_idx = 2;
  while (std::getline(in, line)) {
    ++row_idx;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      ++col;
      try {
        size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument("trailing characters");
        row.push_back(v);
      } catch (const std::exception&) {
        throw std::runtime_error("csv parse error at row " + std::to_string(row_idx) +
                                 ", column " + std::to_string(col) + " ('" +
                                 (col <= t.header.size() ? t.header[col - 1] : "?") + "') in " +
                                 path);
      }
    }
    if (row.size() != t.header.size())
      throw std::runtime_error("csv parse error at row " + std::to_string(row_idx) +
                               ": expected " + std::to_string(t.header.size()) + " columns, got " +
                               std::to_string(row.size()) + " in " + path);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::string> metrics_header() {
  return {"step",       "episode", "ep_return", "ep_len",     "success",
          "peak_force", "q1_loss", "q2_loss",   "actor_loss", "alpha"};
}

std::vector<double> metrics_values(const MetricsRow& r) {
  return {static_cast<double>(r.step),
          static_cast<double>(r.episode),
          r.ep_return,
          static_cast<double>(r.ep_len),
          r.success ? 1.0 : 0.0,
          r.peak_force,
          r.q1_loss,
          r.q2_loss,
          r.actor_loss,
          r.alpha};
}

std::vector<std::string> eval_header() {
  return {"step", "success_rate", "mean_return", "mean_steps", "mean_wall_seconds"};
}

std::vector<std::string> trace_header() {
  std::vector<std::string> h{"t", "rel_px", "rel_py", "rel_pz"};
  for (int i = 0; i < 6; ++i) h.push_back("f" + std::to_string(i));
  for (int i = 0; i < 24; ++i) h.push_back("a" + std::to_string(i));
  h.push_back("reward");
  h.push_back("done");
  return h;
}

}  // namespace pih
