#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace pih {

/// CSV with a versioned schema line ahead of the header:
///   # pih-csv v1 <name>
///   col_a,col_b,...
/// Floats are written with 17 significant digits so equal runs produce
/// byte-identical files.
class CsvWriter {
 public:
  CsvWriter() = default;
  CsvWriter(const std::string& path, const std::string& name,
            const std::vector<std::string>& header);
  void open(const std::string& path, const std::string& name,
            const std::vector<std::string>& header);
  void write_row(const std::vector<double>& values);
  void flush();
  bool is_open() const { return out_.is_open(); }

 private:
  std::ofstream out_;
  size_t columns_ = 0;
};

struct CsvTable {
  std::string schema;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

/// Parse errors name the offending row and column.
CsvTable read_csv(const std::string& path);

/// One row per finished training episode.
struct MetricsRow {
  int64_t step = 0;
  int64_t episode = 0;
  double ep_return = 0.0;
  int ep_len = 0;
  bool success = false;
  double peak_force = 0.0;
  double q1_loss = 0.0;
  double q2_loss = 0.0;
  double actor_loss = 0.0;
  double alpha = 0.0;
};

std::vector<std::string> metrics_header();
std::vector<double> metrics_values(const MetricsRow& r);

std::vector<std::string> eval_header();

/// Per-policy-step trace: t, relative position, contact force, the 24
/// actions, reward and the done flag.
std::vector<std::string> trace_header();

}  // namespace pih
