#pragma once

#include <string>
#include <vector>

namespace pih {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct AxisRange {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
};

/// Writes a static SVG line plot. Empty series produce an empty-axes plot.
/// Returns the axis ranges actually used (they cover all data extrema).
AxisRange write_svg_plot(const std::string& path, const std::string& title,
                         const std::string& xlabel, const std::string& ylabel,
                         const std::vector<Series>& series, int width = 900, int height = 520);

/// Centered moving average, window clamped to the series ends.
std::vector<double> smooth(const std::vector<double>& y, int window);

/// Learning-curve plot (smoothed return vs steps) from a metrics CSV and a
/// per-step trace plot set (position, force, actions) from a trace CSV.
/// Either path may be empty. Returns the files written.
std::vector<std::string> emit_plots(const std::string& metrics_csv, const std::string& trace_csv,
                                    const std::string& out_dir);

}  // namespace pih
