#include "pih/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "pih/metrics.hpp"

namespace pih {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double nice_step(double span) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  if (r < 1.5) return mag;
  if (r < 3.5) return 2.0 * mag;
  if (r < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace

std::vector<double> smooth(const std::vector<double>& y, int window) {
  std::vector<double> out(y.size());
  const int half = std::max(0, window / 2);
  for (size_t i = 0; i < y.size(); ++i) {
    const size_t lo = i >= static_cast<size_t>(half) ? i - half : 0;
    const size_t hi = std::min(y.size() - 1, i + static_cast<size_t>(half));
    double acc = 0.0;
    for (size_t k = lo; k <= hi; ++k) acc += y[k];
    out[i] = acc / static_cast<double>(hi - lo + 1);
  }
  return out;
}

AxisRange write_svg_plot(const std::string& path, const std::string& title,
                         const std::string& xlabel, const std::string& ylabel,
                         const std::vector<Series>& series, int width, int height) {
  AxisRange r;
  bool any = false;
  for (const Series& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("plot: x/y size mismatch");
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!any) {
        r.x_min = r.x_max = s.x[i];
        r.y_min = r.y_max = s.y[i];
        any = true;
      } else {
        r.x_min = std::min(r.x_min, s.x[i]);
        r.x_max = std::max(r.x_max, s.x[i]);
        r.y_min = std::min(r.y_min, s.y[i]);
        r.y_max = std::max(r.y_max, s.y[i]);
      }
    }
  }
  if (!any) {
    r = AxisRange{0.0, 1.0, 0.0, 1.0};
  } else {
    if (r.x_max == r.x_min) {
      r.x_min -= 0.5;
      r.x_max += 0.5;
    }
    if (r.y_max == r.y_min) {
      r.y_min -= 0.5;
      r.y_max += 0.5;
    }
    const double pad = 0.04 * (r.y_max - r.y_min);
    r.y_min -= pad;
    r.y_max += pad;
  }

  const double ml = 70, mr = 140, mt = 40, mb = 50;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto sx = [&](double x) { return ml + (x - r.x_min) / (r.x_max - r.x_min) * pw; };
  auto sy = [&](double y) { return mt + ph - (y - r.y_min) / (r.y_max - r.y_min) * ph; };

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("plot: cannot write " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
      << "font-family=\"sans-serif\">" << title << "</text>\n";

  // Axes and ticks.
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  const double xs = nice_step(r.x_max - r.x_min);
  for (double t = std::ceil(r.x_min / xs) * xs; t <= r.x_max + 1e-12; t += xs) {
    out << "<line x1=\"" << sx(t) << "\" y1=\"" << mt + ph << "\" x2=\"" << sx(t) << "\" y2=\""
        << mt + ph + 5 << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << sx(t) << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << fmt(t)
        << "</text>\n";
  }
  const double ys = nice_step(r.y_max - r.y_min);
  for (double t = std::ceil(r.y_min / ys) * ys; t <= r.y_max + 1e-12; t += ys) {
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(t) << "\" x2=\"" << ml << "\" y2=\""
        << sy(t) << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << sy(t) + 4
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << fmt(t)
        << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << xlabel
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
      << "transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << ylabel << "</text>\n";

  int ci = 0;
  double ly = mt + 10;
  for (const Series& s : series) {
    const char* color = kPalette[ci % 10];
    if (!s.x.empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (size_t i = 0; i < s.x.size(); ++i) out << sx(s.x[i]) << "," << sy(s.y[i]) << " ";
      out << "\"/>\n";
      if (s.x.size() == 1)
        out << "<circle cx=\"" << sx(s.x[0]) << "\" cy=\"" << sy(s.y[0]) << "\" r=\"3\" fill=\""
            << color << "\"/>\n";
    }
    out << "<line x1=\"" << ml + pw + 8 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 28
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << ml + pw + 32 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << s.label << "</text>\n";
    ly += 16;
    ++ci;
  }
  out << "</svg>\n";
  return r;
}

std::vector<std::string> emit_plots(const std::string& metrics_csv, const std::string& trace_csv,
                                    const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;

  if (!metrics_csv.empty()) {
    const CsvTable t = read_csv(metrics_csv);
    const int cs = t.column("step");
    const int cr = t.column("ep_return");
    if (cs < 0 || cr < 0) throw std::runtime_error("plot: metrics csv lacks step/ep_return");
    Series raw{"return", {}, {}}, sm{"smoothed", {}, {}};
    for (const auto& row : t.rows) {
      raw.x.push_back(row[static_cast<size_t>(cs)]);
      raw.y.push_back(row[static_cast<size_t>(cr)]);
    }
    sm.x = raw.x;
    sm.y = smooth(raw.y, 21);
    const std::string path = out_dir + "/learning_curve.svg";
    write_svg_plot(path, "Training episodes", "environment steps", "episode return", {raw, sm});
    written.push_back(path);
  }

  if (!trace_csv.empty()) {
    const CsvTable t = read_csv(trace_csv);
    const int ct = t.column("t");
    if (ct < 0) throw std::runtime_error("plot: trace csv lacks t column");
    auto col_series = [&](const std::string& name) {
      Series s{name, {}, {}};
      const int c = t.column(name);
      for (const auto& row : t.rows) {
        s.x.push_back(row[static_cast<size_t>(ct)]);
        s.y.push_back(row[static_cast<size_t>(c)]);
      }
      return s;
    };
    const std::string pos_path = out_dir + "/trace_position.svg";
    write_svg_plot(pos_path, "Relative position to goal", "policy step", "m",
                   {col_series("rel_px"), col_series("rel_py"), col_series("rel_pz")});
    written.push_back(pos_path);

    std::vector<Series> forces;
    for (int i = 0; i < 6; ++i) forces.push_back(col_series("f" + std::to_string(i)));
    const std::string force_path = out_dir + "/trace_force.svg";
    write_svg_plot(force_path, "Contact wrench", "policy step", "N / N*m", forces);
    written.push_back(force_path);

    std::vector<Series> actions;
    for (int i = 0; i < 24; ++i) actions.push_back(col_series("a" + std::to_string(i)));
    const std::string act_path = out_dir + "/trace_actions.svg";
    write_svg_plot(act_path, "Policy actions", "policy step", "normalized action", actions);
    written.push_back(act_path);
  }
  return written;
}

}  // namespace pih
