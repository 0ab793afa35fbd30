#pragma once

// Average-convergence-curve rendering: a small self-contained SVG writer
// (iteration vs. log10 relative error, one polyline per algorithm) plus a
// CSV twin for external plotting tools.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qswarm::plot {

struct Series {
  std::string label;
  std::vector<double> values;  // relative error per iteration, index 0 = init
};

inline std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// CSV twin: header "iter,<label>..." and one row per iteration.
inline std::string curves_csv(std::span<const Series> series) {
  if (series.empty()) throw std::invalid_argument("no series to plot");
  const std::size_t len = series.front().values.size();
  std::ostringstream out;
  out << "iter";
  for (const auto& s : series) {
    if (s.values.size() != len) throw std::invalid_argument("series length mismatch");
    out << ',' << s.label;
  }
  out << '\n';
  for (std::size_t t = 0; t < len; ++t) {
    out << t;
    for (const auto& s : series) out << ',' << format_short(s.values[t]);
    out << '\n';
  }
  return out.str();
}

/// SVG with log-scale y (relative error, clamped at 1e-16), linear x
/// (iteration), axis ticks and a legend naming each polyline.
inline std::string curves_svg(std::span<const Series> series, const std::string& title) {
  if (series.empty()) throw std::invalid_argument("no series to plot");
  constexpr double kWidth = 760.0, kHeight = 480.0;
  constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;
  constexpr double kFloor = 1e-16;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

  const std::size_t len = series.front().values.size();
  double lo = 0.0, hi = -16.0;
  for (const auto& s : series) {
    if (s.values.size() != len) throw std::invalid_argument("series length mismatch");
    for (double v : s.values) {
      const double lg = std::log10(std::max(v, kFloor));
      lo = std::min(lo, lg);
      hi = std::max(hi, lg);
    }
  }
  if (hi <= lo) hi = lo + 1.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto x_of = [&](std::size_t t) {
    return kLeft + plot_w * static_cast<double>(t) / static_cast<double>(len - 1);
  };
  auto y_of = [&](double lg) { return kTop + plot_h * (hi - lg) / (hi - lo); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << title << "</text>\n";
  // frame
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
  // y ticks at integer log10 values
  for (int lg = static_cast<int>(std::ceil(lo)); lg <= static_cast<int>(std::floor(hi)); ++lg) {
    const double y = y_of(lg);
    svg << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\""
        << y << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-size=\"11\">1e" << lg << "</text>\n";
  }
  // x ticks
  for (int i = 0; i <= 4; ++i) {
    const std::size_t t = (len - 1) * static_cast<std::size_t>(i) / 4;
    const double x = x_of(t);
    svg << "<line x1=\"" << x << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << x << "\" y2=\""
        << kTop + plot_h + 4 << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << t << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">iteration</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    svg << "<polyline fill=\"none\" stroke=\"" << kColors[s % 8]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t t = 0; t < len; ++t) {
      const double lg = std::log10(std::max(series[s].values[t], kFloor));
      svg << format_short(x_of(t)) << ',' << format_short(y_of(lg));
      if (t + 1 < len) svg << ' ';
    }
    svg << "\"/>\n";
    // legend entry
    const double ly = kTop + 14.0 + 16.0 * static_cast<double>(s);
    svg << "<line x1=\"" << kLeft + plot_w - 150 << "\" y1=\"" << ly << "\" x2=\""
        << kLeft + plot_w - 126 << "\" y2=\"" << ly << "\" stroke=\"" << kColors[s % 8]
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kLeft + plot_w - 120 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\">" << series[s].label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace qswarm::plot
