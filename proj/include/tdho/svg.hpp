#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "tdho/errors.hpp"

namespace tdho {

/// Minimal self-contained log-log scatter plot with an optional fitted line
/// err = C t^(-b).  Keeps run artifacts free of plotting dependencies.
inline void write_loglog_svg(const std::string& path, const std::vector<double>& times,
                             const std::vector<double>& errors, double fit_c, double fit_b,
                             const std::string& title) {
  if (times.size() != errors.size() || times.empty())
    fail(ErrorCode::OutOfRange, "plot needs matching nonempty series");
  const double w = 720, h = 540, ml = 80, mr = 30, mt = 50, mb = 60;

  double x0 = std::log10(times.front()), x1 = x0, y0 = 0, y1 = 0;
  bool first = true;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(errors[i] > 0.0)) continue;
    const double lx = std::log10(times[i]);
    const double ly = std::log10(errors[i]);
    if (first) {
      x0 = x1 = lx;
      y0 = y1 = ly;
      first = false;
    }
    x0 = std::min(x0, lx);
    x1 = std::max(x1, lx);
    y0 = std::min(y0, ly);
    y1 = std::max(y1, ly);
  }
  if (first) fail(ErrorCode::NonPositiveError, "no positive values to plot");
  if (x1 - x0 < 1e-9) x1 = x0 + 1.0;
  if (y1 - y0 < 1e-9) y1 = y0 + 1.0;
  const double padx = 0.05 * (x1 - x0), pady = 0.08 * (y1 - y0);
  x0 -= padx;
  x1 += padx;
  y0 -= pady;
  y1 += pady;

  auto px = [&](double lx) { return ml + (lx - x0) / (x1 - x0) * (w - ml - mr); };
  auto py = [&](double ly) { return h - mb - (ly - y0) / (y1 - y0) * (h - mt - mb); };

  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
      << "' viewBox='0 0 " << w << " " << h << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << w / 2 << "' y='25' text-anchor='middle' font-size='16'>" << title
      << "</text>\n";

  // Frame and decade ticks.
  out << "<rect x='" << ml << "' y='" << mt << "' width='" << w - ml - mr << "' height='"
      << h - mt - mb << "' fill='none' stroke='black'/>\n";
  for (int d = static_cast<int>(std::ceil(x0)); d <= static_cast<int>(std::floor(x1)); ++d) {
    out << "<line x1='" << px(d) << "' y1='" << mt << "' x2='" << px(d) << "' y2='" << h - mb
        << "' stroke='#dddddd'/>\n";
    out << "<text x='" << px(d) << "' y='" << h - mb + 20
        << "' text-anchor='middle' font-size='12'>1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(y0)); d <= static_cast<int>(std::floor(y1)); ++d) {
    out << "<line x1='" << ml << "' y1='" << py(d) << "' x2='" << w - mr << "' y2='" << py(d)
        << "' stroke='#dddddd'/>\n";
    out << "<text x='" << ml - 8 << "' y='" << py(d) + 4
        << "' text-anchor='end' font-size='12'>1e" << d << "</text>\n";
  }
  out << "<text x='" << w / 2 << "' y='" << h - 15
      << "' text-anchor='middle' font-size='13'>t</text>\n";
  out << "<text x='20' y='" << h / 2
      << "' text-anchor='middle' font-size='13' transform='rotate(-90 20 " << h / 2
      << ")'>error</text>\n";

  // Fitted line across the data range.
  if (fit_c > 0.0) {
    const double la = x0 + padx, lb = x1 - padx;
    const double ya = std::log10(fit_c) - fit_b * la;
    const double yb = std::log10(fit_c) - fit_b * lb;
    out << "<line x1='" << px(la) << "' y1='" << py(ya) << "' x2='" << px(lb) << "' y2='"
        << py(yb) << "' stroke='#cc3333' stroke-dasharray='6,4'/>\n";
  }

  // Data points and connecting path.
  out << "<polyline fill='none' stroke='#3355bb' points='";
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(errors[i] > 0.0)) continue;
    out << px(std::log10(times[i])) << "," << py(std::log10(errors[i])) << " ";
  }
  out << "'/>\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(errors[i] > 0.0)) continue;
    out << "<circle cx='" << px(std::log10(times[i])) << "' cy='" << py(std::log10(errors[i]))
        << "' r='3' fill='#3355bb'/>\n";
  }
  out << "</svg>\n";
}

}  // namespace tdho
