#include "sbx/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sbx {

namespace {

constexpr double kWidth = 840, kHeight = 560;
constexpr double kLeft = 80, kRight = 40, kTop = 56, kBottom = 64;

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::string tick_label(double v, bool log_scale) {
  if (log_scale) {
    const double l2 = std::log2(v);
    if (std::abs(l2 - std::round(l2)) < 1e-9 && std::abs(l2) <= 40) {
      return "2^" + std::to_string(static_cast<long>(std::round(l2)));
    }
  }
  return fmt(v);
}

struct Axis {
  double lo = 0, hi = 1;
  bool log_scale = false;
  double map(double v, double pix_lo, double pix_hi) const {
    const double a = log_scale ? std::log(lo) : lo;
    const double b = log_scale ? std::log(hi) : hi;
    const double x = log_scale ? std::log(v) : v;
    const double f = (x - a) / (b - a);
    return pix_lo + f * (pix_hi - pix_lo);
  }
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log_scale) {
      const int k0 = static_cast<int>(std::ceil(std::log2(lo) - 1e-9));
      const int k1 = static_cast<int>(std::floor(std::log2(hi) + 1e-9));
      const int step = std::max(1, (k1 - k0) / 6);
      for (int k = k0; k <= k1; k += step) out.push_back(std::exp2(k));
      if (out.empty()) out = {lo, hi};
    } else {
      const int n = 6;
      for (int i = 0; i <= n; ++i) out.push_back(lo + (hi - lo) * i / n);
    }
    return out;
  }
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_svg(const SvgPlotSpec& spec) {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : spec.series) {
    for (auto [x, y] : s.points) {
      if (spec.log_x && !(x > 0)) throw std::invalid_argument("log axis needs positive x");
      if (spec.log_y && !(y > 0)) throw std::invalid_argument("log axis needs positive y");
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (first) throw std::invalid_argument("render_svg: no data points");
  auto widen = [](double lo, double hi, bool log_scale) {
    if (log_scale) {
      const double f = std::pow(hi / lo, 0.08) > 1.02 ? std::pow(hi / lo, 0.08) : 1.25;
      return std::pair<double, double>{lo / f, hi * f};
    }
    const double pad = (hi - lo) > 0 ? 0.08 * (hi - lo) : std::max(1.0, std::abs(hi)) * 0.1;
    return std::pair<double, double>{lo - pad, hi + pad};
  };
  auto [xl, xh] = widen(xmin, xmax, spec.log_x);
  auto [yl, yh] = widen(ymin, ymax, spec.log_y);
  if (!spec.log_y && ymin >= 0.0 && yl < 0.0) yl = 0.0;
  const Axis ax{xl, xh, spec.log_x};
  const Axis ay{yl, yh, spec.log_y};

  const double px0 = kLeft, px1 = kWidth - kRight;
  const double py0 = kHeight - kBottom, py1 = kTop;  // y grows downward in SVG

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
         "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " +
         fmt(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"18\">" + spec.title + "</text>\n";

  // Axes and ticks.
  svg += "<line x1=\"" + fmt(px0) + "\" y1=\"" + fmt(py0) + "\" x2=\"" + fmt(px1) +
         "\" y2=\"" + fmt(py0) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt(px0) + "\" y1=\"" + fmt(py0) + "\" x2=\"" + fmt(px0) +
         "\" y2=\"" + fmt(py1) + "\" stroke=\"black\"/>\n";
  for (double tv : ax.ticks()) {
    if (tv < ax.lo || tv > ax.hi) continue;
    const double x = ax.map(tv, px0, px1);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(py0) + "\" x2=\"" + fmt(x) +
           "\" y2=\"" + fmt(py0 + 6) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(py0 + 22) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           tick_label(tv, spec.log_x) + "</text>\n";
  }
  for (double tv : ay.ticks()) {
    if (tv < ay.lo || tv > ay.hi) continue;
    const double y = ay.map(tv, py0, py1);
    svg += "<line x1=\"" + fmt(px0 - 6) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(px0) +
           "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(px0 - 10) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
           tick_label(tv, spec.log_y) + "</text>\n";
  }
  svg += "<text x=\"" + fmt((px0 + px1) / 2) + "\" y=\"" + fmt(kHeight - 16) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
         spec.x_label + "</text>\n";
  svg += "<text x=\"20\" y=\"" + fmt((py0 + py1) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 20 " + fmt((py0 + py1) / 2) + ")\">" + spec.y_label +
         "</text>\n";

  for (double xm : spec.x_markers) {
    if (xm < ax.lo || xm > ax.hi) continue;
    const double x = ax.map(xm, px0, px1);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(py0) + "\" x2=\"" + fmt(x) +
           "\" y2=\"" + fmt(py1) + "\" stroke=\"#999999\" stroke-dasharray=\"4 4\"/>\n";
  }

  if (spec.draw_power_law && spec.log_x && spec.log_y) {
    const double ya = std::exp(spec.power_intercept + spec.power_slope * std::log(xmin));
    const double yb = std::exp(spec.power_intercept + spec.power_slope * std::log(xmax));
    svg += "<line x1=\"" + fmt(ax.map(xmin, px0, px1)) + "\" y1=\"" +
           fmt(ay.map(ya, py0, py1)) + "\" x2=\"" + fmt(ax.map(xmax, px0, px1)) +
           "\" y2=\"" + fmt(ay.map(yb, py0, py1)) +
           "\" stroke=\"#444444\" stroke-dasharray=\"6 3\"/>\n";
  }

  int color_idx = 0;
  double legend_y = kTop + 6;
  for (const auto& s : spec.series) {
    const std::string color =
        !s.color.empty() ? s.color : kPalette[color_idx % 6];
    std::string pts;
    for (auto [x, y] : s.points) {
      pts += fmt(ax.map(x, px0, px1)) + "," + fmt(ay.map(y, py0, py1)) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"" +
           pts + "\"/>\n";
    for (auto [x, y] : s.points) {
      svg += "<circle cx=\"" + fmt(ax.map(x, px0, px1)) + "\" cy=\"" +
             fmt(ay.map(y, py0, py1)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    svg += "<text x=\"" + fmt(px1 - 8) + "\" y=\"" + fmt(legend_y) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" +
           color + "\">" + s.name + "</text>\n";
    legend_y += 18;
    color_idx += 1;
  }

  if (!spec.annotation.empty()) {
    svg += "<text x=\"" + fmt(px0 + 12) + "\" y=\"" + fmt(py1 + 16) +
           "\" font-family=\"sans-serif\" font-size=\"13\">" + spec.annotation +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace sbx
