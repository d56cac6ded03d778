#include "fog2c/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace fog2c::svg {
namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c",
                                             "#ff7f0e", "#9467bd", "#8c564b"};

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;

  double map(double v) const {
    const double a = log ? std::log10(v) : v;
    return (a - lo) / (hi - lo);
  }
  bool accepts(double v) const { return std::isfinite(v) && (!log || v > 0); }
};

Axis fit(const std::vector<double>& values, bool log) {
  Axis ax;
  ax.log = log;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : values) {
    const double a = log ? std::log10(v) : v;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  if (!std::isfinite(lo)) lo = 0, hi = 1;
  if (log) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
  }
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    const double pad = std::max(1.0, std::abs(hi)) * 0.5;
    lo -= pad;
    hi += pad;
  } else if (!log) {
    const double pad = 0.05 * (hi - lo);
    lo = lo > 0 && lo - pad < 0 ? 0 : lo - pad;
    hi += pad;
  }
  ax.lo = lo;
  ax.hi = hi;
  return ax;
}

std::vector<double> ticks(const Axis& ax) {
  std::vector<double> out;
  if (ax.log) {
    const int step = std::max(1, static_cast<int>((ax.hi - ax.lo) / 6));
    for (int e = static_cast<int>(ax.lo); e <= static_cast<int>(ax.hi); e += step) {
      out.push_back(std::pow(10.0, e));
    }
    return out;
  }
  const double raw = (ax.hi - ax.lo) / 5;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {2.0, 5.0, 10.0}) {
    if (step >= raw) break;
    step = m * mag;
  }
  for (double v = std::ceil(ax.lo / step) * step; v <= ax.hi + 1e-9 * step; v += step) {
    out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render(const Chart& chart) {
  Axis probe_x{0, 1, chart.log_x}, probe_y{0, 1, chart.log_y};
  std::vector<double> xs, ys;
  for (const auto& s : chart.series) {
    for (auto [x, y] : s.points) {
      if (probe_x.accepts(x) && probe_y.accepts(y)) {
        xs.push_back(x);
        ys.push_back(y);
      }
    }
  }
  const Axis ax = fit(xs, chart.log_x);
  const Axis ay = fit(ys, chart.log_y);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto X = [&](double v) { return kLeft + ax.map(v) * pw; };
  auto Y = [&](double v) { return kTop + (1 - ay.map(v)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
    << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(chart.title) << "</text>\n";
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(ax)) {
    const double x = X(t);
    o << "<line x1=\"" << px(x) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(x) << "\" y2=\""
      << px(kTop + ph) << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << px(x) << "\" y=\"" << px(kTop + ph + 16)
      << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double y = Y(t);
    o << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(y) << "\" x2=\"" << px(kLeft + pw)
      << "\" y2=\"" << px(y) << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << px(kLeft - 6) << "\" y=\"" << px(y + 4) << "\" text-anchor=\"end\">"
      << num(t) << "</text>\n";
  }
  o << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"" << px(kHeight - 15)
    << "\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n";
  o << "<text transform=\"translate(18," << px(kTop + ph / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << escape(chart.y_label) << "</text>\n";

  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const auto& s = chart.series[i];
    const char* color = kColors[i % kColors.size()];
    std::string pts;
    double prev_y = 0;
    bool first = true;
    for (auto [x, y] : s.points) {
      if (!ax.accepts(x) || !ay.accepts(y)) continue;
      if (s.step && !first) pts += px(X(x)) + "," + px(Y(prev_y)) + " ";
      pts += px(X(x)) + "," + px(Y(y)) + " ";
      prev_y = y;
      first = false;
    }
    if (!pts.empty()) {
      o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
        << pts << "\"/>\n";
    }
    const double ly = kTop + 10 + 18 * static_cast<double>(i);
    o << "<line x1=\"" << px(kLeft + pw + 10) << "\" y1=\"" << px(ly) << "\" x2=\""
      << px(kLeft + pw + 30) << "\" y2=\"" << px(ly) << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << px(kLeft + pw + 35) << "\" y=\"" << px(ly + 4) << "\">"
      << escape(s.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace fog2c::svg
