#include "qdiscord/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qdiscord/errors.hpp"

namespace qdiscord::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0.0;
  double hi = 1.0;

  bool drawable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
  double map(double v) const { return log ? std::log10(v) : v; }
  double fraction(double v) const { return (map(v) - lo) / (hi - lo); }
};

Axis make_axis(bool log, double vmin, double vmax) {
  Axis a;
  a.log = log;
  double lo = log ? std::log10(vmin) : vmin;
  double hi = log ? std::log10(vmax) : vmax;
  if (log) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  a.lo = lo;
  a.hi = hi;
  return a;
}

// Tick positions in data units.
std::vector<double> ticks(const Axis& a) {
  std::vector<double> t;
  if (a.log) {
    const int span = static_cast<int>(a.hi - a.lo);
    const int step = std::max(1, span / 8);
    for (int k = static_cast<int>(a.lo); k <= static_cast<int>(a.hi); k += step)
      t.push_back(std::pow(10.0, k));
    return t;
  }
  const double raw = (a.hi - a.lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  for (double v = std::ceil(a.lo / step) * step; v <= a.hi + 1e-9 * step; v += step)
    t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return t;
}

std::string tick_label(const Axis& a, double v) {
  if (a.log) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(std::lround(std::log10(v))));
    return buf;
  }
  return label(v);
}

}  // namespace

std::string render(const Plot& p) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  Axis probe_x, probe_y;
  probe_x.log = p.log_x;
  probe_y.log = p.log_y;
  for (const auto& s : p.series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!probe_x.drawable(s.x[i]) || !probe_y.drawable(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (!(xmin <= xmax)) throw ArgumentError("plot has no drawable points");
  const Axis ax = make_axis(p.log_x, xmin, xmax);
  const Axis ay = make_axis(p.log_y, ymin, ymax);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + ax.fraction(v) * pw; };
  auto py = [&](double v) { return kTop + (1.0 - ay.fraction(v)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
    << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(p.title) << "</text>\n";
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
    << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(ax)) {
    const double x = px(t);
    o << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(x)
      << "\" y2=\"" << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 18)
      << "\" text-anchor=\"middle\">" << tick_label(ax, t) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double y = py(t);
    o << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
      << "\" text-anchor=\"end\">" << tick_label(ay, t) << "</text>\n";
  }
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15)
    << "\" text-anchor=\"middle\">" << escape(p.x_label) << "</text>\n";
  const std::string mid = num(kTop + ph / 2);
  o << "<text x=\"20\" y=\"" << mid << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << mid
    << ")\">" << escape(p.y_label) << "</text>\n";

  double legend_y = kTop + 10;
  for (const auto& s : p.series) {
    const std::string dash = s.dashed ? " stroke-dasharray=\"6 4\"" : "";
    std::vector<std::string> runs;
    std::string current;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!ax.drawable(s.x[i]) || !ay.drawable(s.y[i])) {
        if (!current.empty()) runs.push_back(current);
        current.clear();
        continue;
      }
      if (!current.empty()) current += ' ';
      current += num(px(s.x[i])) + "," + num(py(s.y[i]));
    }
    if (!current.empty()) runs.push_back(current);
    for (const auto& pts : runs)
      o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"" << dash
        << " points=\"" << pts << "\"/>\n";
    o << "<line x1=\"" << num(kLeft + pw + 10) << "\" y1=\"" << num(legend_y) << "\" x2=\""
      << num(kLeft + pw + 35) << "\" y2=\"" << num(legend_y) << "\" stroke=\"" << s.color
      << "\" stroke-width=\"1.5\"" << dash << "/>\n";
    o << "<text x=\"" << num(kLeft + pw + 40) << "\" y=\"" << num(legend_y + 4) << "\">"
      << escape(s.name) << "</text>\n";
    legend_y += 18;
  }
  o << "</svg>\n";
  return o.str();
}

void write_file(const std::string& path, const Plot& p) {
  const std::string body = render(p);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot open output file: " + path);
  f << body;
  if (!f) throw ArgumentError("failed writing output file: " + path);
}

}  // namespace qdiscord::svg
