#include "fmb/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

namespace fmb {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;  // legend lives here
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0.0;  // in transformed units
  double hi = 1.0;

  bool admissible(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
  double transform(double v) const { return log ? std::log10(v) : v; }
};

Axis make_axis(bool log, const std::vector<double>& values) {
  Axis axis{log};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const double v : values) {
    if (!axis.admissible(v)) continue;
    lo = std::min(lo, axis.transform(v));
    hi = std::max(hi, axis.transform(v));
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (log) {
    lo = std::floor(lo);
    hi = std::max(std::ceil(hi), lo + 1.0);
  } else {
    if (hi - lo < 1e-300) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  axis.lo = lo;
  axis.hi = hi;
  return axis;
}

std::vector<double> ticks(const Axis& axis) {
  std::vector<double> out;
  if (axis.log) {
    const double span = axis.hi - axis.lo;
    const double step = std::max(1.0, std::ceil(span / 8.0));
    for (double e = axis.lo; e <= axis.hi + 1e-9; e += step) out.push_back(e);
    return out;
  }
  const double raw = (axis.hi - axis.lo) / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  for (double v = std::ceil(axis.lo / step) * step; v <= axis.hi + 1e-9 * step; v += step) {
    out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return out;
}

std::string tick_label(const Axis& axis, double t) {
  if (axis.log) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "1e%d", static_cast<int>(std::lround(t)));
    return buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

}  // namespace

void write_svg(std::ostream& out, const PlotSpec& spec) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& s : spec.series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
    ys.insert(ys.end(), s.upper.begin(), s.upper.end());
    for (const double v : s.lower) {
      if (!spec.log_y || v > 0.0) ys.push_back(v);
    }
  }
  const Axis ax = make_axis(spec.log_x, xs);
  const Axis ay = make_axis(spec.log_y, ys);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double v) { return kLeft + (ax.transform(v) - ax.lo) / (ax.hi - ax.lo) * plot_w; };
  const auto py_t = [&](double t) { return kTop + (ay.hi - t) / (ay.hi - ay.lo) * plot_h; };
  const auto py = [&](double v) {
    const double t = ay.admissible(v) ? ay.transform(v) : ay.lo;
    return py_t(std::clamp(t, ay.lo, ay.hi));
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(spec.title) << "</text>\n";

  for (const double t : ticks(ax)) {
    const double x = kLeft + (t - ax.lo) / (ax.hi - ax.lo) * plot_w;
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(x) << "\" y2=\""
        << fmt(kTop + plot_h) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + plot_h + 16)
        << "\" text-anchor=\"middle\">" << tick_label(ax, t) << "</text>\n";
  }
  for (const double t : ticks(ay)) {
    const double y = py_t(t);
    out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft + plot_w)
        << "\" y2=\"" << fmt(y) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">"
        << tick_label(ay, t) << "</text>\n";
  }
  out << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(plot_w)
      << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 18)
      << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  out << "<text transform=\"translate(20," << fmt(kTop + plot_h / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";

  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    const PlotSeries& s = spec.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    const std::size_t n = std::min(s.x.size(), s.y.size());

    if (s.lower.size() == n && s.upper.size() == n && n > 0) {
      std::string pts;
      for (std::size_t i = 0; i < n; ++i) {
        if (ax.admissible(s.x[i])) pts += fmt(px(s.x[i])) + "," + fmt(py(s.upper[i])) + " ";
      }
      for (std::size_t i = n; i-- > 0;) {
        if (ax.admissible(s.x[i])) pts += fmt(px(s.x[i])) + "," + fmt(py(s.lower[i])) + " ";
      }
      out << "<polygon points=\"" << pts << "\" fill=\"" << color
          << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    }

    std::string pts;
    for (std::size_t i = 0; i < n; ++i) {
      if (!ax.admissible(s.x[i]) || !ay.admissible(s.y[i])) continue;
      pts += fmt(px(s.x[i])) + "," + fmt(py(s.y[i])) + " ";
      if (s.markers) {
        out << "<circle cx=\"" << fmt(px(s.x[i])) << "\" cy=\"" << fmt(py(s.y[i]))
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    if (s.line && !pts.empty()) {
      out << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"/>\n";
    }

    const double ly = kTop + 14 + 18.0 * static_cast<double>(k);
    const double lx = kLeft + plot_w + 14;
    out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(lx + 20)
        << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(lx + 26) << "\" y=\"" << fmt(ly) << "\">" << escape(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace fmb
