#include "berezin/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace berezin::svg {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#17becf"};

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

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double value(double v) const { return log ? std::log10(v) : v; }
  double to_unit(double v) const { return (value(v) - lo) / (hi - lo); }
};

Axis make_axis(const std::vector<Series>& series, bool use_x, bool log) {
  Axis axis;
  axis.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series) {
    for (double v : use_x ? s.x : s.y) {
      if (!std::isfinite(v) || (log && v <= 0.0)) continue;
      lo = std::min(lo, axis.value(v));
      hi = std::max(hi, axis.value(v));
    }
  }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-300 + 1e-12 * std::abs(hi)) {
    const double pad = std::max(std::abs(hi) * 1e-3, 1e-12);
    lo -= pad;
    hi += pad;
  }
  const double margin = 0.05 * (hi - lo);
  axis.lo = lo - margin;
  axis.hi = hi + margin;
  return axis;
}

std::string tick_label(const Axis& axis, double u) {
  const double v = axis.lo + u * (axis.hi - axis.lo);
  std::ostringstream os;
  os << std::setprecision(3);
  if (axis.log) {
    os << "1e" << std::fixed << std::setprecision(1) << v;
  } else {
    os << v;
  }
  return os.str();
}

}  // namespace

std::string render(const PlotSpec& spec, const std::vector<Series>& series) {
  const Axis ax = make_axis(series, true, spec.log_x);
  const Axis ay = make_axis(series, false, spec.log_y);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + ax.to_unit(x) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - ay.to_unit(y)) * ph; };

  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(spec.title) << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double u = t / 4.0;
    const double x = kLeft + u * pw;
    const double y = kTop + (1.0 - u) * ph;
    os << "<text x=\"" << x << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
       << tick_label(ax, u) << "</text>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << tick_label(ay, u)
       << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 14 << "\" text-anchor=\"middle\">"
     << escape(spec.x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << kTop + ph / 2 << ")\">" << escape(spec.y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& ser = series[s];
    const char* color = kColors[s % kColors.size()];
    std::ostringstream pts;
    pts << std::setprecision(6);
    const std::size_t count = std::min(ser.x.size(), ser.y.size());
    for (std::size_t i = 0; i < count; ++i) {
      const double x = ser.x[i];
      const double y = ser.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if ((spec.log_x && x <= 0.0) || (spec.log_y && y <= 0.0)) continue;
      if (ser.markers_only) {
        os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
      } else {
        pts << px(x) << ',' << py(y) << ' ';
      }
    }
    if (!ser.markers_only) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts.str()
         << "\"/>\n";
    }
    os << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 16 + 16 * s << "\" fill=\"" << color << "\">"
       << escape(ser.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace berezin::svg
