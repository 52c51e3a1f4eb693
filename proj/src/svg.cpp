#include "lvsim/svg.hpp"

#include <cstdio>
#include <string>

namespace lvsim::svg {

namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 48.0;
constexpr double kPlotW = kWidth - 2 * kMargin;
constexpr double kPlotH = kHeight - 2 * kMargin;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
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
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

double px(double x, double x_max) { return kMargin + kPlotW * x / x_max; }
double py(double y) { return kHeight - kMargin - kPlotH * y; }

std::string header(std::string_view title) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt(kWidth) + "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " +
         fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
  out += "<title>" + escape(title) + "</title>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kWidth) + "\" height=\"" +
         fmt(kHeight) + "\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">" + escape(title) + "</text>\n";
  return out;
}

std::string axes(double x_max, std::string_view x_label, std::string_view y_label) {
  std::string out;
  out += "<rect x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kMargin) + "\" width=\"" +
         fmt(kPlotW) + "\" height=\"" + fmt(kPlotH) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double frac = k / 4.0;
    const double x = px(frac * x_max, x_max);
    const double y = py(frac);
    char label[32];
    std::snprintf(label, sizeof label, "%g", frac * x_max);
    out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kHeight - kMargin + 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" +
           label + "</text>\n";
    std::snprintf(label, sizeof label, "%g", frac);
    out += "<text x=\"" + fmt(kMargin - 6) + "\" y=\"" + fmt(y + 3) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" +
           label + "</text>\n";
  }
  out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"" + fmt(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         escape(x_label) + "</text>\n";
  out += "<text x=\"14\" y=\"" + fmt(kHeight / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 14 " + fmt(kHeight / 2) + ")\">" + escape(y_label) +
         "</text>\n";
  return out;
}

template <class Point>
std::string polyline(std::span<const Point> points, std::string_view color,
                     auto &&to_xy) {
  std::string out = "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                    "\" stroke-width=\"1.5\" points=\"";
  bool first = true;
  for (const Point &p : points) {
    const auto [x, y] = to_xy(p);
    if (!first) out += ' ';
    out += fmt(x) + "," + fmt(y);
    first = false;
  }
  out += "\"/>\n";
  return out;
}

const char *region_color(RegionLabel label) {
  switch (label) {
  case RegionLabel::A1:
    return "#fde0dd";
  case RegionLabel::A2:
    return "#deebf7";
  case RegionLabel::A3:
    return "#e5f5e0";
  case RegionLabel::A4:
    return "#fff7bc";
  }
  return "#ffffff";
}

} // namespace

std::string phase_plot(std::span<const Sample> samples, std::string_view title) {
  std::string out = header(title);
  out += axes(1.0, "u", "v");
  out += polyline(samples, "#1f77b4", [](const Sample &s) {
    return std::pair{px(s.state.u, 1.0), py(s.state.v)};
  });
  if (!samples.empty()) {
    out += "<circle cx=\"" + fmt(px(samples.front().state.u, 1.0)) + "\" cy=\"" +
           fmt(py(samples.front().state.v)) + "\" r=\"3\" fill=\"black\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string time_plot(std::span<const Sample> samples, double t_end,
                      std::string_view title) {
  std::string out = header(title);
  out += axes(t_end, "t (model units)", "density");
  out += polyline(samples, "#d62728", [&](const Sample &s) {
    return std::pair{px(s.t, t_end), py(s.state.u)};
  });
  out += polyline(samples, "#1f77b4", [&](const Sample &s) {
    return std::pair{px(s.t, t_end), py(s.state.v)};
  });
  out += "<text x=\"" + fmt(kWidth - kMargin) + "\" y=\"" + fmt(kMargin - 6) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
         "<tspan fill=\"#d62728\">u</tspan> <tspan fill=\"#1f77b4\">v</tspan></text>\n";
  out += "</svg>\n";
  return out;
}

std::string region_plot(std::span<const RegionCell> cells, std::size_t grid,
                        std::span<const Polyline> curves, std::string_view title) {
  std::string out = header(title);
  const double side = 1.0 / static_cast<double>(grid);
  for (const RegionCell &cell : cells) {
    out += "<rect x=\"" + fmt(px(cell.u - side / 2, 1.0)) + "\" y=\"" +
           fmt(py(cell.v + side / 2)) + "\" width=\"" + fmt(kPlotW * side) +
           "\" height=\"" + fmt(kPlotH * side) + "\" fill=\"" +
           region_color(cell.label) + "\"/>\n";
  }
  out += axes(1.0, "u", "v");
  for (const Polyline &curve : curves) {
    out += polyline(std::span<const State>(curve.points), "black", [](const State &s) {
      return std::pair{px(s.u, 1.0), py(s.v)};
    });
  }
  out += "</svg>\n";
  return out;
}

} // namespace lvsim::svg
