#include "cheeger/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cheeger/errors.hpp"

namespace cheeger {

namespace {

double tx(double v, bool log_scale) { return log_scale ? std::log10(v) : v; }

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

}  // namespace

std::string render_svg(const PlotSpec& spec, int width, int height) {
  const double ml = 70, mr = 20, mt = 40, mb = 50;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const PlotSeries& s : spec.series)
    for (const auto& [x, y] : s.points) {
      const double u = tx(x, spec.log_x), v = tx(y, spec.log_y);
      xmin = std::min(xmin, u);
      xmax = std::max(xmax, u);
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (!(xmin <= xmax) || !(ymin <= ymax)) {
    xmin = ymin = 0;
    xmax = ymax = 1;
  }
  if (spec.identity_line) {
    const double lo = std::min(xmin, ymin), hi = std::max(xmax, ymax);
    xmin = ymin = lo;
    xmax = ymax = hi;
  }
  const double xpad = (xmax - xmin) * 0.06 + 1e-12;
  const double ypad = (ymax - ymin) * 0.06 + 1e-12;
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) { return ml + (tx(x, spec.log_x) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (tx(y, spec.log_y) - ymin) / (ymax - ymin) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" "
       "font-family=\"sans-serif\">"
    << spec.title << "</text>\n";

  // axes
  o << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
    << mt + ph << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
    << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4;
    const double fy = ymin + (ymax - ymin) * i / 4;
    const double gx = ml + pw * i / 4;
    const double gy = mt + ph - ph * i / 4;
    o << "<line x1=\"" << gx << "\" y1=\"" << mt + ph << "\" x2=\"" << gx << "\" y2=\""
      << mt + ph + 5 << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << gx << "\" y=\"" << mt + ph + 20
      << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
      << fmt(spec.log_x ? std::pow(10.0, fx) : fx) << "</text>\n";
    o << "<line x1=\"" << ml - 5 << "\" y1=\"" << gy << "\" x2=\"" << ml << "\" y2=\"" << gy
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << ml - 8 << "\" y=\"" << gy + 4
      << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
      << fmt(spec.log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
  }
  o << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
    << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" << spec.x_label
    << "</text>\n";
  o << "<text x=\"16\" y=\"" << mt + ph / 2
    << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\" transform=\"rotate(-90 "
       "16 "
    << mt + ph / 2 << ")\">" << spec.y_label << "</text>\n";

  if (spec.identity_line) {
    const double lo = spec.log_x ? std::pow(10.0, xmin) : xmin;
    const double hi = spec.log_x ? std::pow(10.0, xmax) : xmax;
    o << "<line x1=\"" << px(lo) << "\" y1=\"" << py(lo) << "\" x2=\"" << px(hi) << "\" y2=\""
      << py(hi) << "\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n";
  }

  double legend_y = mt + 14;
  for (const PlotSeries& s : spec.series) {
    if (s.draw_line && s.points.size() >= 2) {
      o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) o << px(x) << "," << py(y) << " ";
      o << "\"/>\n";
    }
    for (const auto& [x, y] : s.points)
      o << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3.2\" fill=\"" << s.color
        << "\" fill-opacity=\"0.8\"/>\n";
    if (!s.label.empty()) {
      o << "<circle cx=\"" << ml + pw - 150 << "\" cy=\"" << legend_y - 4 << "\" r=\"4\" fill=\""
        << s.color << "\"/>\n";
      o << "<text x=\"" << ml + pw - 140 << "\" y=\"" << legend_y
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << s.label << "</text>\n";
      legend_y += 16;
    }
  }
  o << "</svg>\n";
  return o.str();
}

void write_svg(const std::string& path, const PlotSpec& spec, int width, int height) {
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot write SVG file: " + path);
  out << render_svg(spec, width, height);
}

}  // namespace cheeger
