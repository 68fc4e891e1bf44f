#include "fractk/svg.hpp"

#include <cstdio>
#include <stdexcept>

namespace fractk {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<SvgPath>& paths) {
  bool any = false;
  Point lo{0, 0}, hi{0, 0};
  auto extend = [&](Point v) {
    if (!any) {
      lo = hi = v;
      any = true;
      return;
    }
    lo.x = std::min(lo.x, v.x);
    lo.y = std::min(lo.y, v.y);
    hi.x = std::max(hi.x, v.x);
    hi.y = std::max(hi.y, v.y);
  };
  for (const auto& p : paths) {
    for (Point v : p.loop) extend(v);
    for (const Segment& s : p.segments) {
      extend(s.a);
      extend(s.b);
    }
  }
  if (!any) throw std::invalid_argument("render_svg: empty geometry");
  real w = hi.x - lo.x, h = hi.y - lo.y;
  if (w <= 0) w = 1;
  if (h <= 0) h = 1;
  real mx = w * real(0.05), my = h * real(0.05);
  double vx = double(lo.x - mx), vy = double(lo.y - my);
  double vw = double(w + 2 * mx), vh = double(h + 2 * my);
  real default_width = std::max(w, h) / 500;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  // y is flipped so the figure appears in conventional orientation.
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(vx) + " " +
         fmt(-(vy + vh)) + " " + fmt(vw) + " " + fmt(vh) + "\">\n";
  for (const auto& p : paths) {
    std::string d;
    if (!p.loop.empty()) {
      d = "M " + fmt(double(p.loop[0].x)) + " " + fmt(double(-p.loop[0].y));
      for (std::size_t i = 1; i < p.loop.size(); ++i)
        d += " L " + fmt(double(p.loop[i].x)) + " " + fmt(double(-p.loop[i].y));
      if (p.closed) d += " Z";
    }
    for (const Segment& s : p.segments) {
      d += (d.empty() ? "" : " ");
      d += "M " + fmt(double(s.a.x)) + " " + fmt(double(-s.a.y)) + " L " +
           fmt(double(s.b.x)) + " " + fmt(double(-s.b.y));
    }
    if (d.empty()) continue;
    real sw = p.stroke_width > 0 ? p.stroke_width : default_width;
    out += "  <path d=\"" + d + "\" fill=\"" + p.fill + "\" stroke=\"" + p.stroke +
           "\" stroke-width=\"" + fmt(double(sw)) + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fractk
