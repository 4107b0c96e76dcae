#include "fixedsum/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fixedsum/error.hpp"

namespace fixedsum::svg {

namespace {

constexpr double kMargin = 20.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

Canvas::Canvas(double world_w, double world_h, int pixels_wide, std::string comment) {
  width_px_ = pixels_wide;
  scale_ = (pixels_wide - 2.0 * kMargin) / world_w;
  height_px_ = world_h * scale_ + 2.0 * kMargin;
  if (!comment.empty()) body_ += "<!-- " + comment + " -->\n";
}

geo::Vec2 Canvas::to_px(geo::Vec2 world) const {
  return {kMargin + world.x * scale_, height_px_ - kMargin - world.y * scale_};
}

void Canvas::polygon(const geo::ConvexPolygon& poly, const std::string& fill,
                     const std::string& stroke, double stroke_width, double fill_opacity) {
  if (poly.empty()) return;
  body_ += "<polygon points=\"";
  for (const geo::Vec2& v : poly.vertices()) {
    const geo::Vec2 p = to_px(v);
    body_ += fmt(p.x) + "," + fmt(p.y) + " ";
  }
  body_.pop_back();
  body_ += "\" fill=\"" + fill + "\" fill-opacity=\"" + fmt(fill_opacity) + "\" stroke=\"" +
           stroke + "\" stroke-width=\"" + fmt(stroke_width) + "\"/>\n";
}

void Canvas::line(geo::Vec2 a, geo::Vec2 b, const std::string& stroke, double width) {
  const geo::Vec2 pa = to_px(a), pb = to_px(b);
  body_ += "<line x1=\"" + fmt(pa.x) + "\" y1=\"" + fmt(pa.y) + "\" x2=\"" + fmt(pb.x) +
           "\" y2=\"" + fmt(pb.y) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + fmt(width) +
           "\"/>\n";
}

void Canvas::circle(geo::Vec2 center, double radius_px, const std::string& fill) {
  const geo::Vec2 p = to_px(center);
  body_ += "<circle cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(p.y) + "\" r=\"" + fmt(radius_px) +
           "\" fill=\"" + fill + "\"/>\n";
}

void Canvas::text(geo::Vec2 at, const std::string& content, int size_px,
                  const std::string& fill) {
  const geo::Vec2 p = to_px(at);
  body_ += "<text x=\"" + fmt(p.x) + "\" y=\"" + fmt(p.y) + "\" font-size=\"" +
           std::to_string(size_px) + "\" font-family=\"sans-serif\" text-anchor=\"middle\" "
           "fill=\"" + fill + "\">" + content + "</text>\n";
}

std::string Canvas::str() const {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_px_) +
         "\" height=\"" + fmt(height_px_) + "\" viewBox=\"0 0 " + std::to_string(width_px_) +
         " " + fmt(height_px_) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += body_;
  out += "</svg>\n";
  return out;
}

void Canvas::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write SVG file: " + path);
  out << str();
}

std::string step_color(int steps) {
  static const char* palette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                  "#66a61e", "#e6ab02", "#a6761d", "#666666"};
  if (steps < 0) steps = 0;
  return palette[steps % 8];
}

std::string delta_color(double delta, double max_abs) {
  if (max_abs <= 0.0) max_abs = 1.0;
  const double t = std::min(std::fabs(delta) / max_abs, 1.0);
  const int fade = static_cast<int>(std::lround(255.0 * (1.0 - t)));
  char buf[16];
  if (delta >= 0.0) {
    std::snprintf(buf, sizeof(buf), "#ff%02x%02x", fade, fade);  // red for excess
  } else {
    std::snprintf(buf, sizeof(buf), "#%02x%02xff", fade, fade);  // blue for deficit
  }
  return buf;
}

}  // namespace fixedsum::svg
