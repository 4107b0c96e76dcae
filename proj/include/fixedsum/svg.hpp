#pragma once

#include <string>
#include <vector>

#include "fixedsum/geometry.hpp"

namespace fixedsum::svg {

// Minimal deterministic SVG writer: fixed-precision coordinates, world
// coordinates with y pointing up.
class Canvas {
 public:
  Canvas(double world_w, double world_h, int pixels_wide, std::string comment = "");

  void polygon(const geo::ConvexPolygon& poly, const std::string& fill,
               const std::string& stroke, double stroke_width = 1.0, double fill_opacity = 1.0);
  void line(geo::Vec2 a, geo::Vec2 b, const std::string& stroke, double width = 1.0);
  void circle(geo::Vec2 center, double radius_px, const std::string& fill);
  void text(geo::Vec2 at, const std::string& content, int size_px, const std::string& fill);

  std::string str() const;
  void write(const std::string& path) const;

 private:
  geo::Vec2 to_px(geo::Vec2 world) const;

  double scale_;
  double height_px_;
  int width_px_;
  std::string body_;
};

// Color for a tile needing `steps` rescale steps (step-count palette).
std::string step_color(int steps);

// Diverging red/blue fill for a signed percentage delta.
std::string delta_color(double delta, double max_abs);

}  // namespace fixedsum::svg
