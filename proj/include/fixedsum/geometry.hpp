#pragma once

#include <vector>

namespace fixedsum::geo {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double distance(Vec2 a, Vec2 b);

// Closed half-plane {p : normal . p <= c}.
struct HalfPlane {
  Vec2 normal;
  double c = 0.0;

  // Signed slack: negative inside, positive outside.
  double excess(Vec2 p) const { return dot(normal, p) - c; }
  HalfPlane complement() const { return {{-normal.x, -normal.y}, -c}; }
};

// Uniform scaling followed by translation: p -> scale*p + offset.
// Every plane-projected rescale step is one of these.
struct Homothety {
  double scale = 1.0;
  Vec2 offset;

  Vec2 apply(Vec2 p) const { return {scale * p.x + offset.x, scale * p.y + offset.y}; }
  Homothety inverse() const;
  // Composition g(this(p)).
  Homothety then(const Homothety& g) const;
};

// Polygons below this area are treated as empty.
inline constexpr double kEmptyAreaTol = 1e-14;

// Simple convex polygon, counter-clockwise, no duplicate or collinear vertices.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  bool empty() const { return vertices_.size() < 3; }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  double area() const;
  Vec2 centroid() const;
  bool contains(Vec2 p, double tol) const;

 private:
  std::vector<Vec2> vertices_;
};

ConvexPolygon clip(const ConvexPolygon& poly, const HalfPlane& hp);
ConvexPolygon clip(const ConvexPolygon& poly, const std::vector<HalfPlane>& hps);
ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b);
ConvexPolygon transformed(const ConvexPolygon& poly, const Homothety& map);

// Edges of a convex polygon as half-planes whose intersection is the polygon.
std::vector<HalfPlane> edges_as_halfplanes(const ConvexPolygon& poly);

// a \ b as pairwise-disjoint convex pieces (up to shared boundaries).
std::vector<ConvexPolygon> subtract(const ConvexPolygon& a, const ConvexPolygon& b);

// Same point set: equal vertex chains up to cyclic rotation.
bool geometrically_equal(const ConvexPolygon& a, const ConvexPolygon& b, double tol);

}  // namespace fixedsum::geo
