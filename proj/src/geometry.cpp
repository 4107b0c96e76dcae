#include "fixedsum/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace fixedsum::geo {

namespace {

// Vertices closer than this are merged during normalization.
constexpr double kVertexMergeTol = 1e-12;
// Cross products below this count as collinear.
constexpr double kCollinearTol = 1e-13;

double signed_area(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    s += a.x * b.y - a.y * b.x;
  }
  return 0.5 * s;
}

// Drop duplicate and collinear vertices; enforce CCW orientation.
std::vector<Vec2> normalize(std::vector<Vec2> v) {
  if (v.size() >= 3 && signed_area(v) < 0.0) std::reverse(v.begin(), v.end());

  std::vector<Vec2> dedup;
  dedup.reserve(v.size());
  for (const Vec2& p : v) {
    if (dedup.empty() || distance(dedup.back(), p) > kVertexMergeTol) dedup.push_back(p);
  }
  while (dedup.size() > 1 && distance(dedup.front(), dedup.back()) <= kVertexMergeTol)
    dedup.pop_back();
  if (dedup.size() < 3) return {};

  std::vector<Vec2> out;
  out.reserve(dedup.size());
  const size_t n = dedup.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& prev = dedup[(i + n - 1) % n];
    const Vec2& cur = dedup[i];
    const Vec2& next = dedup[(i + 1) % n];
    if (std::fabs(cross(cur - prev, next - cur)) > kCollinearTol) out.push_back(cur);
  }
  if (out.size() < 3 || std::fabs(signed_area(out)) < kEmptyAreaTol) return {};
  return out;
}

}  // namespace

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Homothety Homothety::inverse() const {
  return {1.0 / scale, {-offset.x / scale, -offset.y / scale}};
}

Homothety Homothety::then(const Homothety& g) const {
  return {g.scale * scale, {g.scale * offset.x + g.offset.x, g.scale * offset.y + g.offset.y}};
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : vertices_(normalize(std::move(vertices))) {}

double ConvexPolygon::area() const {
  if (empty()) return 0.0;
  return signed_area(vertices_);  // CCW, so nonnegative
}

Vec2 ConvexPolygon::centroid() const {
  if (empty()) return {};
  double a6 = 0.0, cx = 0.0, cy = 0.0;
  for (size_t i = 0; i < vertices_.size(); ++i) {
    const Vec2& p = vertices_[i];
    const Vec2& q = vertices_[(i + 1) % vertices_.size()];
    const double w = cross(p, q);
    a6 += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {cx / (3.0 * a6), cy / (3.0 * a6)};
}

bool ConvexPolygon::contains(Vec2 p, double tol) const {
  if (empty()) return false;
  for (size_t i = 0; i < vertices_.size(); ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % vertices_.size()];
    if (cross(b - a, p - a) < -tol) return false;
  }
  return true;
}

ConvexPolygon clip(const ConvexPolygon& poly, const HalfPlane& hp) {
  if (poly.empty()) return {};
  const std::vector<Vec2>& in = poly.vertices();
  std::vector<Vec2> out;
  out.reserve(in.size() + 2);
  for (size_t i = 0; i < in.size(); ++i) {
    const Vec2& cur = in[i];
    const Vec2& nxt = in[(i + 1) % in.size()];
    const double ec = hp.excess(cur);
    const double en = hp.excess(nxt);
    if (ec <= 0.0) out.push_back(cur);
    if ((ec < 0.0 && en > 0.0) || (ec > 0.0 && en < 0.0)) {
      const double t = ec / (ec - en);
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  return ConvexPolygon(std::move(out));
}

ConvexPolygon clip(const ConvexPolygon& poly, const std::vector<HalfPlane>& hps) {
  ConvexPolygon cur = poly;
  for (const HalfPlane& hp : hps) {
    cur = clip(cur, hp);
    if (cur.empty()) return {};
  }
  return cur;
}

ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.empty() || b.empty()) return {};
  return clip(a, edges_as_halfplanes(b));
}

ConvexPolygon transformed(const ConvexPolygon& poly, const Homothety& map) {
  std::vector<Vec2> v;
  v.reserve(poly.vertices().size());
  for (const Vec2& p : poly.vertices()) v.push_back(map.apply(p));
  return ConvexPolygon(std::move(v));
}

std::vector<HalfPlane> edges_as_halfplanes(const ConvexPolygon& poly) {
  std::vector<HalfPlane> hps;
  const std::vector<Vec2>& v = poly.vertices();
  hps.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    // Interior lies left of a->b: outward normal is (dy, -dx).
    const Vec2 n{b.y - a.y, a.x - b.x};
    hps.push_back({n, dot(n, a)});
  }
  return hps;
}

std::vector<ConvexPolygon> subtract(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.empty()) return {};
  if (b.empty()) return {a};
  std::vector<ConvexPolygon> pieces;
  ConvexPolygon running = a;
  for (const HalfPlane& hp : edges_as_halfplanes(b)) {
    ConvexPolygon outside = clip(running, hp.complement());
    if (!outside.empty()) pieces.push_back(std::move(outside));
    running = clip(running, hp);
    if (running.empty()) break;
  }
  return pieces;
}

bool geometrically_equal(const ConvexPolygon& a, const ConvexPolygon& b, double tol) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  const std::vector<Vec2>& va = a.vertices();
  const std::vector<Vec2>& vb = b.vertices();
  if (va.size() != vb.size()) return false;
  const size_t n = va.size();
  for (size_t shift = 0; shift < n; ++shift) {
    bool match = true;
    for (size_t i = 0; i < n && match; ++i) {
      match = distance(va[i], vb[(i + shift) % n]) <= tol;
    }
    if (match) return true;
  }
  return false;
}

}  // namespace fixedsum::geo
