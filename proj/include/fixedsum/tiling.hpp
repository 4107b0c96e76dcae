#pragma once

#include <string>
#include <vector>

#include "fixedsum/geometry.hpp"

namespace fixedsum::tiling {

// One rescale transformation and the part of the simplex where it fires.
struct LabeledMap {
  std::string label;                   // "A1", "A2", "A3"
  geo::Homothety forward;              // plane action of the rescale step
  std::vector<geo::HalfPlane> region;  // applicability region within the triangle
};

// The three-map pattern of a 3-dimensional instance with two bounds that can
// be violated simultaneously: one map per violated bound alone, one for the
// overlap. The applicability regions partition the infeasible part of the
// triangle.
struct TransformFamily {
  std::vector<double> upper;  // the bound vector the family was built from
  std::vector<LabeledMap> maps;
  geo::ConvexPolygon triangle;  // projected full simplex
  geo::ConvexPolygon feasible;  // T_0

  // Throws InputError unless exactly two bounds are below 1 and they can be
  // violated simultaneously (u_i + u_j < 1).
  static TransformFamily for_upper_bounds(const std::vector<double>& upper);
};

// Region of the simplex whose points reach the feasible set in exactly
// sequence.size() rescale steps, applying sequence front-to-back.
struct Tile {
  std::vector<int> sequence;  // indices into TransformFamily::maps
  std::vector<geo::ConvexPolygon> region;
  double mass = 0.0;        // fraction of total simplex mass
  geo::Homothety composed;  // forward composition of the sequence

  double area() const;
};

// Reverse-DRS tiling up to `depth` steps; result[0] is T_0 with an empty
// sequence, deeper tiles follow in breadth-first order.
std::vector<Tile> tile_simplex(const TransformFamily& family, int depth);

// Image of a tile inside T_0 under its forward composition; the projected
// density stays uniform because the maps are affine.
struct ProjectedTile {
  const Tile* source = nullptr;
  std::vector<geo::ConvexPolygon> region;

  double area() const;
};

std::vector<ProjectedTile> project_tiles(const TransformFamily& family,
                                         const std::vector<Tile>& tiles);

struct RegionRow {
  std::vector<geo::ConvexPolygon> pieces;
  geo::Vec2 centroid;
  double area = 0.0;
  double realised_pct = 0.0;
  double target_pct = 0.0;
  double delta_pct = 0.0;  // realised - target
};

// Realised vs target mass per atomic region of T_0, Table-style. Regions are
// the refinement of T_0 by the distinct projected-tile shapes, ordered by
// ascending centroid y, then x (bottom corner of T_0 first).
struct RegionReport {
  std::vector<RegionRow> regions;
  int unique_projected_shapes = 0;
  double total_realised_pct = 0.0;
  double total_target_pct = 0.0;
  double residual_pct = 0.0;
  double sum_abs_delta_pct = 0.0;
};

RegionReport region_report(const TransformFamily& family, const std::vector<Tile>& tiles,
                           const std::vector<ProjectedTile>& projected);

// Index of the region containing plane point p, or -1.
int locate_region(const RegionReport& report, geo::Vec2 p, double tol = 1e-9);

}  // namespace fixedsum::tiling
