#include "fixedsum/tiling.hpp"

#include <algorithm>
#include <cmath>

#include "fixedsum/error.hpp"
#include "fixedsum/simplex.hpp"

namespace fixedsum::tiling {

namespace {

constexpr double kShapeTol = 1e-9;

// Half-plane for the barycentric condition x_k <= c in plane coordinates.
geo::HalfPlane coord_le(int k, double c) {
  // x1 = 1 - p.x - p.y/sqrt(3);  x2 = p.x - p.y/sqrt(3);  x3 = 2*p.y/sqrt(3)
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  switch (k) {
    case 0:
      return {{-1.0, -inv_sqrt3}, c - 1.0};
    case 1:
      return {{1.0, -inv_sqrt3}, c};
    default:
      return {{0.0, 2.0 * inv_sqrt3}, c};
  }
}

geo::HalfPlane coord_ge(int k, double c) { return coord_le(k, c).complement(); }

// Plane action of the rescale step with offset vector t: p -> (p - P(t))/s.
geo::Homothety forward_map(const std::vector<double>& t) {
  double s = 1.0;
  for (double v : t) s -= v;
  const geo::Vec2 pt = project_linear(t[0], t[1], t[2]);
  return {1.0 / s, {-pt.x / s, -pt.y / s}};
}

double polys_area(const std::vector<geo::ConvexPolygon>& polys) {
  double a = 0.0;
  for (const geo::ConvexPolygon& p : polys) a += p.area();
  return a;
}

}  // namespace

double Tile::area() const { return polys_area(region); }
double ProjectedTile::area() const { return polys_area(region); }

TransformFamily TransformFamily::for_upper_bounds(const std::vector<double>& upper) {
  if (upper.size() != 3) throw InputError("tiling: the audit is defined for dimension 3");
  std::vector<int> binding;
  for (int k = 0; k < 3; ++k) {
    if (upper[k] < 1.0 - 1e-12) binding.push_back(k);
    if (upper[k] <= 0.0 || upper[k] > 1.0 + 1e-12)
      throw InputError("tiling: upper bounds must lie in (0, 1]");
  }
  if (binding.size() != 2)
    throw InputError("tiling: need exactly two bounds below 1, got " +
                     std::to_string(binding.size()));
  const int i = binding[0], j = binding[1];
  if (upper[i] + upper[j] >= 1.0)
    throw InputError("tiling: bounds cannot be violated simultaneously (u_i + u_j >= 1), "
                     "the three-map pattern does not apply");

  TransformFamily fam;
  fam.upper = upper;
  fam.triangle = geo::ConvexPolygon({kTriangleV1, kTriangleV2, kTriangleV3});
  fam.feasible = geo::clip(fam.triangle, {coord_le(i, upper[i]), coord_le(j, upper[j])});

  auto offset = [&](bool vi, bool vj) {
    std::vector<double> t(3, 0.0);
    if (vi) t[i] = upper[i];
    if (vj) t[j] = upper[j];
    return t;
  };
  fam.maps.push_back({"A1", forward_map(offset(true, false)),
                      {coord_ge(i, upper[i]), coord_le(j, upper[j])}});
  fam.maps.push_back({"A2", forward_map(offset(false, true)),
                      {coord_ge(j, upper[j]), coord_le(i, upper[i])}});
  fam.maps.push_back({"A3", forward_map(offset(true, true)),
                      {coord_ge(i, upper[i]), coord_ge(j, upper[j])}});
  return fam;
}

std::vector<Tile> tile_simplex(const TransformFamily& family, int depth) {
  if (depth < 1) throw InputError("tiling: depth must be >= 1");
  const double total_area = family.triangle.area();

  std::vector<Tile> tiles;
  Tile t0;
  t0.region = {family.feasible};
  t0.mass = t0.area() / total_area;
  tiles.push_back(t0);

  std::vector<Tile> frontier = {t0};
  for (int d = 1; d <= depth; ++d) {
    std::vector<Tile> next;
    for (const Tile& parent : frontier) {
      for (size_t m = 0; m < family.maps.size(); ++m) {
        const LabeledMap& map = family.maps[m];
        const geo::Homothety inv = map.forward.inverse();
        Tile child;
        for (const geo::ConvexPolygon& poly : parent.region) {
          geo::ConvexPolygon piece = geo::clip(geo::transformed(poly, inv), map.region);
          if (!piece.empty()) child.region.push_back(std::move(piece));
        }
        if (child.region.empty()) continue;
        child.sequence.reserve(parent.sequence.size() + 1);
        child.sequence.push_back(static_cast<int>(m));
        child.sequence.insert(child.sequence.end(), parent.sequence.begin(),
                              parent.sequence.end());
        child.mass = child.area() / total_area;
        child.composed = map.forward.then(parent.composed);
        next.push_back(std::move(child));
      }
    }
    tiles.insert(tiles.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return tiles;
}

std::vector<ProjectedTile> project_tiles(const TransformFamily& family,
                                         const std::vector<Tile>& tiles) {
  const std::vector<geo::HalfPlane> t0_edges = geo::edges_as_halfplanes(family.feasible);
  std::vector<ProjectedTile> projected;
  projected.reserve(tiles.size());
  for (const Tile& tile : tiles) {
    ProjectedTile pt;
    pt.source = &tile;
    for (const geo::ConvexPolygon& poly : tile.region) {
      geo::ConvexPolygon image = geo::transformed(poly, tile.composed);
      for (const geo::Vec2& v : image.vertices()) {
        for (const geo::HalfPlane& hp : t0_edges) {
          if (hp.excess(v) > 1e-9)
            throw NumericError("tiling: projected tile leaks out of the feasible region");
        }
      }
      pt.region.push_back(std::move(image));
    }
    projected.push_back(std::move(pt));
  }
  return projected;
}

RegionReport region_report(const TransformFamily& family, const std::vector<Tile>& tiles,
                           const std::vector<ProjectedTile>& projected) {
  if (tiles.size() != projected.size())
    throw InputError("region_report: tiles and projections do not match");

  // Distinct projected shapes, first-appearance order. Tiles here always
  // carry a single convex polygon; keep the representative per tile.
  std::vector<geo::ConvexPolygon> shapes;
  for (const ProjectedTile& pt : projected) {
    for (const geo::ConvexPolygon& poly : pt.region) {
      bool known = false;
      for (const geo::ConvexPolygon& s : shapes) {
        if (geo::geometrically_equal(poly, s, kShapeTol)) {
          known = true;
          break;
        }
      }
      if (!known) shapes.push_back(poly);
    }
  }

  // Refine T_0 by every distinct shape: each piece splits into the part
  // inside the shape and the convex decomposition of the part outside.
  std::vector<std::vector<geo::ConvexPolygon>> pieces = {{family.feasible}};
  for (const geo::ConvexPolygon& shape : shapes) {
    std::vector<std::vector<geo::ConvexPolygon>> refined;
    for (const std::vector<geo::ConvexPolygon>& piece : pieces) {
      std::vector<geo::ConvexPolygon> inside, outside;
      for (const geo::ConvexPolygon& poly : piece) {
        geo::ConvexPolygon in = geo::intersect(poly, shape);
        if (!in.empty()) inside.push_back(std::move(in));
        for (geo::ConvexPolygon& out : geo::subtract(poly, shape)) {
          if (!out.empty()) outside.push_back(std::move(out));
        }
      }
      if (polys_area(inside) > 1e-12) refined.push_back(std::move(inside));
      if (polys_area(outside) > 1e-12) refined.push_back(std::move(outside));
    }
    pieces = std::move(refined);
    if (pieces.size() > 64)
      throw InputError("region_report: refinement exploded past 64 regions, "
                       "unsupported instance");
  }

  RegionReport report;
  report.unique_projected_shapes = static_cast<int>(shapes.size());

  const double t0_area = family.feasible.area();
  double allocated_mass = 0.0;
  for (const Tile& t : tiles) allocated_mass += t.mass;
  report.residual_pct = 100.0 * (1.0 - allocated_mass);

  for (std::vector<geo::ConvexPolygon>& piece : pieces) {
    RegionRow row;
    row.area = polys_area(piece);
    double cx = 0.0, cy = 0.0;
    for (const geo::ConvexPolygon& poly : piece) {
      const geo::Vec2 c = poly.centroid();
      cx += c.x * poly.area();
      cy += c.y * poly.area();
    }
    row.centroid = {cx / row.area, cy / row.area};
    row.target_pct = 100.0 * allocated_mass * row.area / t0_area;
    row.pieces = std::move(piece);
    report.regions.push_back(std::move(row));
  }

  // Realised mass: each projected tile spreads its mass uniformly over its
  // image, so a region receives mass in proportion to the overlap area.
  for (const ProjectedTile& pt : projected) {
    const double image_area = pt.area();
    if (image_area <= 0.0) continue;
    const double density = pt.source->mass / image_area;
    for (RegionRow& row : report.regions) {
      double overlap = 0.0;
      for (const geo::ConvexPolygon& a : pt.region) {
        for (const geo::ConvexPolygon& b : row.pieces) overlap += geo::intersect(a, b).area();
      }
      row.realised_pct += 100.0 * density * overlap;
    }
  }

  std::sort(report.regions.begin(), report.regions.end(),
            [](const RegionRow& a, const RegionRow& b) {
              if (std::fabs(a.centroid.y - b.centroid.y) > 1e-12)
                return a.centroid.y < b.centroid.y;
              return a.centroid.x < b.centroid.x;
            });

  for (RegionRow& row : report.regions) {
    row.delta_pct = row.realised_pct - row.target_pct;
    report.total_realised_pct += row.realised_pct;
    report.total_target_pct += row.target_pct;
    report.sum_abs_delta_pct += std::fabs(row.delta_pct);
  }
  return report;
}

int locate_region(const RegionReport& report, geo::Vec2 p, double tol) {
  for (size_t r = 0; r < report.regions.size(); ++r) {
    for (const geo::ConvexPolygon& poly : report.regions[r].pieces) {
      if (poly.contains(p, tol)) return static_cast<int>(r);
    }
  }
  return -1;
}

}  // namespace fixedsum::tiling
