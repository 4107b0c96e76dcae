#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fixedsum/constraints.hpp"
#include "fixedsum/drs.hpp"
#include "fixedsum/drsc.hpp"
#include "fixedsum/error.hpp"
#include "fixedsum/gof.hpp"
#include "fixedsum/runner.hpp"
#include "fixedsum/simplex.hpp"
#include "fixedsum/svg.hpp"
#include "fixedsum/tiling.hpp"

namespace {

using nlohmann::json;
using namespace fixedsum;

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string algo = "drs";
  std::string constraints_path;
  std::vector<double> upper, lower;
  double eps_ineq = kDefaultEpsIneq;
  double eps_eq = kDefaultEpsEq;
  std::string theta_order = "asc";
  size_t n = 1000;
  uint64_t seed = 1;
  int threads = 1;
  std::string command_line;
};

void add_sampler_options(CLI::App* cmd, CommonOpts& opt) {
  cmd->add_option("--algo", opt.algo, "Sampler: drs, drsc or reject")
      ->check(CLI::IsMember({"drs", "drsc", "reject"}));
  cmd->add_option("--constraints", opt.constraints_path, "Constraint file (JSON)");
  cmd->add_option("--upper", opt.upper, "Per-entry upper bounds, comma separated")
      ->delimiter(',');
  cmd->add_option("--lower", opt.lower, "Per-entry lower bounds, comma separated")
      ->delimiter(',');
  cmd->add_option("--eps-ineq", opt.eps_ineq, "Inequality tolerance for constraint sets");
  cmd->add_option("--eps-eq", opt.eps_eq, "Equality tolerance for constraint sets");
  cmd->add_option("--theta-order", opt.theta_order,
                  "Dimension order for the threshold LPs (drsc)")
      ->check(CLI::IsMember({"asc", "desc"}));
  cmd->add_option("--n", opt.n, "Number of vectors to generate");
  cmd->add_option("--seed", opt.seed, "RNG seed; outputs are reproducible per (seed, threads)");
  cmd->add_option("--threads", opt.threads, "Worker threads with independent RNG streams")
      ->check(CLI::PositiveNumber);
}

SamplerSpec build_spec(const CommonOpts& opt) {
  const bool has_bounds = !opt.upper.empty();
  if (opt.algo == "drs") {
    if (!has_bounds)
      throw InputError("drs supports bound constraints only; pass --upper (and --lower)");
    BoundsSpec bounds = opt.lower.empty() ? BoundsSpec::upper_only(opt.upper)
                                          : BoundsSpec(opt.lower, opt.upper);
    return SamplerSpec::drs(std::move(bounds));
  }

  std::optional<ConstraintSet> cs;
  if (!opt.constraints_path.empty()) {
    cs = load_constraints(opt.constraints_path);
  } else if (has_bounds) {
    std::vector<double> lower = opt.lower.empty() ? std::vector<double>(opt.upper.size(), 0.0)
                                                  : opt.lower;
    cs = bounds_as_constraints(lower, opt.upper, opt.eps_ineq, opt.eps_eq);
  } else {
    throw InputError("pass --constraints FILE or --upper/--lower bounds");
  }

  SamplerSpec spec = opt.algo == "drsc" ? SamplerSpec::drsc(std::move(*cs))
                                        : SamplerSpec::reject(std::move(*cs));
  if (opt.theta_order == "desc") {
    const size_t n = spec.constraints->dimension();
    for (size_t i = n; i-- > 0;) spec.theta_order.push_back(static_cast<int>(i));
  }
  return spec;
}

json meta_block(const CommonOpts& opt) {
  return {{"seed", opt.seed}, {"version", kVersion}, {"command", opt.command_line},
          {"threads", opt.threads}};
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
}

std::string format_row(const std::vector<double>& x) {
  std::string row;
  char buf[40];
  for (size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", x[i]);
    if (i) row += ',';
    row += buf;
  }
  row += '\n';
  return row;
}

// ---- sample ----------------------------------------------------------

int cmd_sample(const CommonOpts& opt, const std::string& out_csv,
               const std::string& sidecar_path) {
  SamplerSpec spec = build_spec(opt);
  RunStats stats;
  std::vector<SimplexVector> sample = generate(spec, opt.n, opt.seed, opt.threads, &stats);

  std::string csv = "# " + opt.command_line + "\n";
  for (const SimplexVector& x : sample) csv += format_row(x.entries());
  write_text(out_csv, csv);

  json side;
  side["meta"] = meta_block(opt);
  side["algo"] = opt.algo;
  side["n"] = opt.n;
  side["dimension"] = spec.dimension();
  if (spec.algo == Algo::Drs) {
    side["stats"] = {{"rescale_steps", stats.drs_rescale_total}};
  } else {
    side["stats"] = {{"restarts", stats.drsc.restarts},
                     {"rescales", stats.drsc.rescales},
                     {"dirichlet_draws", stats.drsc.dirichlet_draws}};
  }
  if (spec.algo == Algo::Drsc && spec.family) {
    side["thetas"] = spec.family->thetas;
    side["empty_simplices"] = json::array();
    for (size_t i = 0; i < spec.family->dimension(); ++i)
      side["empty_simplices"].push_back(static_cast<bool>(spec.family->empty_flags[i]));
  }
  const std::string side_path = sidecar_path.empty() ? out_csv + ".json" : sidecar_path;
  write_text(side_path, side.dump(2) + "\n");

  std::cout << "wrote " << sample.size() << " vectors to " << out_csv << "\n";
  return 0;
}

// ---- gof -------------------------------------------------------------

int cmd_gof(const CommonOpts& opt, int bins, const std::string& out_path) {
  SamplerSpec spec = build_spec(opt);
  spec.prepare();
  const size_t dim = spec.dimension() - 1;
  const int n_b = bins > 0 ? bins : gof::default_bins(dim, opt.n);

  gof::BinGrid grid = spec.algo == Algo::Drs ? gof::build_grid(*spec.bounds, n_b)
                                             : gof::build_grid(*spec.constraints, n_b);

  std::vector<gof::LatticeCounts> shards(opt.threads);
  for (gof::LatticeCounts& lc : shards) lc = gof::make_lattice(n_b, dim);
  generate_stream(spec, opt.n, opt.seed, opt.threads,
                  [&](int worker, const std::vector<double>& x) { shards[worker].add(x); });
  gof::LatticeCounts counts = std::move(shards[0]);
  for (int w = 1; w < opt.threads; ++w) counts.merge(shards[w]);

  gof::GofReport report = gof::chi2_test(grid, counts);

  json doc = json::parse(report.to_json());
  doc["meta"] = meta_block(opt);
  doc["algo"] = opt.algo;
  doc["n"] = opt.n;
  doc["bins_per_dim"] = n_b;
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_text(out_path, text);
  return 0;  // the p-value is data, not an error signal
}

// ---- tile ------------------------------------------------------------

void render_tiling_svg(const tiling::TransformFamily& family,
                       const std::vector<tiling::Tile>& tiles, const std::string& path,
                       const std::string& comment) {
  svg::Canvas canvas(1.0, kTriangleV3.y, 640, comment);
  for (const tiling::Tile& tile : tiles) {
    const int steps = static_cast<int>(tile.sequence.size());
    const std::string fill = steps == 0 ? "#dddddd" : svg::step_color(steps - 1);
    for (const geo::ConvexPolygon& poly : tile.region)
      canvas.polygon(poly, fill, "#333333", 0.4);
  }
  canvas.polygon(family.triangle, "none", "black", 1.2);
  canvas.write(path);
}

void render_delta_svg(const tiling::RegionReport& report,
                      const tiling::TransformFamily& family, const std::string& path,
                      const std::string& comment) {
  svg::Canvas canvas(1.0, kTriangleV3.y, 640, comment);
  double max_abs = 0.0;
  for (const tiling::RegionRow& row : report.regions)
    max_abs = std::max(max_abs, std::fabs(row.delta_pct));
  for (const tiling::RegionRow& row : report.regions) {
    const std::string fill = svg::delta_color(row.delta_pct, max_abs);
    for (const geo::ConvexPolygon& poly : row.pieces)
      canvas.polygon(poly, fill, "#333333", 0.6);
  }
  for (size_t r = 0; r < report.regions.size(); ++r) {
    char label[64];
    std::snprintf(label, sizeof(label), "%zu: %+.2f", r, report.regions[r].delta_pct);
    canvas.text(report.regions[r].centroid, label, 10, "black");
  }
  canvas.polygon(family.triangle, "none", "black", 1.2);
  canvas.write(path);
}

int cmd_tile(const CommonOpts& opt, int depth, const std::string& report_path,
             const std::string& svg_path, const std::string& delta_svg_path) {
  if (opt.upper.empty()) throw InputError("tile: pass --upper with three entries");
  tiling::TransformFamily family = tiling::TransformFamily::for_upper_bounds(opt.upper);
  std::vector<tiling::Tile> tiles = tiling::tile_simplex(family, depth);
  std::vector<tiling::ProjectedTile> projected = tiling::project_tiles(family, tiles);
  tiling::RegionReport report = tiling::region_report(family, tiles, projected);

  json doc;
  doc["meta"] = meta_block(opt);
  doc["upper"] = opt.upper;
  doc["depth"] = depth;
  doc["tiles"] = tiles.size();
  doc["unique_projected_shapes"] = report.unique_projected_shapes;
  doc["regions"] = json::array();
  for (const tiling::RegionRow& row : report.regions) {
    doc["regions"].push_back({{"realised_pct", row.realised_pct},
                              {"target_pct", row.target_pct},
                              {"delta_pct", row.delta_pct},
                              {"area", row.area},
                              {"centroid", {row.centroid.x, row.centroid.y}}});
  }
  doc["total_realised_pct"] = report.total_realised_pct;
  doc["total_target_pct"] = report.total_target_pct;
  doc["residual_pct"] = report.residual_pct;
  doc["sum_abs_delta_pct"] = report.sum_abs_delta_pct;
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!report_path.empty()) write_text(report_path, text);
  if (!svg_path.empty()) render_tiling_svg(family, tiles, svg_path, opt.command_line);
  if (!delta_svg_path.empty())
    render_delta_svg(report, family, delta_svg_path, opt.command_line);
  return 0;
}

// ---- render ----------------------------------------------------------

std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open sample file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_render(const CommonOpts& opt, const std::string& in_csv, const std::string& out_svg) {
  const std::vector<std::vector<double>> rows = read_csv(in_csv);
  for (const std::vector<double>& row : rows) {
    if (row.size() != 3) throw InputError("render: expects 3-dimensional sample vectors");
  }

  svg::Canvas canvas(1.0, kTriangleV3.y, 640, opt.command_line);
  const geo::ConvexPolygon triangle({kTriangleV1, kTriangleV2, kTriangleV3});
  canvas.polygon(triangle, "none", "black", 1.2);

  if (!opt.constraints_path.empty()) {
    const ConstraintSet cs = load_constraints(opt.constraints_path);
    if (cs.dimension() != 3) throw InputError("render: constraint file must be 3-dimensional");
    // Boundary segment of each linear constraint: where a.x = b crosses the
    // triangle edges.
    for (const LinearConstraint& c : cs.linear()) {
      const std::vector<geo::Vec2>& tv = triangle.vertices();
      std::vector<geo::Vec2> hits;
      for (size_t e = 0; e < tv.size(); ++e) {
        const geo::Vec2 p = tv[e], q = tv[(e + 1) % tv.size()];
        double bp[3], bq[3];
        plane_to_barycentric(p, bp);
        plane_to_barycentric(q, bq);
        double fp = -c.b, fq = -c.b;
        for (int i = 0; i < 3; ++i) {
          fp += c.a[i] * bp[i];
          fq += c.a[i] * bq[i];
        }
        if ((fp < 0.0) != (fq < 0.0)) {
          const double t = fp / (fp - fq);
          hits.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
      }
      if (hits.size() >= 2) canvas.line(hits[0], hits[1], "#cc0000", 1.0);
    }
  }

  for (const std::vector<double>& row : rows) {
    canvas.circle(project_linear(row[0], row[1], row[2]), 1.4, "#1f77b4");
  }
  canvas.write(out_svg);
  std::cout << "wrote " << rows.size() << " points to " << out_svg << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixedsum: uniform fixed-sum vector generation under constraints"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonOpts opt;
  {
    std::string cmdline;
    for (int i = 0; i < argc; ++i) {
      if (i) cmdline += ' ';
      cmdline += argv[i];
    }
    opt.command_line = cmdline;
  }

  // sample
  CLI::App* sample = app.add_subcommand("sample", "Generate vectors to CSV with a JSON sidecar");
  add_sampler_options(sample, opt);
  std::string out_csv = "samples.csv", sidecar;
  sample->add_option("--out", out_csv, "Output CSV path");
  sample->add_option("--sidecar", sidecar, "Sidecar JSON path (default: <out>.json)");

  // gof
  CLI::App* gof_cmd = app.add_subcommand("gof", "Chi-squared uniformity test on fresh samples");
  add_sampler_options(gof_cmd, opt);
  int bins = 0;
  std::string gof_out;
  gof_cmd->add_option("--bins", bins, "Bins per dimension (default: auto)");
  gof_cmd->add_option("--out", gof_out, "Also write the JSON report here");

  // tile
  CLI::App* tile = app.add_subcommand("tile", "Analytical DRS tiling audit (3-D instances)");
  tile->add_option("--upper", opt.upper, "Upper bound vector, e.g. 0.5,0.25,1")
      ->delimiter(',')
      ->required();
  int depth = 7;
  std::string tile_report = "tiling_report.json", tile_svg, tile_delta_svg;
  tile->add_option("--depth", depth, "Maximum number of reverse steps");
  tile->add_option("--out-report", tile_report, "Region report JSON path");
  tile->add_option("--out-svg", tile_svg, "Tiling SVG path");
  tile->add_option("--out-delta-svg", tile_delta_svg, "Delta heatmap SVG path");

  // render
  CLI::App* render = app.add_subcommand("render", "Scatter plot of a 3-D sample CSV");
  std::string render_in, render_out = "scatter.svg";
  render->add_option("--in", render_in, "Sample CSV path")->required();
  render->add_option("--out", render_out, "Output SVG path");
  render->add_option("--constraints", opt.constraints_path,
                     "Draw linear constraint boundaries from this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sample->parsed()) return cmd_sample(opt, out_csv, sidecar);
    if (gof_cmd->parsed()) return cmd_gof(opt, bins, gof_out);
    if (tile->parsed()) return cmd_tile(opt, depth, tile_report, tile_svg, tile_delta_svg);
    if (render->parsed()) return cmd_render(opt, render_in, render_out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const SamplingError& e) {
    std::cerr << "sampling error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
