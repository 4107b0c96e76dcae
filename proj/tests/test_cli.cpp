#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "support/oracles.hpp"

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
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

bool cli_available() { return oracles::run_cli("--version").has_value(); }

}  // namespace

TEST_CASE("cli: drs sample files are bitwise reproducible") {
  if (!cli_available()) return;
  const std::string cmd =
      "sample --algo drs --upper 0.5,0.25,1 --n 200 --seed 5 --threads 2 --out cli_a.csv";
  CHECK(oracles::run_cli(cmd) == 0);
  const std::string first = slurp("cli_a.csv");
  CHECK(oracles::run_cli(cmd) == 0);
  CHECK(first == slurp("cli_a.csv"));

  const std::vector<std::vector<double>> rows = parse_csv(first);
  REQUIRE(rows.size() == 200);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 3);
    CHECK(row[0] <= 0.5);
    CHECK(row[1] <= 0.25);
  }
}

TEST_CASE("cli: drsc honors a constraint file and records thetas") {
  if (!cli_available()) return;
  const std::string data = oracles::data_dir();
  const int rc = *oracles::run_cli("sample --algo drsc --constraints " + data +
                                   "/sum_geq.json --n 1000 --seed 7 --out cli_5a.csv");
  CHECK(rc == 0);
  const std::vector<std::vector<double>> rows = parse_csv(slurp("cli_5a.csv"));
  REQUIRE(rows.size() == 1000);
  for (const auto& row : rows) CHECK(row[0] + row[1] >= 0.6 - 1e-3 - 1e-12);

  const json side = json::parse(slurp("cli_5a.csv.json"));
  CHECK(side["meta"]["seed"] == 7);
  CHECK(side["algo"] == "drsc");
  CHECK(side["thetas"].size() == 3);
  CHECK(side["stats"].contains("restarts"));
}

TEST_CASE("cli: equality instance produces the tolerance band") {
  if (!cli_available()) return;
  const std::string data = oracles::data_dir();
  CHECK(*oracles::run_cli("sample --algo drsc --constraints " + data +
                          "/sum_eq.json --n 1000 --seed 3 --out cli_5b.csv") == 0);
  const std::vector<std::vector<double>> rows = parse_csv(slurp("cli_5b.csv"));
  double lo = 1.0, hi = 0.0;
  for (const auto& row : rows) {
    const double s = row[0] + row[1];
    CHECK(s >= 0.59 - 1e-12);
    CHECK(s <= 0.61 + 1e-12);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(hi - lo > 0.014);  // the band actually fills out
}

TEST_CASE("cli: infeasible constraint set exits with code 2") {
  if (!cli_available()) return;
  std::string err_text;
  const int rc = *oracles::run_cli("sample --algo drsc --constraints " +
                                   oracles::data_dir() + "/infeasible.json --n 10 --out x.csv");
  CHECK(rc == 2);
}

TEST_CASE("cli: gof reports parse and exit zero regardless of p") {
  if (!cli_available()) return;
  std::string out;
  const int rc = *oracles::run_cli(
      "gof --algo drs --upper 0.5,0.25,1 --n 100000 --bins 20 --seed 1", &out);
  CHECK(rc == 0);
  const json doc = json::parse(out);
  CHECK(doc["bins"].get<long long>() > 0);
  const double p = doc["p"].get<double>();
  CHECK(p >= 0.0);
  CHECK(p <= 1.0);
  CHECK(p < 0.05);  // the simplified sampler is visibly non-uniform here
}

TEST_CASE("cli: gof rejects a degenerate grid with exit code 2") {
  if (!cli_available()) return;
  const int rc = *oracles::run_cli("gof --algo drsc --constraints " + oracles::data_dir() +
                                   "/sum_eq.json --n 1000 --bins 25 --seed 1");
  CHECK(rc == 2);
}

TEST_CASE("cli: tile depth-1 report is internally consistent") {
  if (!cli_available()) return;
  std::string out;
  const int rc = *oracles::run_cli(
      "tile --upper 0.5,0.25,1 --depth 1 --out-report cli_tile1.json", &out);
  CHECK(rc == 0);
  const json doc = json::parse(slurp("cli_tile1.json"));
  const double total = doc["total_realised_pct"].get<double>();
  const double residual = doc["residual_pct"].get<double>();
  CHECK(total + residual == doctest::Approx(100.0).epsilon(1e-9));
  // Depth 1: T0 (25%) plus the three hand-computed preimages.
  CHECK(doc["tiles"] == 4);
  CHECK(residual == doctest::Approx(100.0 * (1.0 - 0.25 - 0.21875)).epsilon(1e-9));
}

TEST_CASE("cli: tile SVG outputs are stable across runs") {
  if (!cli_available()) return;
  const std::string cmd = "tile --upper 0.5,0.25,1 --depth 5 --out-report r1.json "
                          "--out-svg t1.svg --out-delta-svg d1.svg";
  CHECK(*oracles::run_cli(cmd) == 0);
  const std::string tiling_svg = slurp("t1.svg");
  const std::string delta_svg = slurp("d1.svg");
  CHECK(*oracles::run_cli(cmd) == 0);
  CHECK(tiling_svg == slurp("t1.svg"));
  CHECK(delta_svg == slurp("d1.svg"));
  CHECK(tiling_svg.find("<polygon") != std::string::npos);
}

TEST_CASE("cli: tile rejects unsupported instances") {
  if (!cli_available()) return;
  CHECK(*oracles::run_cli("tile --upper 0.5,0.6,1 --depth 3") == 2);
}

TEST_CASE("cli: render draws every sample point deterministically") {
  if (!cli_available()) return;
  const std::string data = oracles::data_dir();
  CHECK(*oracles::run_cli("sample --algo reject --constraints " + data +
                          "/sum_geq.json --n 300 --seed 11 --out cli_r.csv") == 0);
  const std::string render_cmd =
      "render --in cli_r.csv --out sc1.svg --constraints " + data + "/sum_geq.json";
  CHECK(*oracles::run_cli(render_cmd) == 0);
  const std::string svg = slurp("sc1.svg");
  CHECK(*oracles::run_cli(render_cmd) == 0);
  CHECK(svg == slurp("sc1.svg"));
  size_t circles = 0;
  for (size_t pos = svg.find("<circle"); pos != std::string::npos;
       pos = svg.find("<circle", pos + 1))
    ++circles;
  CHECK(circles == 300);
  CHECK(svg.find("<line") != std::string::npos);  // constraint boundary drawn
}

TEST_CASE("cli: render accepts an empty sample") {
  if (!cli_available()) return;
  std::ofstream out("cli_empty.csv");
  out << "# empty sample\n";
  out.close();
  CHECK(*oracles::run_cli("render --in cli_empty.csv --out empty.svg") == 0);
  const std::string svg = slurp("empty.svg");
  CHECK(svg.find("<polygon") != std::string::npos);  // simplex outline
  CHECK(svg.find("<circle") == std::string::npos);
}

TEST_CASE("cli: render rejects non-3-D input") {
  if (!cli_available()) return;
  std::ofstream out("cli_4d.csv");
  out << "0.1,0.2,0.3,0.4\n";
  out.close();
  CHECK(*oracles::run_cli("render --in cli_4d.csv --out bad.svg") == 2);
}

TEST_CASE("cli: usage errors exit with code 2") {
  if (!cli_available()) return;
  CHECK(*oracles::run_cli("sample --algo drs --n 10 --out x.csv") == 2);  // missing bounds
  CHECK(*oracles::run_cli("definitely-not-a-command") == 2);
}
