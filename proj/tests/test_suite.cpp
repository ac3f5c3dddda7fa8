#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "treerep/suite.hpp"

using namespace treerep;

namespace {

const CheckRecord* find(const SuiteReport& report, const std::string& check, const std::string& parameter = "") {
  for (const auto& r : report.records)
    if (r.check == check && r.parameter == parameter) return &r;
  return nullptr;
}

SuiteConfig small(const std::string& tree) {
  SuiteConfig c;
  c.tree_spec = tree;
  c.t_grid = {0.0, 0.5, 0.9};
  c.z_grid = {0.5};
  return c;
}

}  // namespace

TEST_CASE("P3 passes every check") {
  const auto report = run_check(small("path:3"));
  CHECK(report.pass());
  CHECK(report.group_size == 2);
  CHECK(report.vertex_count == 3);
  const auto* gap = find(report, "limit.distance_to_limit", "t=0.999");
  REQUIRE(gap);
  CHECK_FALSE(gap->bound.has_value());
  CHECK(gap->measured == doctest::Approx(0.0632376).epsilon(1e-5));
  CHECK(find(report, "rho_z.uniform_bound", "z=0.5"));
  CHECK(find(report, "cocycle.equivariance"));
  CHECK(find(report, "kernel.gram_identity", "t=0.5"));
  CHECK_FALSE(find(report, "kernel.gram_identity", "t=0"));
}

TEST_CASE("config validation") {
  auto c = small("path:2");
  c.t_grid = {1.0};
  CHECK_THROWS_AS(run_check(c), ConfigError);
  c = small("path:2");
  c.limit_grid = {0.9, 1.0};
  CHECK_NOTHROW(validate(c));
  c.z_grid = {Complex(0.8, 0.6)};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small("path:2");
  c.tolerances.at("kernel") = 0.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  CHECK_THROWS_AS(c.tolerances.at("nope"), ConfigError);
  CHECK_THROWS_AS(run_check(small("random:50,7")), ConfigError);
  CHECK_THROWS_AS(run_check(small("/no/such/tree")), ConfigError);
  c = small("path:3");
  c.origin = 3;
  CHECK_THROWS_AS(run_check(c), ConfigError);
}

TEST_CASE("tight tolerances turn into failures, not errors") {
  // path:3, because on star:4 rooted at the center every g fixes x0 and the curve is flat.
  auto c = small("path:3");
  c.tolerances.lipschitz = 1e-3;
  const auto report = run_check(c);
  CHECK_FALSE(report.pass());
  const auto* lip = find(report, "endpoint.lipschitz_on_grid");
  REQUIRE(lip);
  CHECK_FALSE(lip->pass);
  CHECK(lip->g.has_value());
}

TEST_CASE("groups from files") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto file = dir / "treerep_gens.txt";
  std::ofstream(file) << "# swap two leaves\n0 2 1 3\n";
  auto c = small("star:4");
  c.group_spec = file.string();
  const auto report = run_check(c);
  CHECK(report.group_size == 2);
  CHECK(report.pass());

  std::ofstream(file) << "1 0 2 3\n";
  CHECK_THROWS_AS(run_check(c), ConfigError);
  std::filesystem::remove(file);

  c.group_spec = "trivial";
  CHECK(run_check(c).group_size == 1);
}

TEST_CASE("reports are deterministic apart from timings") {
  auto c = small("regular:2,2");
  const auto a = run_check(c).to_json(false).dump();
  const auto b = run_check(c).to_json(false).dump();
  CHECK(a == b);
  const auto with = run_check(c).to_json(true);
  CHECK(with.contains("timings"));
  CHECK(with["schema"] == 1);
  CHECK_FALSE(nlohmann::ordered_json::parse(a).contains("timings"));
}

TEST_CASE("summaries") {
  const auto report = run_check(small("path:2"));
  const std::string text = summarize_report(report.to_json());
  CHECK(text.find("tree path:2") != std::string::npos);
  CHECK(text.find("0 failed") != std::string::npos);
  CHECK(text.find("info  limit.distance_to_limit") != std::string::npos);
}

TEST_CASE("grid parsing") {
  CHECK(parse_real_grid("0,0.5,0.9") == std::vector<double>{0.0, 0.5, 0.9});
  CHECK(parse_complex_grid("0.5,0.3+0.4i,-i") ==
        std::vector<std::complex<double>>{{0.5, 0}, {0.3, 0.4}, {0, -1}});
  CHECK_THROWS_AS(parse_real_grid("0.5,,0.9"), ConfigError);
  CHECK_THROWS_AS(parse_real_grid("0.5i"), ConfigError);
  CHECK_THROWS_AS(parse_real_grid("abc"), ConfigError);
  CHECK_THROWS_AS(parse_complex_grid(""), ConfigError);
}
