#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "treerep/kernels.hpp"
#include "treerep/representations.hpp"
#include "treerep/suite.hpp"

namespace fs = std::filesystem;
using namespace treerep;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void write_file(const fs::path& dir, const std::string& name, const std::string& content) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + (dir / name).string());
  out << content;
}

Tree load_tree(const std::string& spec) {
  try {
    return tree_from_spec(spec);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

struct Common {
  std::string tree;
  std::string group = "auto";
  Vertex origin = 0;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool with_group) {
  cmd->add_option("--tree", c.tree, "path:N, star:N, regular:q,r, random:N,seed or a tree file")->required();
  if (with_group) cmd->add_option("--group", c.group, "auto, trivial, or a permutation file");
  cmd->add_option("--origin", c.origin, "root vertex x0");
  cmd->add_option("--out", c.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformations of the quasi-regular representation of a tree automorphism group"};
  app.require_subcommand(1);

  Common common;
  SuiteConfig config;
  std::string t_text, limit_text, z_text;
  std::uint64_t seed = kDefaultSeed;

  auto* check = app.add_subcommand("check", "run every property check and write report.json");
  add_common(check, common, true);
  check->add_option("--t", t_text, "rho~_t grid in [0, 1)");
  check->add_option("--limit-t", limit_text, "limit-comparison grid in (0, 1]");
  check->add_option("--z", z_text, "rho_z grid, |z| < 1");
  check->add_option("--seed", seed, "seed for randomized checks");
  for (const auto& name : Tolerances::names()) {
    check->add_option("--tol." + name, config.tolerances.at(name), "tolerance override");
  }

  auto* curve = app.add_subcommand("curve", "distance of rho~_t(g) to the t = 1 limit and to pi0(g)");
  add_common(curve, common, true);
  std::optional<std::size_t> g_index;
  curve->add_option("--g", g_index, "index of g in the sorted group (0 is the identity)")->required();
  curve->add_option("--t", t_text, "grid in [0, 1]");

  auto* kernel = app.add_subcommand("kernel", "print a kernel matrix as CSV");
  add_common(kernel, common, false);
  std::string kind = "distance";
  double kernel_t = 0.5;
  kernel->add_option("--kind", kind, "distance, exp or gram")->check(CLI::IsMember({"distance", "exp", "gram"}));
  kernel->add_option("--t", kernel_t, "parameter for exp and gram, 0 < t < 1");

  auto* cocycle_cmd = app.add_subcommand("cocycle", "print the signed edge list of c(x, y)");
  add_common(cocycle_cmd, common, false);
  Vertex x = 0, y = 0;
  cocycle_cmd->add_option("--x", x)->required();
  cocycle_cmd->add_option("--y", y)->required();

  auto* report_cmd = app.add_subcommand("report", "summarize a report.json");
  std::string report_path;
  report_cmd->add_option("file", report_path, "report.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Error& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) {
      config.tree_spec = common.tree;
      config.group_spec = common.group;
      config.origin = common.origin;
      config.seed = seed;
      if (!t_text.empty()) config.t_grid = parse_real_grid(t_text);
      if (!limit_text.empty()) config.limit_grid = parse_real_grid(limit_text);
      if (!z_text.empty()) config.z_grid = parse_complex_grid(z_text);
      const SuiteReport report = run_check(config);
      write_file(common.out.empty() ? "." : common.out, "report.json", report.to_json().dump(2) + "\n");
      std::cout << summarize_report(report.to_json(false));
      return report.pass() ? 0 : kExitFail;
    }

    if (*curve) {
      const Tree tree = load_tree(common.tree);
      if (!tree.contains(common.origin)) throw ConfigError("origin out of range");
      const auto group = resolve_group(tree, common.group, config.auto_group_limit);
      if (*g_index >= group.elements.size()) {
        throw ConfigError("group element " + std::to_string(*g_index) + " out of range (group has " +
                          std::to_string(group.elements.size()) + " elements)");
      }
      std::vector<double> grid = t_text.empty() ? std::vector<double>{0.9, 0.99, 0.999} : parse_real_grid(t_text);
      for (double t : grid)
        if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("curve parameter " + format_real(t) + " outside [0, 1]");
      const auto points = homotopy_curve(RootedTree(tree, common.origin), group.elements[*g_index], grid);
      const std::string csv = curve_to_csv(points);
      write_file(common.out.empty() ? "." : common.out, "curve_" + std::to_string(*g_index) + ".csv", csv);
      std::cout << csv;
      return 0;
    }

    if (*kernel) {
      const Tree tree = load_tree(common.tree);
      KernelMatrix k;
      if (kind == "distance") {
        k = distance_kernel(tree);
      } else {
        if (!(kernel_t > 0.0 && kernel_t < 1.0)) throw ConfigError("--t must lie in (0, 1)");
        if (!tree.contains(common.origin)) throw ConfigError("origin out of range");
        k = kind == "exp" ? exp_kernel(tree, kernel_t) : gram_kernel(RootedTree(tree, common.origin), kernel_t);
      }
      const std::string csv = kernel_to_csv(k);
      if (!common.out.empty()) write_file(common.out, "kernel_" + kind + ".csv", csv);
      std::cout << csv;
      return 0;
    }

    if (*cocycle_cmd) {
      const Tree tree = load_tree(common.tree);
      if (!tree.contains(x) || !tree.contains(y)) throw ConfigError("vertex out of range");
      std::cout << format_cocycle(tree, cocycle(tree, x, y));
      return 0;
    }

    if (*report_cmd) {
      std::ifstream in(report_path);
      if (!in) throw ConfigError("cannot read " + report_path);
      nlohmann::ordered_json doc;
      try {
        doc = nlohmann::ordered_json::parse(in);
        std::cout << summarize_report(doc);
        return doc.at("pass").get<bool>() ? 0 : kExitFail;
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(report_path + ": not a report (" + e.what() + ")");
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NormDidNotConverge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
