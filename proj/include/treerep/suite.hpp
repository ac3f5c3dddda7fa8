#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "treerep/error.hpp"
#include "treerep/group.hpp"
#include "treerep/kernels.hpp"
#include "treerep/tree.hpp"

namespace treerep {

// Bad command line or configuration; the CLI maps it to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Every tolerance the suite compares against, in one place. Names are the
// `--tol.<name>` flags.
struct Tolerances {
  double identity = 1e-12;   // exact operator identities
  double unitary = 1e-11;    // unitarity, homomorphism, defect locality
  double rank = 1e-9;        // singular values below count as zero
  double kernel = 1e-10;     // Gram identity, CND and PSD checks
  double resolvent = 1e-13;  // path-sum vs Neumann sum
  double bound = 1e-8;       // slack on the uniform bound
  double lipschitz = 10.0;   // continuity constant on the t grid

  static const std::vector<std::string>& names();
  double& at(const std::string& name);
};

struct SuiteConfig {
  std::string tree_spec;
  // `auto` (full group, N <= auto_group_limit), `trivial`, or a permutation file.
  std::string group_spec = "auto";
  Vertex origin = 0;
  std::vector<double> t_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  std::vector<double> limit_grid = {0.9, 0.99, 0.999};
  std::vector<std::complex<double>> z_grid = {0.25, 0.5, 0.9};
  std::uint64_t seed = kDefaultSeed;
  Tolerances tolerances;
  std::size_t auto_group_limit = 12;
  std::size_t cocycle_limit = 30;
};

// Throws ConfigError when a grid leaves its parameter region.
void validate(const SuiteConfig& config);

GroupClosure resolve_group(const Tree& tree, const std::string& group_spec, std::size_t auto_limit);

struct CheckRecord {
  std::string check;
  std::string parameter;
  double measured = 0.0;
  std::optional<double> bound;  // absent for informational records
  bool pass = true;
  // Group element (index into the sorted closure) attaining the measured value.
  std::optional<std::size_t> g;
};

struct SuiteReport {
  static constexpr int kSchema = 1;
  std::string tree_spec;
  std::size_t vertex_count = 0;
  Vertex origin = 0;
  std::size_t group_size = 0;
  std::vector<CheckRecord> records;
  std::vector<std::pair<std::string, double>> timings;  // seconds per check family

  bool pass() const;
  // Timings live in their own field; leave them out for byte comparisons.
  nlohmann::ordered_json to_json(bool include_timings = true) const;
};

SuiteReport run_check(const SuiteConfig& config);

// Human-readable summary of a report.json document.
std::string summarize_report(const nlohmann::ordered_json& report);

std::vector<double> parse_real_grid(const std::string& text);
std::vector<std::complex<double>> parse_complex_grid(const std::string& text);

}  // namespace treerep
