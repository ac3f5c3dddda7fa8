#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "treerep/dense.hpp"
#include "treerep/spaces.hpp"
#include "treerep/tree.hpp"

namespace treerep {

enum class KernelKind { distance, exp_t, gram_t };

std::string to_string(KernelKind kind);

/// Real symmetric N x N kernel on the vertices, row-major.
struct KernelMatrix {
  KernelKind kind;
  std::size_t size = 0;
  std::vector<double> entries;

  double operator()(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
};

// d(x, y)
KernelMatrix distance_kernel(const Tree& tree);
// t^{d(x,y)}, 0 < t < 1
KernelMatrix exp_kernel(const Tree& tree, double t);
// (1 - t²)·<T_t⁻¹ δx, T_t⁻¹ δy>, which equals exp_kernel(t).
KernelMatrix gram_kernel(const RootedTree& rooted, double t);

std::string kernel_to_csv(const KernelMatrix& k);

inline constexpr std::uint64_t kDefaultSeed = 0xA11CE;

struct CndReport {
  double basis_max = 0.0;   // max over ξ = e_i - e_0
  double random_max = 0.0;  // max over seeded random mean-zero ξ
  double max_form = 0.0;
  std::size_t samples = 0;
  bool pass(double tolerance) const { return max_form <= tolerance; }
};

// Σ ξx ξy K(x,y) over mean-zero ξ. Throws on an asymmetric kernel.
CndReport cnd_check(const KernelMatrix& k, std::uint64_t seed = kDefaultSeed, std::size_t samples = 1000);
double quadratic_form(const KernelMatrix& k, const std::vector<double>& xi);

struct PsdReport {
  double min_eigenvalue = 0.0;
  bool pass(double tolerance) const { return min_eigenvalue >= -tolerance; }
};

PsdReport psd_check(const KernelMatrix& k);

struct GramReport {
  // ||(1 - tS + t²Q)·[t^d] - (1 - t²)·1||_max
  double operator_residual = 0.0;
  // ||(1 - t²)·<T_t⁻¹δx, T_t⁻¹δy> - t^{d(x,y)}||_max
  double gram_residual = 0.0;
  bool pass(double tolerance) const { return operator_residual <= tolerance && gram_residual <= tolerance; }
};

GramReport gram_identity_check(const RootedTree& rooted, double t);

/// Geodesic cocycle c(x, y) = Σ δ(x_i, x_{i+1}) along the geodesic.
struct Cocycle {
  Vertex source;
  Vertex target;
  EdgeVector value;
};

Cocycle cocycle(const Tree& tree, Vertex x, Vertex y);

struct CocycleReport {
  double norm_squared = 0.0;
  std::size_t distance = 0;
  double coboundary_residual = 0.0;   // ||b c(x,y) - (δx - δy)||
  double closed_form_residual = 0.0;  // ||c(x,y) - F(1-P)⁻¹(δx - δy)||
  bool pass(double tolerance) const {
    return norm_squared == static_cast<double>(distance) && coboundary_residual <= tolerance &&
           closed_form_residual <= tolerance;
  }
};

CocycleReport cocycle_check(const RootedTree& rooted, Vertex x, Vertex y);

// `+ 0-1` / `- 1-2` lines, one per edge of the support.
std::string format_cocycle(const Tree& tree, const Cocycle& c);

}  // namespace treerep
