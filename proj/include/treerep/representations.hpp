#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treerep/dense.hpp"
#include "treerep/group.hpp"
#include "treerep/operators.hpp"
#include "treerep/tree.hpp"

namespace treerep {

// Singular values at or below this count as zero in defect ranks.
inline constexpr double kRankThreshold = 1e-9;

enum class RepKind { rho_z, rho_tilde_t, rho_tilde_1 };

std::string to_string(RepKind kind);

/// One of the deformations of π0 on l2(X0):
///   rho_z        (1 - zP)⁻¹ π0(g) (1 - zP),  |z| < 1   (uniformly bounded)
///   rho_tilde_t  T_t⁻¹ π0(g) T_t,            0 <= t < 1 (unitary)
///   rho_tilde_1  F* π1(g) F + p0                        (the t -> 1 limit)
class DeformedRep {
 public:
  static DeformedRep rho_z(RootedTree rooted, Complex z);
  static DeformedRep rho_tilde(RootedTree rooted, double t);
  static DeformedRep rho_tilde_limit(RootedTree rooted);

  RepKind kind() const noexcept { return kind_; }
  Complex parameter() const noexcept { return parameter_; }
  const RootedTree& rooted() const noexcept { return rooted_; }

  VertexVector apply(const Automorphism& g, const VertexVector& v) const;
  VertexOperator op(const Automorphism& g) const;
  DenseMatrix matrix(const Automorphism& g) const { return materialize(op(g)); }

 private:
  DeformedRep(RootedTree rooted, RepKind kind, Complex parameter)
      : rooted_(std::move(rooted)), kind_(kind), parameter_(parameter) {}
  RootedTree rooted_;
  RepKind kind_;
  Complex parameter_;
};

VertexVector rho_z(const RootedTree& rooted, const Automorphism& g, Complex z, const VertexVector& v);
VertexVector rho_tilde(const RootedTree& rooted, const Automorphism& g, double t, const VertexVector& v);
VertexVector rho_tilde_limit(const RootedTree& rooted, const Automorphism& g, const VertexVector& v);

// P' is P for the origin moved to g·x0.
VertexOperator op_P_prime(const RootedTree& rooted, const Automorphism& g);

struct DefectReport {
  RepKind kind;
  Complex parameter;
  std::vector<Vertex> support;  // [x0, g·x0]
  std::size_t rank = 0;
  double defect_norm = 0.0;  // ||ρ(g) - π0(g)||
  double rho_norm = 0.0;     // ||ρ(g)||
  // Largest entry of ρ(g) - π0(g) in a row outside the support.
  double range_leak = 0.0;
  // Largest entry of ρ(g) - π0(g) in a column outside g⁻¹·support.
  double column_leak = 0.0;
  // Largest entry of ρ(g)π0(g)⁻¹ - 1 outside support x support.
  double translated_leak = 0.0;
  // ||ρ_z(g)π0(g)⁻¹ - 1 - z(1 - zP)⁻¹(P - P')||_max; rho_z only.
  std::optional<double> crosscheck_residual;
  // 2|z|/(1 - |z|); rho_z only.
  std::optional<double> norm_bound;
};

DefectReport defect(const DeformedRep& rep, const Automorphism& g);

struct UniformBoundReport {
  Complex z;
  double max_norm = 0.0;
  std::size_t argmax = 0;
  double bound = 0.0;  // 1 + 2|z|/(1-|z|)
  // Largest |power iteration - dense SVD| over the elements, when N <= 64.
  std::optional<double> dense_crosscheck;
  bool pass = false;
};

// max_g ||ρ_z(g)|| over the given elements, by power iteration.
UniformBoundReport uniform_bound_certificate(const RootedTree& rooted, std::span<const Automorphism> elements,
                                             Complex z, double slack = 1e-8);

struct EquivalenceReport {
  double residual = 0.0;        // ||ρ̃_t(g) - u_t⁻¹ ρ_t(g) u_t||_max
  double u_inverse_residual = 0.0;  // ||u_t u_t⁻¹ - 1||_max
  bool pass(double tolerance) const { return residual <= tolerance && u_inverse_residual <= tolerance; }
};

EquivalenceReport equivalence_check(const RootedTree& rooted, const Automorphism& g, double t);

struct CurvePoint {
  double t;
  double dist_to_limit;
  double dist_to_pi0;
};

// Spectral-norm distances of ρ̃_t(g) to ρ̃_1(g) and to π0(g); t = 1 uses the limit.
std::vector<CurvePoint> homotopy_curve(const RootedTree& rooted, const Automorphism& g,
                                       std::span<const double> t_grid);
// Header `t,dist_to_limit,dist_to_pi0`, 17 significant digits.
std::string curve_to_csv(std::span<const CurvePoint> curve);

}  // namespace treerep
