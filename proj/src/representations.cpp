#include "treerep/representations.hpp"

#include <algorithm>
#include <cmath>

#include "treerep/error.hpp"

namespace treerep {

std::string to_string(RepKind kind) {
  switch (kind) {
    case RepKind::rho_z:
      return "rho_z";
    case RepKind::rho_tilde_t:
      return "rho_tilde_t";
    case RepKind::rho_tilde_1:
      return "rho_tilde_1";
  }
  return "unknown";
}

namespace {

void require_unit_disc(Complex z) {
  if (!(std::abs(z) < 1.0)) {
    throw Error("rho_z needs |z| < 1, got z = " + format_complex(z));
  }
}

void require_open_t(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw Error("rho_tilde needs 0 <= t < 1, got t = " + format_real(t));
}

VertexOperator one_minus_zP(const RootedTree& rooted, Complex z) {
  return combine<VertexSpace, VertexSpace>(1.0, identity_operator<VertexSpace>(rooted.vertex_count()), -z,
                                           op_P(rooted));
}

}  // namespace

DeformedRep DeformedRep::rho_z(RootedTree rooted, Complex z) {
  require_unit_disc(z);
  return DeformedRep(std::move(rooted), RepKind::rho_z, z);
}

DeformedRep DeformedRep::rho_tilde(RootedTree rooted, double t) {
  require_open_t(t);
  return DeformedRep(std::move(rooted), RepKind::rho_tilde_t, t);
}

DeformedRep DeformedRep::rho_tilde_limit(RootedTree rooted) {
  return DeformedRep(std::move(rooted), RepKind::rho_tilde_1, 1.0);
}

VertexVector DeformedRep::apply(const Automorphism& g, const VertexVector& v) const {
  switch (kind_) {
    case RepKind::rho_z:
      return treerep::rho_z(rooted_, g, parameter_, v);
    case RepKind::rho_tilde_t:
      return treerep::rho_tilde(rooted_, g, parameter_.real(), v);
    case RepKind::rho_tilde_1:
      return treerep::rho_tilde_limit(rooted_, g, v);
  }
  return {};
}

VertexOperator DeformedRep::op(const Automorphism& g) const {
  const Tree& tree = rooted_.tree();
  // Every kind is a homomorphism, so the identity maps to 1 without rounding noise.
  if (g.is_identity()) return identity_operator<VertexSpace>(tree.vertex_count());
  switch (kind_) {
    case RepKind::rho_z:
      return op_resolvent(rooted_, parameter_) * op_pi0(tree, g) * one_minus_zP(rooted_, parameter_);
    case RepKind::rho_tilde_t: {
      const double t = parameter_.real();
      return op_T_inverse(rooted_, t) * op_pi0(tree, g) * op_T(rooted_, t);
    }
    case RepKind::rho_tilde_1:
      return op_Fstar(rooted_) * op_pi1(tree, g) * op_F(rooted_) + op_p0(rooted_);
  }
  throw Error("unknown representation kind");
}

VertexVector rho_z(const RootedTree& rooted, const Automorphism& g, Complex z, const VertexVector& v) {
  require_unit_disc(z);
  return resolvent(rooted, z, pi0(g, v - z * op_P(rooted).apply(v)));
}

VertexVector rho_tilde(const RootedTree& rooted, const Automorphism& g, double t, const VertexVector& v) {
  require_open_t(t);
  return op_T_inverse(rooted, t).apply(pi0(g, op_T(rooted, t).apply(v)));
}

VertexVector rho_tilde_limit(const RootedTree& rooted, const Automorphism& g, const VertexVector& v) {
  const auto F = op_F(rooted);
  VertexVector out = F.adjoint_apply(pi1(rooted.tree(), g, F.apply(v)));
  out.add_to(rooted.origin(), v[rooted.origin()]);
  return out;
}

VertexOperator op_P_prime(const RootedTree& rooted, const Automorphism& g) {
  return op_P(root_at(rooted.tree(), g(rooted.origin())));
}

DefectReport defect(const DeformedRep& rep, const Automorphism& g) {
  const RootedTree& rooted = rep.rooted();
  const Tree& tree = rooted.tree();
  const std::size_t n = tree.vertex_count();

  const DenseMatrix rho = rep.matrix(g);
  const DenseMatrix pi = materialize(op_pi0(tree, g));
  const DenseMatrix difference = rho - pi;

  DefectReport report;
  report.kind = rep.kind();
  report.parameter = rep.parameter();
  report.support = path(tree, rooted.origin(), g(rooted.origin()));
  std::vector<bool> in_support(n, false);
  std::vector<bool> in_preimage(n, false);
  const Automorphism g_inv = g.inverse();
  for (Vertex x : report.support) {
    in_support[x] = true;
    in_preimage[g_inv(x)] = true;
  }

  const DenseMatrix translated = rho * pi.adjoint() - DenseMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::abs(difference(i, j));
      if (!in_support[i]) report.range_leak = std::max(report.range_leak, d);
      if (!in_preimage[j]) report.column_leak = std::max(report.column_leak, d);
      if (!in_support[i] || !in_support[j]) {
        report.translated_leak = std::max(report.translated_leak, std::abs(translated(i, j)));
      }
    }
  }

  report.rank = numerical_rank(difference, kRankThreshold);
  report.defect_norm = spectral_norm(difference);
  report.rho_norm = spectral_norm(rho);

  if (rep.kind() == RepKind::rho_z) {
    const Complex z = rep.parameter();
    const DenseMatrix shift_gap = materialize(op_P(rooted) - op_P_prime(rooted, g));
    const DenseMatrix predicted = z * (materialize(op_resolvent(rooted, z)) * shift_gap);
    report.crosscheck_residual = max_abs_diff(translated, predicted);
    report.norm_bound = 2.0 * std::abs(z) / (1.0 - std::abs(z));
  }
  return report;
}

UniformBoundReport uniform_bound_certificate(const RootedTree& rooted, std::span<const Automorphism> elements,
                                             Complex z, double slack) {
  const DeformedRep rep = DeformedRep::rho_z(rooted, z);
  const bool cross_check = rooted.vertex_count() <= 64;
  std::vector<double> norms(elements.size(), 0.0);
  std::vector<double> gaps(elements.size(), 0.0);
  std::vector<std::string> failures(elements.size());

  const auto count = static_cast<std::ptrdiff_t>(elements.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      const DenseMatrix m = rep.matrix(elements[k]);
      norms[k] = power_iteration_norm(m);
      if (cross_check) gaps[k] = std::abs(norms[k] - spectral_norm(m));
    } catch (const std::exception& e) {
      failures[k] = e.what();
    }
  }
  for (const auto& f : failures)
    if (!f.empty()) throw Error(f);

  UniformBoundReport report;
  report.z = z;
  report.bound = 1.0 + 2.0 * std::abs(z) / (1.0 - std::abs(z));
  for (std::size_t k = 0; k < norms.size(); ++k) {
    if (norms[k] > report.max_norm) {
      report.max_norm = norms[k];
      report.argmax = k;
    }
  }
  if (cross_check) report.dense_crosscheck = gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
  report.pass = report.max_norm <= report.bound + slack;
  return report;
}

EquivalenceReport equivalence_check(const RootedTree& rooted, const Automorphism& g, double t) {
  const DenseMatrix unitary = DeformedRep::rho_tilde(rooted, t).matrix(g);
  const DenseMatrix bounded = DeformedRep::rho_z(rooted, t).matrix(g);
  const DenseMatrix u = materialize(op_u(rooted, t));
  const DenseMatrix u_inv = materialize(op_u_inverse(rooted, t));
  EquivalenceReport report;
  report.residual = max_abs_diff(unitary, u_inv * bounded * u);
  report.u_inverse_residual = max_abs_diff(u * u_inv, DenseMatrix::identity(rooted.vertex_count()));
  return report;
}

std::vector<CurvePoint> homotopy_curve(const RootedTree& rooted, const Automorphism& g,
                                       std::span<const double> t_grid) {
  const DenseMatrix limit = DeformedRep::rho_tilde_limit(rooted).matrix(g);
  const DenseMatrix pi = materialize(op_pi0(rooted.tree(), g));
  std::vector<CurvePoint> curve;
  for (double t : t_grid) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error("curve parameter t = " + format_real(t) + " outside [0, 1]");
    const DenseMatrix at_t = t == 1.0 ? limit : DeformedRep::rho_tilde(rooted, t).matrix(g);
    curve.push_back({t, spectral_norm(at_t - limit), spectral_norm(at_t - pi)});
  }
  return curve;
}

std::string curve_to_csv(std::span<const CurvePoint> curve) {
  std::string out = "t,dist_to_limit,dist_to_pi0\n";
  for (const auto& p : curve) {
    out += format_real(p.t) + "," + format_real(p.dist_to_limit) + "," + format_real(p.dist_to_pi0) + "\n";
  }
  return out;
}

}  // namespace treerep
