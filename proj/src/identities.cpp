#include "treerep/identities.hpp"

#include <algorithm>
#include <random>

#include "treerep/operators.hpp"

namespace treerep::identities {

ShiftIdentities shift_identities(const RootedTree& rooted) {
  const Tree& tree = rooted.tree();
  const DenseMatrix p = materialize(op_P(rooted));
  const DenseMatrix p0 = materialize(op_p0(rooted));
  const DenseMatrix s = materialize(op_S(tree));
  const DenseMatrix q = materialize(op_Q(tree));
  return {max_abs_diff(p * p.adjoint(), q + p0), max_abs_diff(p + p.adjoint(), s)};
}

double nilpotency(const RootedTree& rooted) {
  const DenseMatrix p = materialize(op_P(rooted));
  DenseMatrix power = p;
  for (std::size_t k = 0; k < rooted.max_depth(); ++k) power = power * p;
  return max_abs(power);
}

double deformation_gram(const RootedTree& rooted, double t) {
  const Tree& tree = rooted.tree();
  const std::size_t n = tree.vertex_count();
  const DenseMatrix tt = materialize(op_T(rooted, t));
  const DenseMatrix expected =
      DenseMatrix::identity(n) - t * materialize(op_S(tree)) + (t * t) * materialize(op_Q(tree));
  return max_abs_diff(tt * tt.adjoint(), expected);
}

double commutator(const RootedTree& rooted, double t, const Automorphism& g) {
  const DenseMatrix tt = materialize(op_T(rooted, t));
  const DenseMatrix gram = tt * tt.adjoint();
  const DenseMatrix pi = materialize(op_pi0(rooted.tree(), g));
  return max_abs_diff(gram * pi, pi * gram);
}

ResolventIdentities resolvent_identities(const RootedTree& rooted, std::complex<double> z) {
  const Tree& tree = rooted.tree();
  const std::size_t n = tree.vertex_count();
  const Vertex x0 = rooted.origin();

  // Σ_k z^k P^k with the sum cut at the nilpotency index.
  const DenseMatrix p = materialize(op_P(rooted));
  DenseMatrix neumann = DenseMatrix::identity(n);
  DenseMatrix term = DenseMatrix::identity(n);
  for (std::size_t k = 1; k <= rooted.max_depth(); ++k) {
    term = z * (p * term);  // sparse factor on the left keeps this O(N²)
    neumann += term;
  }
  const DenseMatrix r = materialize(op_resolvent(rooted, z));

  ResolventIdentities result;
  result.neumann = max_abs_diff(r, neumann);
  const DenseMatrix one_minus_zp = DenseMatrix::identity(n) - z * p;
  result.inverse = max_abs_diff(one_minus_zp * r, DenseMatrix::identity(n));
  for (Vertex x = 0; x < n; ++x) {
    VertexVector explicit_sum;
    const auto geodesic = path(tree, x0, x);
    for (Vertex y : geodesic) explicit_sum.add_to(y, std::pow(z, static_cast<double>(distance(tree, y, x))));
    result.path_sum = std::max(result.path_sum, max_abs_diff(resolvent(rooted, z, VertexVector::basis(x)), explicit_sum));
  }
  return result;
}

double CoboundaryIdentities::max() const {
  return std::max({one_minus_p, one_minus_p_fstar, resolvent_b, fstar_f, f_fstar});
}

CoboundaryIdentities coboundary_identities(const RootedTree& rooted) {
  const Tree& tree = rooted.tree();
  const std::size_t n = tree.vertex_count();
  const DenseMatrix one = DenseMatrix::identity(n);
  const DenseMatrix p = materialize(op_P(rooted));
  const DenseMatrix p0 = materialize(op_p0(rooted));
  const DenseMatrix f = materialize(op_F(rooted));
  const DenseMatrix fstar = materialize(op_Fstar(rooted));
  const DenseMatrix b = materialize(op_b(tree));
  const DenseMatrix r1 = materialize(op_resolvent(rooted, 1.0));

  CoboundaryIdentities result;
  result.one_minus_p = max_abs_diff(one - p, b * f + p0);
  result.one_minus_p_fstar = max_abs_diff((one - p) * fstar, b);
  result.resolvent_b = max_abs_diff(r1 * b, fstar);
  result.fstar_f = max_abs_diff(fstar * f, one - p0);
  result.f_fstar = max_abs_diff(f * fstar, DenseMatrix::identity(tree.edge_count()));
  return result;
}

namespace {

template <typename Space>
SparseVector<Space> random_vector(std::size_t dimension, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  SparseVector<Space> v;
  for (std::size_t i = 0; i < dimension; ++i) v.set(i, {gauss(rng), gauss(rng)});
  return v;
}

template <typename A, typename B>
double adjoint_gap(const LinearOperator<A, B>& op, std::mt19937_64& rng, std::size_t trials) {
  double worst = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto u = random_vector<B>(op.codomain_dimension(), rng);
    const auto v = random_vector<A>(op.domain_dimension(), rng);
    worst = std::max(worst, std::abs(inner(op.adjoint_apply(u), v) - inner(u, op.apply(v))));
  }
  return worst;
}

}  // namespace

double adjoint_consistency(const RootedTree& rooted, std::uint64_t seed, std::size_t trials) {
  const Tree& tree = rooted.tree();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  worst = std::max(worst, adjoint_gap(op_S(tree), rng, trials));
  worst = std::max(worst, adjoint_gap(op_Q(tree), rng, trials));
  worst = std::max(worst, adjoint_gap(op_P(rooted), rng, trials));
  worst = std::max(worst, adjoint_gap(op_p0(rooted), rng, trials));
  worst = std::max(worst, adjoint_gap(op_T(rooted, 0.5), rng, trials));
  worst = std::max(worst, adjoint_gap(op_T_inverse(rooted, 0.5), rng, trials));
  worst = std::max(worst, adjoint_gap(op_resolvent(rooted, {0.3, 0.4}), rng, trials));
  worst = std::max(worst, adjoint_gap(op_F(rooted), rng, trials));
  worst = std::max(worst, adjoint_gap(op_b(tree), rng, trials));
  return worst;
}

std::vector<std::pair<std::size_t, std::size_t>> homomorphism_pairs(std::size_t group_size, std::size_t width) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (group_size <= width) {
    for (std::size_t i = 0; i < group_size; ++i)
      for (std::size_t j = 0; j < group_size; ++j) pairs.emplace_back(i, j);
    return pairs;
  }
  for (std::size_t i = 0; i < group_size; ++i)
    for (std::size_t k = 0; k < width; ++k) pairs.emplace_back(i, k * group_size / width);
  return pairs;
}

GroupLaws group_laws(const Tree& tree, std::span<const Automorphism> elements,
                     std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  GroupLaws laws;
  const DenseMatrix s = materialize(op_S(tree));
  const DenseMatrix q = materialize(op_Q(tree));
  const DenseMatrix b = materialize(op_b(tree));
  const DenseMatrix vertex_one = DenseMatrix::identity(tree.vertex_count());
  const DenseMatrix edge_one = DenseMatrix::identity(tree.edge_count());

  std::vector<DenseMatrix> pi0s;
  std::vector<DenseMatrix> pi1s;
  for (const auto& g : elements) {
    pi0s.push_back(materialize(op_pi0(tree, g)));
    pi1s.push_back(materialize(op_pi1(tree, g)));
  }
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const auto& a = pi0s[k];
    const auto& e = pi1s[k];
    laws.pi0_unitary = std::max(laws.pi0_unitary, max_abs_diff(a.adjoint() * a, vertex_one));
    laws.pi1_unitary = std::max(laws.pi1_unitary, max_abs_diff(e.adjoint() * e, edge_one));
    laws.s_q_commute = std::max({laws.s_q_commute, max_abs_diff(s * a, a * s), max_abs_diff(q * a, a * q)});
    laws.b_equivariance = std::max(laws.b_equivariance, max_abs_diff(b * e, a * b));
  }
  for (auto [i, j] : pairs) {
    const Automorphism gh = elements[i] * elements[j];
    laws.pi0_homomorphism =
        std::max(laws.pi0_homomorphism, max_abs_diff(materialize(op_pi0(tree, gh)), pi0s[i] * pi0s[j]));
    laws.pi1_homomorphism =
        std::max(laws.pi1_homomorphism, max_abs_diff(materialize(op_pi1(tree, gh)), pi1s[i] * pi1s[j]));
  }
  return laws;
}

}  // namespace treerep::identities
