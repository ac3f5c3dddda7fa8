#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "treerep/error.hpp"
#include "treerep/identities.hpp"
#include "treerep/operators.hpp"

using namespace treerep;

namespace {

std::vector<Tree> corpus() {
  std::vector<Tree> trees{generators::path(1), generators::path(2), generators::path(6),
                          generators::star(5), generators::regular(2, 2), generators::regular(3, 2)};
  for (std::uint64_t seed = 1; seed <= 8; ++seed) trees.push_back(generators::random(4 + 7 * seed, seed));
  return trees;
}

std::vector<Vertex> origins(const Tree& tree) {
  return {0, static_cast<Vertex>(tree.vertex_count() - 1), static_cast<Vertex>(tree.vertex_count() / 3)};
}

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double density = 1.0) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (unit(rng) < density) m(i, j) = {gauss(rng), gauss(rng)};
  return m;
}

const double kExact = 1e-12;

}  // namespace

TEST_CASE("S, Q, P, p0 examples") {
  const Tree p3 = generators::path(3);
  const RootedTree r(p3, 0);
  CHECK(op_S(p3).apply(VertexVector::basis(1)) == VertexVector::basis(0) + VertexVector::basis(2));
  CHECK(op_Q(p3).apply(VertexVector::basis(1)) == VertexVector::basis(1));
  CHECK(op_Q(p3).apply(VertexVector::basis(0)).empty());
  CHECK(op_Q(generators::star(3)).apply(VertexVector::basis(0)) == VertexVector::basis(0, 1.0));
  CHECK(op_Q(generators::star(4)).apply(VertexVector::basis(0)) == VertexVector::basis(0, 2.0));
  CHECK(op_P(r).apply(VertexVector::basis(2)) == VertexVector::basis(1));
  CHECK(op_P(r).apply(VertexVector::basis(0)).empty());
  CHECK(op_Pstar(r).apply(VertexVector::basis(1)) == VertexVector::basis(2));
  CHECK(op_p0(r).apply(VertexVector::basis(0)) == VertexVector::basis(0));
  CHECK(op_p0(r).apply(VertexVector::basis(1)).empty());
  CHECK(op_p0(r).apply(VertexVector::basis(0) + VertexVector::basis(1)) == VertexVector::basis(0));
}

TEST_CASE("T and its inverse on P2") {
  const RootedTree r(generators::path(2), 0);
  const auto t0 = op_T(r, 0.5).apply(VertexVector::basis(0));
  CHECK(std::abs(t0[0] - std::sqrt(3.0) / 2.0) < 1e-15);
  CHECK(t0.support_size() == 1);
  const auto t1 = op_T(r, 0.5).apply(VertexVector::basis(1));
  CHECK(t1[1] == Complex(1.0));
  CHECK(t1[0] == Complex(-0.5));
  const auto i0 = op_T_inverse(r, 0.5).apply(VertexVector::basis(0));
  CHECK(std::abs(i0[0] - 2.0 / std::sqrt(3.0)) < 1e-15);
  const auto i1 = op_T_inverse(r, 0.5).apply(VertexVector::basis(1));
  CHECK(std::abs(i1[1] - 1.0) < 1e-15);
  CHECK(std::abs(i1[0] - 1.0 / std::sqrt(3.0)) < 1e-15);

  CHECK_THROWS_AS(op_T_inverse(r, 1.0), Error);
  CHECK_THROWS_AS(op_T(r, 1.5), Error);
  CHECK_THROWS_AS(op_T(r, -0.1), Error);
  CHECK_NOTHROW(op_T(r, 1.0));
  CHECK(max_abs_diff(materialize(op_T(r, 0.0)), DenseMatrix::identity(2)) == 0.0);
  CHECK(max_abs_diff(materialize(op_T_inverse(r, 0.0)), DenseMatrix::identity(2)) == 0.0);
}

TEST_CASE("resolvent examples") {
  const RootedTree r(generators::path(3), 0);
  const Complex z(0.3, 0.4);
  const auto v = resolvent(r, z, VertexVector::basis(2));
  CHECK(v[2] == Complex(1.0));
  CHECK(std::abs(v[1] - z) < 1e-16);
  CHECK(std::abs(v[0] - z * z) < 1e-16);
  CHECK(resolvent(r, 0.0, VertexVector::basis(2)) == VertexVector::basis(2));
  CHECK(resolvent(r, 0.7, VertexVector::basis(0)) == VertexVector::basis(0));
}

TEST_CASE("F and b examples") {
  const Tree p2 = generators::path(2);
  const RootedTree r2(p2, 0);
  CHECK(op_F(r2).apply(VertexVector::basis(1)) == EdgeVector::basis(0, -1.0));
  CHECK(op_F(r2).apply(VertexVector::basis(0)).empty());
  CHECK(op_b(p2).apply(EdgeVector::basis(0)) == VertexVector::basis(0) - VertexVector::basis(1));
  CHECK(op_b(p2).apply(EdgeVector::basis(0, -1.0)) == VertexVector::basis(1) - VertexVector::basis(0));

  const Tree p3 = generators::path(3);
  const RootedTree r3(p3, 0);
  CHECK(op_Fstar(r3).apply(op_F(r3).apply(VertexVector::basis(2))) == VertexVector::basis(2));
  CHECK(numerical_rank(materialize(op_b(p3)), 1e-9) == 2);
}

TEST_CASE("every operator matches its dense definition") {
  for (const Tree& tree : corpus()) {
    const auto g = oracle::graph_of(tree);
    CHECK(oracle::max_abs_diff(materialize(op_S(tree)), oracle::S(g)) == 0.0);
    CHECK(oracle::max_abs_diff(materialize(op_Q(tree)), oracle::Q(g)) == 0.0);
    CHECK(oracle::max_abs_diff(materialize(op_b(tree)), oracle::b(g)) == 0.0);
    for (Vertex x0 : origins(tree)) {
      const RootedTree r(tree, x0);
      const int o = static_cast<int>(x0);
      const auto P = oracle::P(g, o);
      CHECK(oracle::max_abs_diff(materialize(op_P(r)), P) == 0.0);
      CHECK(oracle::max_abs_diff(materialize(op_Pstar(r)), oracle::conj_transpose(P)) == 0.0);
      CHECK(oracle::max_abs_diff(materialize(op_p0(r)), oracle::p0(g, o)) == 0.0);
      CHECK(oracle::max_abs_diff(materialize(op_F(r)), oracle::F(g, o)) == 0.0);
      CHECK(oracle::max_abs_diff(materialize(op_Fstar(r)), oracle::conj_transpose(oracle::F(g, o))) == 0.0);
      for (double t : {0.0, 0.3, 0.9, 0.99}) {
        const auto T = oracle::T(g, o, t);
        CHECK(oracle::max_abs_diff(materialize(op_T(r, t)), T) <= kExact);
        CHECK(oracle::max_abs_diff(materialize(op_T_inverse(r, t)), oracle::gauss_jordan_inverse(T)) <= 1e-10);
        CHECK(oracle::max_abs_diff(materialize(op_T(r, t)) * materialize(op_T_inverse(r, t)),
                                   oracle::identity(g.n)) <= kExact);
        CHECK(oracle::max_abs_diff(materialize(op_u(r, t)) * materialize(op_u_inverse(r, t)),
                                   oracle::identity(g.n)) <= kExact);
      }
      for (Complex z : {Complex(0.5), Complex(-0.5), Complex(0.3, 0.4), Complex(1.0), Complex(2.0, -1.0)}) {
        const auto one_minus_zp = oracle::lin(1.0, oracle::identity(g.n), -z, P);
        CHECK(oracle::max_abs_diff(materialize(op_resolvent(r, z)), oracle::gauss_jordan_inverse(one_minus_zp)) <=
              1e-9 * std::pow(std::max(1.0, std::abs(z)), static_cast<double>(r.max_depth())));
        CHECK(oracle::max_abs_diff(materialize(op_resolvent(r, z).adjoint()),
                                   oracle::conj_transpose(materialize(op_resolvent(r, z)))) == 0.0);
      }
    }
  }
}

TEST_CASE("operator identities on the corpus") {
  for (const Tree& tree : corpus()) {
    for (Vertex x0 : origins(tree)) {
      const RootedTree r(tree, x0);
      const auto p1 = identities::shift_identities(r);
      CHECK(p1.p_pstar <= kExact);
      CHECK(p1.p_plus_pstar <= kExact);
      CHECK(identities::nilpotency(r) == 0.0);
      CHECK(identities::coboundary_identities(r).max() <= kExact);
      for (double t : {0.0, 0.5, 0.99}) CHECK(identities::deformation_gram(r, t) <= kExact);
      for (Complex z : {Complex(0.5), Complex(-0.5), Complex(0.3, 0.4), Complex(1.0)}) {
        const auto l1 = identities::resolvent_identities(r, z);
        CHECK(l1.path_sum <= 1e-13);
        CHECK(l1.neumann <= 1e-13);
        CHECK(l1.inverse <= 1e-13);
      }
      CHECK(identities::adjoint_consistency(r, 99) <= 1e-12 * std::max<double>(tree.vertex_count(), 1));
    }
  }
}

TEST_CASE("P^k is nonzero right below the nilpotency index") {
  const RootedTree r(generators::path(5), 0);
  const DenseMatrix p = materialize(op_P(r));
  DenseMatrix power = p;
  for (std::size_t k = 1; k < r.max_depth(); ++k) power = power * p;
  CHECK(max_abs(power) == 1.0);
  CHECK(max_abs(power * p) == 0.0);
}

TEST_CASE("composition helpers") {
  const Tree tree = generators::random(15, 2);
  const RootedTree r(tree, 4);
  const auto composite = op_T_inverse(r, 0.4) * op_T(r, 0.4);
  CHECK(max_abs_diff(materialize(composite), DenseMatrix::identity(15)) <= kExact);
  const auto sum = op_P(r) + op_Pstar(r);
  CHECK(max_abs_diff(materialize(sum), materialize(op_S(tree))) == 0.0);
  const auto diff = op_S(tree) - op_Pstar(r);
  CHECK(max_abs_diff(materialize(diff), materialize(op_P(r))) == 0.0);
  CHECK_THROWS_AS(compose(op_S(tree), op_S(generators::path(3))), Error);
}

TEST_CASE("parallel kernels agree with their serial references") {
  std::mt19937_64 rng(5);
  for (auto [n, k, m, density] : {std::tuple{1, 1, 1, 1.0}, std::tuple{7, 5, 3, 1.0}, std::tuple{64, 64, 64, 0.1},
                                  std::tuple{90, 40, 70, 1.0}, std::tuple{0, 3, 3, 1.0}}) {
    const auto a = random_matrix(n, k, rng, density);
    const auto b = random_matrix(k, m, rng);
    const auto reference = oracle::naive_multiply(a, b);
    CHECK(max_abs_diff(multiply(a, b), reference) <= 1e-12);
    CHECK(max_abs_diff(multiply_serial(a, b), reference) <= 1e-12);
  }
  CHECK_THROWS_AS(multiply(DenseMatrix(2, 3), DenseMatrix(2, 3)), Error);

  for (const Tree& tree : corpus()) {
    const RootedTree r(tree, 0);
    CHECK(max_abs_diff(materialize(op_T_inverse(r, 0.7)), materialize_serial(op_T_inverse(r, 0.7))) == 0.0);
    CHECK(max_abs_diff(materialize(op_F(r)), materialize_serial(op_F(r))) == 0.0);
  }
}

TEST_CASE("dense dimension guard") {
  CHECK_THROWS_AS(DenseMatrix(10001, 1), Error);
  CHECK_NOTHROW(DenseMatrix(10000, 1));
}

TEST_CASE("norms") {
  const Tree p2 = generators::path(2);
  const RootedTree r(p2, 0);
  CHECK(std::abs(op_norm(identity_operator<VertexSpace>(5)) - 1.0) <= 1e-10);
  CHECK(std::abs(op_norm(op_p0(r)) - 1.0) <= 1e-10);
  CHECK(std::abs(op_norm(op_S(p2)) - 1.0) <= 1e-10);
  CHECK(std::abs(spectral_norm(materialize(op_S(p2))) - 1.0) <= 1e-12);

  // power iteration against the SVD on random trees up to 64 vertices
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Tree tree = generators::random(10 * seed + 4, seed);
    const RootedTree rooted(tree, 1);
    for (const auto& op : {op_S(tree), op_T_inverse(rooted, 0.6), op_resolvent(rooted, {0.2, 0.5})}) {
      const double exact = spectral_norm(materialize(op));
      CHECK(std::abs(op_norm(op) - exact) <= 1e-8 * exact);
      CHECK(std::abs(power_iteration_norm(materialize(op)) - exact) <= 1e-8 * exact);
    }
  }

  PowerIterationOptions starved;
  starved.max_iterations = 1;
  CHECK_THROWS_AS(op_norm(op_S(generators::random(30, 1)), starved), NormDidNotConverge);
}

TEST_CASE("csv export") {
  DenseMatrix m(1, 2);
  m(0, 0) = 1.0;
  m(0, 1) = Complex(0.5, -2.0);
  CHECK(to_csv(m) == "1,0.5-2i\n");
}
