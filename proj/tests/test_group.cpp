#include <doctest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "treerep/error.hpp"
#include "treerep/group.hpp"
#include "treerep/identities.hpp"

using namespace treerep;

namespace {

std::set<std::vector<int>> as_set(const std::vector<Automorphism>& elements) {
  std::set<std::vector<int>> out;
  for (const auto& g : elements) out.insert(oracle::images_of({g.images().begin(), g.images().end()}));
  return out;
}

std::vector<int> images(const Automorphism& g) { return {g.images().begin(), g.images().end()}; }

std::string verify_message(const Tree& tree, std::vector<Vertex> imgs) {
  try {
    verify_automorphism(tree, std::move(imgs));
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("verify_automorphism") {
  const Tree p3 = generators::path(3);
  CHECK_NOTHROW(verify_automorphism(p3, {2, 1, 0}));
  CHECK_NOTHROW(verify_automorphism(p3, {0, 1, 2}));
  CHECK(verify_message(p3, {1, 0, 2}) == "edge {1,2} maps to {0,2}, not an edge");
  CHECK(verify_message(p3, {0, 0, 2}).find("not a permutation") != std::string::npos);
  CHECK_THROWS_AS(verify_automorphism(p3, {0, 1}), Error);
  CHECK_THROWS_AS(verify_automorphism(p3, {0, 1, 3}), Error);
}

TEST_CASE("composition, inverse and identity") {
  const Tree star = generators::star(4);
  const auto a = verify_automorphism(star, {0, 2, 1, 3});
  const auto b = verify_automorphism(star, {0, 1, 3, 2});
  // (a*b)(x) = a(b(x))
  const auto ab = a * b;
  for (Vertex x = 0; x < 4; ++x) CHECK(ab(x) == a(b(x)));
  CHECK((a * a).is_identity());
  CHECK((ab * ab.inverse()).is_identity());
  CHECK_FALSE(ab.is_identity());
  CHECK(Automorphism::identity(4).is_identity());
}

TEST_CASE("closures") {
  const Tree p3 = generators::path(3);
  const auto swap = verify_automorphism(p3, {2, 1, 0});
  CHECK(close_group(p3, {swap}).size() == 2);
  const auto trivial = close_group(p3, {});
  CHECK(trivial.size() == 1);
  CHECK(trivial.elements[0].is_identity());
  CHECK(trivial.complete);

  const Tree star = generators::star(4);
  const auto s3 = close_group(star, {verify_automorphism(star, {0, 2, 1, 3}), verify_automorphism(star, {0, 1, 3, 2})});
  CHECK(s3.size() == 6);
  CHECK(s3.complete);
  CHECK(s3.elements[0].is_identity());

  // cap exceeded is a flagged state
  const Tree big = generators::star(9);
  const auto capped = close_group(big, {verify_automorphism(big, {0, 2, 1, 3, 4, 5, 6, 7, 8}),
                                        verify_automorphism(big, {0, 2, 3, 4, 5, 6, 7, 8, 1})},
                                  100);
  CHECK_FALSE(capped.complete);
  CHECK(capped.size() == 100);
}

TEST_CASE("full automorphism group examples") {
  CHECK(full_automorphism_group(generators::path(1)).size() == 1);
  CHECK(full_automorphism_group(generators::path(2)).size() == 2);
  CHECK(full_automorphism_group(generators::path(3)).size() == 2);
  CHECK(full_automorphism_group(generators::star(4)).size() == 6);
  const auto reg = full_automorphism_group(generators::regular(2, 3));
  CHECK(reg.complete);
  CHECK(reg.size() == 3072);
  CHECK_FALSE(full_automorphism_group(generators::regular(2, 4)).complete);
}

TEST_CASE("full group agrees with brute-force enumeration") {
  std::vector<Tree> trees{generators::path(4), generators::path(7), generators::star(6), generators::regular(2, 1),
                          generators::regular(1, 3)};
  for (std::uint64_t seed = 1; seed <= 25; ++seed) trees.push_back(generators::random(3 + seed % 6, seed));
  for (const Tree& tree : trees) {
    const auto g = oracle::graph_of(tree);
    const auto expected = oracle::brute_force_automorphisms(g);
    const auto closure = full_automorphism_group(tree);
    REQUIRE(closure.complete);
    CHECK(closure.size() == expected.size());
    CHECK(as_set(closure.elements) == std::set<std::vector<int>>(expected.begin(), expected.end()));
    CHECK(closure.elements[0].is_identity());
  }
}

TEST_CASE("sampled automorphisms are valid and reproducible") {
  const Tree tree = generators::regular(2, 4);
  const auto a = sample_automorphisms(tree, 20, 3);
  const auto b = sample_automorphisms(tree, 20, 3);
  CHECK(a == b);
  CHECK(a.size() == 20);
  for (const auto& g : a) CHECK_NOTHROW(verify_automorphism(tree, {g.images().begin(), g.images().end()}));
  CHECK(as_set(a).size() > 10);
}

TEST_CASE("pi0 and pi1 against the oracle") {
  const Tree p2 = generators::path(2);
  const auto swap = verify_automorphism(p2, {1, 0});
  CHECK(pi0(swap, VertexVector::basis(0)) == VertexVector::basis(1));
  CHECK(pi1(p2, swap, EdgeVector::basis(0)) == EdgeVector::basis(0, -1.0));

  for (const Tree& tree : {generators::star(5), generators::regular(2, 2), generators::path(6)}) {
    const auto g = oracle::graph_of(tree);
    const auto group = full_automorphism_group(tree);
    for (const auto& h : group.elements) {
      CHECK(oracle::max_abs_diff(materialize(op_pi0(tree, h)), oracle::pi0(images(h))) == 0.0);
      CHECK(oracle::max_abs_diff(materialize(op_pi1(tree, h)), oracle::pi1(g, images(h))) == 0.0);
      CHECK(oracle::max_abs_diff(materialize(op_pi1(tree, h).adjoint()),
                                 oracle::conj_transpose(oracle::pi1(g, images(h)))) == 0.0);
    }
    const auto laws = identities::group_laws(tree, group.elements, identities::homomorphism_pairs(group.size()));
    CHECK(laws.pi0_homomorphism == 0.0);
    CHECK(laws.pi1_homomorphism == 0.0);
    CHECK(laws.pi0_unitary == 0.0);
    CHECK(laws.pi1_unitary == 0.0);
    CHECK(laws.s_q_commute == 0.0);
    CHECK(laws.b_equivariance == 0.0);
  }
}

TEST_CASE("pi0 preserves norms of random vectors") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  const Tree tree = generators::regular(2, 2);
  for (const auto& g : full_automorphism_group(tree).elements) {
    VertexVector v;
    for (Vertex x = 0; x < tree.vertex_count(); ++x) v.set(x, {gauss(rng), gauss(rng)});
    CHECK(std::abs(norm(pi0(g, v)) - norm(v)) <= 1e-12);
  }
}

TEST_CASE("F does not intertwine pi0 and pi1") {
  // F depends on the origin, so F π0(g) = π1(g) F fails once g moves x0.
  const Tree p3 = generators::path(3);
  const RootedTree r(p3, 0);
  const auto swap = verify_automorphism(p3, {2, 1, 0});
  const DenseMatrix lhs = materialize(op_F(r)) * materialize(op_pi0(p3, swap));
  const DenseMatrix rhs = materialize(op_pi1(p3, swap)) * materialize(op_F(r));
  CHECK(max_abs_diff(lhs, rhs) >= 1.0);
  // b, on the other hand, is equivariant
  CHECK(max_abs_diff(materialize(op_b(p3)) * materialize(op_pi1(p3, swap)),
                     materialize(op_pi0(p3, swap)) * materialize(op_b(p3))) == 0.0);
}

TEST_CASE("automorphism files") {
  const Tree p3 = generators::path(3);
  const auto gens = parse_automorphisms(p3, "# end swap\n2 1 0\n\n0 1 2  # identity\n");
  CHECK(gens.size() == 2);
  CHECK(gens[0](0) == 2);
  try {
    parse_automorphisms(p3, "2 1 0\n1 0 2\n");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("edge {1,2} maps to {0,2}") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_automorphisms(p3, "2 1 x\n"), ParseError);
  CHECK_THROWS_AS(parse_automorphisms(p3, "2 1\n"), ParseError);
  CHECK_THROWS_AS(load_automorphism_file(p3, "/no/such/file"), Error);
}
