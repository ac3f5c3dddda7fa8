#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracle.hpp"
#include "treerep/error.hpp"
#include "treerep/tree.hpp"

using namespace treerep;

namespace {

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_tree(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  FAIL("expected a parse error");
  return 0;
}

std::string parse_error_message(const std::string& text) {
  try {
    parse_tree(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

std::vector<Tree> corpus() {
  std::vector<Tree> trees{generators::path(1), generators::path(2), generators::path(7), generators::star(5),
                          generators::regular(2, 2), generators::regular(3, 2)};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) trees.push_back(generators::random(5 + 13 * seed, seed));
  return trees;
}

}  // namespace

TEST_CASE("parse the smallest trees") {
  const Tree p2 = parse_tree("tree v=2\n0 1");
  CHECK(p2.vertex_count() == 2);
  CHECK(p2.edge_count() == 1);

  const Tree p3 = parse_tree("# a path\ntree v=3\n0 1   # first\n\n1 2\n");
  CHECK(p3.edge_count() == 2);
  CHECK(p3.adjacent(0, 1));
  CHECK(p3.adjacent(2, 1));
  CHECK_FALSE(p3.adjacent(0, 2));
  CHECK(p3.edge(0) == Edge{0, 1});
  CHECK(p3.edge(1) == Edge{1, 2});
}

TEST_CASE("parse errors carry the offending line") {
  CHECK(parse_error_line("tree v=3\n0 1\n0 2\n1 2") == 4);
  CHECK(parse_error_message("tree v=3\n0 1\n0 2\n1 2").find("cycle detected") != std::string::npos);
  CHECK(parse_error_line("tree v=3\n0 1\n1 7") == 3);
  CHECK(parse_error_message("tree v=3\n0 1\n1 7").find("out of range") != std::string::npos);
  CHECK(parse_error_line("tree v=3\n0 1 2\n1 2") == 2);
  CHECK(parse_error_line("tree v=2\n0 x") == 2);
  CHECK(parse_error_line("0 1") == 1);
  CHECK(parse_error_line("tree v=4\n0 1\n2 3") == 3);
  CHECK(parse_error_message("tree v=4\n0 1\n2 3").find("disconnected") != std::string::npos);
  CHECK(parse_error_line("tree v=2\n1 1") == 2);
  CHECK(parse_error_line("tree v=zero\n") == 1);
}

TEST_CASE("constructor rejects non-trees") {
  CHECK_THROWS_AS(Tree(3, {{0, 1}}), Error);
  CHECK_THROWS_AS(Tree(3, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(Tree(2, {{0, 2}}), Error);
  CHECK_THROWS_AS(Tree(0, {}), Error);
  CHECK(Tree(1, {}).vertex_count() == 1);
}

TEST_CASE("rooting examples") {
  const Tree p3 = generators::path(3);
  const RootedTree r0(p3, 0);
  CHECK_FALSE(r0.parent(0).has_value());
  CHECK(r0.parent(1) == 0u);
  CHECK(r0.parent(2) == 1u);
  CHECK(r0.depth(2) == 2);

  const RootedTree r1 = root_at(p3, 1);
  CHECK(r1.parent(0) == 1u);
  CHECK_FALSE(r1.parent(1).has_value());
  CHECK(r1.parent(2) == 1u);
  CHECK(r1.depth(0) == 1);
  CHECK(r1.depth(1) == 0);

  const RootedTree star(generators::star(4), 1);
  CHECK_FALSE(star.parent(1).has_value());
  CHECK(star.parent(0) == 1u);
  CHECK(star.parent(2) == 0u);
  CHECK(star.parent(3) == 0u);

  CHECK_THROWS_AS(RootedTree(p3, 3), Error);
}

TEST_CASE("paths, distances and q") {
  const Tree p3 = generators::path(3);
  CHECK(path(p3, 0, 2) == std::vector<Vertex>{0, 1, 2});
  CHECK(path(p3, 1, 1) == std::vector<Vertex>{1});
  CHECK(distance(p3, 0, 2) == 2);
  const Tree star = generators::star(4);
  CHECK(path(star, 1, 2) == std::vector<Vertex>{1, 0, 2});
  CHECK(distance(star, 1, 3) == 2);

  const RootedTree rp(p3, 0);
  CHECK(rp.q(1) == 1);
  CHECK(rp.q(0) == 0);
  CHECK(RootedTree(star, 2).q(0) == 2);
}

TEST_CASE("distances agree with the Floyd-Warshall oracle") {
  for (const Tree& tree : corpus()) {
    const auto g = oracle::graph_of(tree);
    const auto table = distance_table(tree);
    for (Vertex x = 0; x < tree.vertex_count(); ++x) {
      for (Vertex y = 0; y < tree.vertex_count(); ++y) {
        REQUIRE(table[x * tree.vertex_count() + y] == static_cast<std::size_t>(g.dist[x][y]));
        const auto p = path(tree, x, y);
        REQUIRE(p.size() == static_cast<std::size_t>(g.dist[x][y]) + 1);
        for (std::size_t i = 0; i + 1 < p.size(); ++i) REQUIRE(tree.adjacent(p[i], p[i + 1]));
        // triangle equality along the geodesic
        for (Vertex z : p) REQUIRE(g.dist[x][y] == g.dist[x][z] + g.dist[z][y]);
      }
    }
  }
}

TEST_CASE("parent map matches the oracle for several origins") {
  for (const Tree& tree : corpus()) {
    const auto g = oracle::graph_of(tree);
    for (Vertex x0 : {Vertex{0}, static_cast<Vertex>(tree.vertex_count() / 2),
                      static_cast<Vertex>(tree.vertex_count() - 1)}) {
      const RootedTree rooted(tree, x0);
      for (Vertex x = 0; x < tree.vertex_count(); ++x) {
        const int p = oracle::parent(g, static_cast<int>(x0), static_cast<int>(x));
        if (p < 0) {
          CHECK_FALSE(rooted.parent(x).has_value());
        } else {
          REQUIRE(rooted.parent(x) == static_cast<Vertex>(p));
          const auto geodesic = path(tree, x0, x);
          CHECK(geodesic[geodesic.size() - 2] == static_cast<Vertex>(p));
        }
        CHECK(rooted.depth(x) == static_cast<std::size_t>(g.dist[x0][x]));
      }
      CHECK(rooted.bfs_order().size() == tree.vertex_count());
      CHECK(rooted.bfs_order()[0] == x0);
    }
  }
}

TEST_CASE("generators") {
  CHECK(generators::path(5).edge_count() == 4);
  CHECK(generators::star(6).degree(0) == 5);
  CHECK(generators::regular(2, 3).vertex_count() == 22);
  CHECK(generators::regular(2, 4).vertex_count() == 46);
  CHECK(generators::regular(3, 3).vertex_count() == 53);
  const Tree reg = generators::regular(3, 2);
  CHECK(reg.degree(0) == 4);
  for (Vertex x = 1; x < reg.vertex_count(); ++x) CHECK((reg.degree(x) == 4 || reg.degree(x) == 1));

  // Same seed, same tree; different seed, (almost surely) a different one.
  CHECK(serialize_tree(generators::random(40, 3)) == serialize_tree(generators::random(40, 3)));
  CHECK(serialize_tree(generators::random(40, 3)) != serialize_tree(generators::random(40, 4)));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Tree t = generators::random(1 + seed * 4, seed);
    CHECK(t.vertex_count() == 1 + seed * 4);
  }
}

TEST_CASE("tree specs and file round trip") {
  CHECK(tree_from_spec("path:4").vertex_count() == 4);
  CHECK(tree_from_spec("star:5").degree(0) == 4);
  CHECK(tree_from_spec("regular:2,3").vertex_count() == 22);
  CHECK(tree_from_spec("random:30,9").vertex_count() == 30);
  CHECK_THROWS_AS(tree_from_spec("path:x"), Error);
  CHECK_THROWS_AS(tree_from_spec("regular:2"), Error);
  CHECK_THROWS_AS(tree_from_spec("/definitely/not/here.tree"), Error);

  const Tree original = generators::random(25, 11);
  const Tree again = parse_tree(serialize_tree(original));
  CHECK(serialize_tree(again) == serialize_tree(original));

  const auto file = std::filesystem::temp_directory_path() / "treerep_roundtrip.tree";
  std::ofstream(file) << serialize_tree(original);
  CHECK(serialize_tree(tree_from_spec(file.string())) == serialize_tree(original));
  std::filesystem::remove(file);
}

TEST_CASE("edge ids") {
  const Tree star = generators::star(4);
  CHECK(star.edge_id(0, 2) == star.edge_id(2, 0));
  CHECK(star.edge_id(0, 2).has_value());
  CHECK_FALSE(star.edge_id(1, 2).has_value());
  for (EdgeId e = 0; e < star.edge_count(); ++e) CHECK(star.edge_id(star.edge(e).low, star.edge(e).high) == e);
}
