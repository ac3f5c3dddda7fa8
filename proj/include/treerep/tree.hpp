#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treerep {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

// Unordered edge stored in canonical orientation (low id, high id).
struct Edge {
  Vertex low;
  Vertex high;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite tree on vertices 0..N-1.
///
/// A Tree is an immutable handle: copies share the same adjacency data, so
/// passing trees by value (and capturing them in operator closures) is cheap.
class Tree {
 public:
  // Validates connectivity and acyclicity. Throws treerep::Error otherwise.
  Tree(std::size_t vertex_count, std::vector<std::pair<Vertex, Vertex>> edges);

  std::size_t vertex_count() const noexcept { return data_->adjacency.size(); }
  std::size_t edge_count() const noexcept { return data_->edges.size(); }

  // Sorted neighbor list V(x).
  std::span<const Vertex> neighbors(Vertex x) const { return data_->adjacency.at(x); }
  std::size_t degree(Vertex x) const { return neighbors(x).size(); }

  // Canonical edges sorted lexicographically; EdgeId indexes this list.
  std::span<const Edge> edges() const noexcept { return data_->edges; }
  const Edge& edge(EdgeId e) const { return data_->edges.at(e); }

  bool adjacent(Vertex x, Vertex y) const;
  // Id of the canonical edge {x, y}; nullopt when x and y are not adjacent.
  std::optional<EdgeId> edge_id(Vertex x, Vertex y) const;

  bool contains(Vertex x) const noexcept { return x < vertex_count(); }

 private:
  struct Data {
    std::vector<std::vector<Vertex>> adjacency;
    std::vector<Edge> edges;
  };
  std::shared_ptr<const Data> data_;
};

/// A tree together with an origin x0 and the parent map x -> x'
/// (the neighbour of x one step closer to the origin).
class RootedTree {
 public:
  RootedTree(Tree tree, Vertex origin);

  const Tree& tree() const noexcept { return tree_; }
  Vertex origin() const noexcept { return origin_; }
  std::size_t vertex_count() const noexcept { return tree_.vertex_count(); }

  std::optional<Vertex> parent(Vertex x) const;
  std::size_t depth(Vertex x) const { return data_->depth.at(x); }
  std::size_t max_depth() const noexcept { return data_->max_depth; }
  // Vertices in breadth-first order from the origin.
  std::span<const Vertex> bfs_order() const noexcept { return data_->order; }

  // q_x = |V(x)| - 1. Origin independent; -1 only for the one-vertex tree.
  int q(Vertex x) const { return static_cast<int>(tree_.degree(x)) - 1; }

 private:
  static constexpr Vertex kNoParent = static_cast<Vertex>(-1);
  struct Data {
    std::vector<Vertex> parent;
    std::vector<std::size_t> depth;
    std::vector<Vertex> order;
    std::size_t max_depth = 0;
  };
  Tree tree_;
  Vertex origin_;
  std::shared_ptr<const Data> data_;
};

RootedTree root_at(const Tree& tree, Vertex origin);

// Geodesic x = v0, v1, ..., vn = y.
std::vector<Vertex> path(const Tree& tree, Vertex x, Vertex y);
std::size_t distance(const Tree& tree, Vertex x, Vertex y);
// All-pairs distances, row-major N x N. One BFS per source.
std::vector<std::size_t> distance_table(const Tree& tree);

// Tree file I/O:
//   # comment
//   tree v=N
//   u v        (exactly N-1 edge lines)
Tree parse_tree(std::string_view text);
std::string serialize_tree(const Tree& tree);
Tree load_tree_file(const std::string& file_name);

namespace generators {

Tree path(std::size_t n);
// Center 0 joined to leaves 1..n-1.
Tree star(std::size_t n);
// Truncated (q+1)-regular tree of radius r around vertex 0.
Tree regular(std::size_t q, std::size_t radius);
// Uniform labelled tree on n vertices from a seeded Pruefer sequence.
Tree random(std::size_t n, std::uint64_t seed);

}  // namespace generators

// `path:N`, `star:N`, `regular:q,r`, `random:N,seed`, or a tree file path.
Tree tree_from_spec(const std::string& spec);

}  // namespace treerep
