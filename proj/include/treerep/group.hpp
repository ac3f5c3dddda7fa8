#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treerep/operators.hpp"
#include "treerep/spaces.hpp"
#include "treerep/tree.hpp"

namespace treerep {

/// Edge-preserving vertex permutation, images[x] = g·x.
class Automorphism {
 public:
  static Automorphism identity(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  Vertex operator()(Vertex x) const { return images_.at(x); }
  std::span<const Vertex> images() const noexcept { return images_; }

  Automorphism inverse() const;
  bool is_identity() const;

  // (g * h)(x) = g(h(x))
  friend Automorphism operator*(const Automorphism& g, const Automorphism& h);
  friend bool operator==(const Automorphism&, const Automorphism&) = default;
  friend auto operator<=>(const Automorphism&, const Automorphism&) = default;

 private:
  friend Automorphism verify_automorphism(const Tree&, std::vector<Vertex>);
  explicit Automorphism(std::vector<Vertex> images) : images_(std::move(images)) {}
  std::vector<Vertex> images_;
};

// Throws treerep::Error naming the first violated edge or the repeated image.
Automorphism verify_automorphism(const Tree& tree, std::vector<Vertex> images);

inline constexpr std::size_t kDefaultClosureCap = 20000;

struct GroupClosure {
  std::vector<Automorphism> elements;  // elements[0] is the identity
  std::vector<std::size_t> generator_indices;
  bool complete = false;

  std::size_t size() const noexcept { return elements.size(); }
};

// Breadth-first closure under right multiplication by the generators. Stops
// with complete = false, keeping `cap` elements, when the group is larger.
GroupClosure close_group(const Tree& tree, const std::vector<Automorphism>& generators,
                         std::size_t cap = kDefaultClosureCap);

// Every automorphism of the tree by backtracking: vertices are assigned in BFS
// order so each image must be an unused, equal-degree neighbour of the image of
// the BFS parent. complete = false when the element count exceeds `cap`.
GroupClosure full_automorphism_group(const Tree& tree, std::size_t cap = kDefaultClosureCap);

// Random automorphisms by randomized backtracking, for groups beyond the cap.
std::vector<Automorphism> sample_automorphisms(const Tree& tree, std::size_t count, std::uint64_t seed);

// One permutation per line, `#` comments.
std::vector<Automorphism> parse_automorphisms(const Tree& tree, std::string_view text);
std::vector<Automorphism> load_automorphism_file(const Tree& tree, const std::string& file_name);

// π0(g) δx = δ_{gx}
VertexVector pi0(const Automorphism& g, const VertexVector& v);
// π1(g) ε_{(u,v)} = δ_{(gu,gv)}, signed by canonical orientation.
EdgeVector pi1(const Tree& tree, const Automorphism& g, const EdgeVector& w);

VertexOperator op_pi0(const Tree& tree, const Automorphism& g);
LinearOperator<EdgeSpace, EdgeSpace> op_pi1(const Tree& tree, const Automorphism& g);

}  // namespace treerep
