#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "treerep/tree.hpp"

namespace treerep {

using Complex = std::complex<double>;

// Space tags. The vertex space is l2(X0); the edge space realizes the signed
// quotient l2(X1)^- with one orthonormal basis vector per unoriented edge.
struct VertexSpace {
  static constexpr const char* name = "vertex";
  static std::size_t dimension(const Tree& tree) { return tree.vertex_count(); }
};
struct EdgeSpace {
  static constexpr const char* name = "edge";
  static std::size_t dimension(const Tree& tree) { return tree.edge_count(); }
};

/// Finitely supported vector over the basis of `Space`, keyed by basis index.
/// Exact zeros are never stored.
template <typename Space>
class SparseVector {
 public:
  using space = Space;
  using Storage = std::map<std::size_t, Complex>;

  SparseVector() = default;

  static SparseVector basis(std::size_t index, Complex coefficient = 1.0) {
    SparseVector v;
    v.set(index, coefficient);
    return v;
  }

  Complex operator[](std::size_t index) const {
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? Complex{} : it->second;
  }

  void set(std::size_t index, Complex value) {
    if (value == Complex{}) {
      coeffs_.erase(index);
    } else {
      coeffs_[index] = value;
    }
  }

  void add_to(std::size_t index, Complex value) {
    auto [it, inserted] = coeffs_.try_emplace(index, value);
    if (!inserted) {
      it->second += value;
      if (it->second == Complex{}) coeffs_.erase(it);
    } else if (value == Complex{}) {
      coeffs_.erase(it);
    }
  }

  bool empty() const noexcept { return coeffs_.empty(); }
  std::size_t support_size() const noexcept { return coeffs_.size(); }
  auto begin() const noexcept { return coeffs_.begin(); }
  auto end() const noexcept { return coeffs_.end(); }

  SparseVector& operator+=(const SparseVector& other) {
    for (const auto& [i, c] : other) add_to(i, c);
    return *this;
  }
  SparseVector& operator-=(const SparseVector& other) {
    for (const auto& [i, c] : other) add_to(i, -c);
    return *this;
  }
  SparseVector& operator*=(Complex s) {
    if (s == Complex{}) {
      coeffs_.clear();
      return *this;
    }
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      it->second *= s;
      it = it->second == Complex{} ? coeffs_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(Complex s, SparseVector v) { return v *= s; }
  friend SparseVector operator-(SparseVector v) { return v *= -1.0; }
  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  Storage coeffs_;
};

using VertexVector = SparseVector<VertexSpace>;
using EdgeVector = SparseVector<EdgeSpace>;

// Conjugate-linear in the first argument.
template <typename Space>
Complex inner(const SparseVector<Space>& u, const SparseVector<Space>& v) {
  Complex sum{};
  for (const auto& [i, c] : u) sum += std::conj(c) * v[i];
  return sum;
}

template <typename Space>
double norm(const SparseVector<Space>& v) {
  double sum = 0.0;
  for (const auto& [i, c] : v) sum += std::norm(c);
  return std::sqrt(sum);
}

template <typename Space>
double max_abs_diff(const SparseVector<Space>& u, const SparseVector<Space>& v) {
  double worst = 0.0;
  for (const auto& [i, c] : u - v) worst = std::max(worst, std::abs(c));
  return worst;
}

VertexVector delta_vertex(const Tree& tree, Vertex x);
// +e for the canonical orientation (low, high), -e for the reverse.
// Throws when {x, y} is not an edge.
EdgeVector delta_edge(const Tree& tree, Vertex x, Vertex y);

// Literal format: `0:1 1:-0.5 2:0.3+0.4i`; edge vectors key by `u-v` with u < v.
VertexVector parse_vertex_vector(const Tree& tree, std::string_view text);
EdgeVector parse_edge_vector(const Tree& tree, std::string_view text);
std::string format_vertex_vector(const VertexVector& v);
std::string format_edge_vector(const Tree& tree, const EdgeVector& v);

// `re`, `re+imi`, `re-imi`, `imi`. Printed with 17 significant digits.
Complex parse_complex(std::string_view text);
std::string format_complex(Complex value);
std::string format_real(double value);

}  // namespace treerep
