#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "treerep/dense.hpp"
#include "treerep/error.hpp"
#include "treerep/spaces.hpp"
#include "treerep/tree.hpp"

namespace treerep {

/// Linear map between the vertex and edge spaces of a fixed tree, given by
/// an applier and its adjoint.
template <typename Domain, typename Codomain>
class LinearOperator {
 public:
  using In = SparseVector<Domain>;
  using Out = SparseVector<Codomain>;
  using Apply = std::function<Out(const In&)>;
  using AdjointApply = std::function<In(const Out&)>;

  LinearOperator(std::string name, std::size_t domain_dimension, std::size_t codomain_dimension, Apply apply,
                 AdjointApply adjoint_apply)
      : name_(std::move(name)),
        domain_dimension_(domain_dimension),
        codomain_dimension_(codomain_dimension),
        apply_(std::move(apply)),
        adjoint_apply_(std::move(adjoint_apply)) {}

  const std::string& name() const noexcept { return name_; }
  std::size_t domain_dimension() const noexcept { return domain_dimension_; }
  std::size_t codomain_dimension() const noexcept { return codomain_dimension_; }

  Out apply(const In& v) const { return apply_(v); }
  Out operator()(const In& v) const { return apply_(v); }
  In adjoint_apply(const Out& v) const { return adjoint_apply_(v); }

  LinearOperator<Codomain, Domain> adjoint() const {
    return {name_ + "*", codomain_dimension_, domain_dimension_, adjoint_apply_, apply_};
  }

 private:
  std::string name_;
  std::size_t domain_dimension_;
  std::size_t codomain_dimension_;
  Apply apply_;
  AdjointApply adjoint_apply_;
};

using VertexOperator = LinearOperator<VertexSpace, VertexSpace>;

template <typename Space>
LinearOperator<Space, Space> identity_operator(std::size_t dimension) {
  auto id = [](const SparseVector<Space>& v) { return v; };
  return {"1", dimension, dimension, id, id};
}

// a ∘ b
template <typename A, typename B, typename C>
LinearOperator<A, C> compose(const LinearOperator<B, C>& a, const LinearOperator<A, B>& b) {
  if (a.domain_dimension() != b.codomain_dimension()) throw Error("composition dimension mismatch");
  return {a.name() + b.name(), b.domain_dimension(), a.codomain_dimension(),
          [a, b](const SparseVector<A>& v) { return a.apply(b.apply(v)); },
          [a, b](const SparseVector<C>& w) { return b.adjoint_apply(a.adjoint_apply(w)); }};
}

// sa·a + sb·b
template <typename A, typename B>
LinearOperator<A, B> combine(Complex sa, const LinearOperator<A, B>& a, Complex sb, const LinearOperator<A, B>& b) {
  if (a.domain_dimension() != b.domain_dimension() || a.codomain_dimension() != b.codomain_dimension()) {
    throw Error("sum of operators with different shapes");
  }
  return {"(" + a.name() + "+" + b.name() + ")", a.domain_dimension(), a.codomain_dimension(),
          [=](const SparseVector<A>& v) { return sa * a.apply(v) + sb * b.apply(v); },
          [=](const SparseVector<B>& w) {
            return std::conj(sa) * a.adjoint_apply(w) + std::conj(sb) * b.adjoint_apply(w);
          }};
}

template <typename A, typename B>
LinearOperator<A, B> operator+(const LinearOperator<A, B>& a, const LinearOperator<A, B>& b) {
  return combine<A, B>(1.0, a, 1.0, b);
}
template <typename A, typename B>
LinearOperator<A, B> operator-(const LinearOperator<A, B>& a, const LinearOperator<A, B>& b) {
  return combine<A, B>(1.0, a, -1.0, b);
}
template <typename A, typename B, typename C>
LinearOperator<A, C> operator*(const LinearOperator<B, C>& a, const LinearOperator<A, B>& b) {
  return compose(a, b);
}

// --- Operators of the tree calculus -------------------------------------

// Adjacency: S δx = Σ_{y∈V(x)} δy.
VertexOperator op_S(const Tree& tree);
// Diagonal q_x = deg(x) - 1.
VertexOperator op_Q(const Tree& tree);
// P δx0 = 0, P δx = δx' (shift toward the origin).
VertexOperator op_P(const RootedTree& rooted);
VertexOperator op_Pstar(const RootedTree& rooted);
// Orthogonal projection onto δx0.
VertexOperator op_p0(const RootedTree& rooted);
// T_t = 1 - tP + (sqrt(1-t²) - 1) p0, 0 <= t <= 1.
VertexOperator op_T(const RootedTree& rooted, double t);
// T_t⁻¹ = (1 + ((1-t²)^{-1/2} - 1) p0) ∘ (1 - tP)⁻¹, 0 <= t < 1.
VertexOperator op_T_inverse(const RootedTree& rooted, double t);
// u_t = (1 - p0) + sqrt(1-t²) p0 and its inverse.
VertexOperator op_u(const RootedTree& rooted, double t);
VertexOperator op_u_inverse(const RootedTree& rooted, double t);

// (1 - zP)⁻¹ v by walking each δx up to the origin:
//   (1 - zP)⁻¹ δx = Σ_{y∈[x0,x]} z^{d(y,x)} δy.
// Any z is legal because P is nilpotent on a finite tree.
VertexVector resolvent(const RootedTree& rooted, Complex z, const VertexVector& v);
VertexOperator op_resolvent(const RootedTree& rooted, Complex z);

// F δx0 = 0, F δx = δ(x,x'): each vertex to the edge joining it to its parent.
LinearOperator<VertexSpace, EdgeSpace> op_F(const RootedTree& rooted);
LinearOperator<EdgeSpace, VertexSpace> op_Fstar(const RootedTree& rooted);

// Coboundary with the sign that makes 1 - P = bF + p0 hold:
//   b δ(x,y) = δx - δy, so b ε_{uv} = δu - δv for u < v.
LinearOperator<EdgeSpace, VertexSpace> op_b(const Tree& tree);

// --- Dense oracle and norms ----------------------------------------------

// Column j is op(e_j). Columns are computed in parallel with OpenMP.
template <typename A, typename B>
DenseMatrix materialize(const LinearOperator<A, B>& op) {
  const std::size_t rows = op.codomain_dimension();
  const std::size_t cols = op.domain_dimension();
  DenseMatrix m(rows, cols);
  Complex* out = m.raw();
  const auto n = static_cast<std::ptrdiff_t>(cols);
  bool out_of_range = false;
#pragma omp parallel for schedule(dynamic, 4) if (cols > 16) reduction(|| : out_of_range)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto column = op.apply(SparseVector<A>::basis(static_cast<std::size_t>(j)));
    for (const auto& [i, c] : column) {
      if (i >= rows) {
        out_of_range = true;
        continue;
      }
      out[i * cols + static_cast<std::size_t>(j)] = c;
    }
  }
  if (out_of_range) throw Error("operator " + op.name() + " produced an out-of-range index");
  return m;
}

// Reference for materialize(): one column at a time.
template <typename A, typename B>
DenseMatrix materialize_serial(const LinearOperator<A, B>& op) {
  DenseMatrix m(op.codomain_dimension(), op.domain_dimension());
  for (std::size_t j = 0; j < op.domain_dimension(); ++j) {
    for (const auto& [i, c] : op.apply(SparseVector<A>::basis(j))) m(i, j) = c;
  }
  return m;
}

struct PowerIterationOptions {
  double relative_tolerance = 1e-10;
  std::size_t max_iterations = 10000;
  std::uint64_t seed = 0x5EED;
};

// Spectral norm by power iteration on A*A. Throws NormDidNotConverge when the
// iteration budget runs out.
class NormDidNotConverge : public Error {
 public:
  using Error::Error;
};

template <typename A, typename B>
double op_norm(const LinearOperator<A, B>& op, const PowerIterationOptions& options = {});

// Type-erased core of op_norm(): `gram` applies A*A to a dense vector.
double power_iteration_norm(std::size_t dimension,
                            const std::function<std::vector<Complex>(const std::vector<Complex>&)>& gram,
                            const PowerIterationOptions& options);

// Same iteration on an already materialized matrix.
double power_iteration_norm(const DenseMatrix& a, const PowerIterationOptions& options = {});

template <typename A, typename B>
double op_norm(const LinearOperator<A, B>& op, const PowerIterationOptions& options) {
  const auto gram = [&op](const std::vector<Complex>& x) {
    SparseVector<A> v;
    for (std::size_t i = 0; i < x.size(); ++i) v.set(i, x[i]);
    const auto w = op.adjoint_apply(op.apply(v));
    std::vector<Complex> y(x.size());
    for (const auto& [i, c] : w) y[i] = c;
    return y;
  };
  return power_iteration_norm(op.domain_dimension(), gram, options);
}

}  // namespace treerep
