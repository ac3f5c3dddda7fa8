#include "treerep/operators.hpp"

#include <cmath>
#include <random>

namespace treerep {

namespace {

void require_t(double t, bool allow_one) {
  if (!(t >= 0.0) || t > 1.0 || (!allow_one && t == 1.0)) {
    throw Error("parameter t = " + format_real(t) + " outside " + (allow_one ? "[0, 1]" : "[0, 1)"));
  }
}

// Sign of δ(x, y) relative to the canonical orientation of {x, y}.
double orientation(Vertex x, Vertex y) { return x < y ? 1.0 : -1.0; }

VertexVector apply_P(const RootedTree& rooted, const VertexVector& v) {
  VertexVector out;
  for (const auto& [x, c] : v) {
    if (auto p = rooted.parent(static_cast<Vertex>(x))) out.add_to(*p, c);
  }
  return out;
}

VertexVector apply_Pstar(const RootedTree& rooted, const VertexVector& v) {
  VertexVector out;
  for (const auto& [x, c] : v) {
    const auto p = rooted.parent(static_cast<Vertex>(x));
    for (Vertex y : rooted.tree().neighbors(static_cast<Vertex>(x))) {
      if (y != p) out.add_to(y, c);
    }
  }
  return out;
}

// (1 - z̄P*)⁻¹ w: out_x = w_x + z̄ · out_{x'}, evaluated top-down in BFS order.
VertexVector adjoint_resolvent(const RootedTree& rooted, Complex z, const VertexVector& w) {
  if (w.empty()) return {};
  const Complex zbar = std::conj(z);
  std::vector<Complex> acc(rooted.vertex_count());
  VertexVector out;
  for (Vertex x : rooted.bfs_order()) {
    Complex value = w[x];
    if (auto p = rooted.parent(x)) value += zbar * acc[*p];
    acc[x] = value;
    out.set(x, value);
  }
  return out;
}

}  // namespace

VertexOperator op_S(const Tree& tree) {
  auto apply = [tree](const VertexVector& v) {
    VertexVector out;
    for (const auto& [x, c] : v)
      for (Vertex y : tree.neighbors(static_cast<Vertex>(x))) out.add_to(y, c);
    return out;
  };
  return {"S", tree.vertex_count(), tree.vertex_count(), apply, apply};
}

VertexOperator op_Q(const Tree& tree) {
  auto apply = [tree](const VertexVector& v) {
    VertexVector out;
    for (const auto& [x, c] : v) out.add_to(x, static_cast<double>(static_cast<int>(tree.degree(static_cast<Vertex>(x))) - 1) * c);
    return out;
  };
  return {"Q", tree.vertex_count(), tree.vertex_count(), apply, apply};
}

VertexOperator op_P(const RootedTree& rooted) {
  return {"P", rooted.vertex_count(), rooted.vertex_count(),
          [rooted](const VertexVector& v) { return apply_P(rooted, v); },
          [rooted](const VertexVector& v) { return apply_Pstar(rooted, v); }};
}

VertexOperator op_Pstar(const RootedTree& rooted) { return op_P(rooted).adjoint(); }

VertexOperator op_p0(const RootedTree& rooted) {
  const Vertex x0 = rooted.origin();
  auto apply = [x0](const VertexVector& v) { return VertexVector::basis(x0, v[x0]); };
  return {"p0", rooted.vertex_count(), rooted.vertex_count(), apply, apply};
}

VertexOperator op_T(const RootedTree& rooted, double t) {
  require_t(t, true);
  const double alpha = std::sqrt(1.0 - t * t) - 1.0;
  const Vertex x0 = rooted.origin();
  return {"T", rooted.vertex_count(), rooted.vertex_count(),
          [=](const VertexVector& v) {
            VertexVector out = v - t * apply_P(rooted, v);
            out.add_to(x0, alpha * v[x0]);
            return out;
          },
          [=](const VertexVector& v) {
            VertexVector out = v - t * apply_Pstar(rooted, v);
            out.add_to(x0, alpha * v[x0]);
            return out;
          }};
}

VertexOperator op_T_inverse(const RootedTree& rooted, double t) {
  require_t(t, false);
  // 1 + αp0 with α = sqrt(1-t²) - 1 has inverse 1 + βp0, β = (1-t²)^{-1/2} - 1.
  const double beta = 1.0 / std::sqrt(1.0 - t * t) - 1.0;
  const Vertex x0 = rooted.origin();
  return {"Tinv", rooted.vertex_count(), rooted.vertex_count(),
          [=](const VertexVector& v) {
            VertexVector out = resolvent(rooted, t, v);
            out.add_to(x0, beta * out[x0]);
            return out;
          },
          [=](const VertexVector& v) {
            VertexVector scaled = v;
            scaled.add_to(x0, beta * v[x0]);
            return adjoint_resolvent(rooted, t, scaled);
          }};
}

VertexOperator op_u(const RootedTree& rooted, double t) {
  require_t(t, true);
  const double scale = std::sqrt(1.0 - t * t);
  const Vertex x0 = rooted.origin();
  auto apply = [=](const VertexVector& v) {
    VertexVector out = v;
    out.set(x0, scale * v[x0]);
    return out;
  };
  return {"u", rooted.vertex_count(), rooted.vertex_count(), apply, apply};
}

VertexOperator op_u_inverse(const RootedTree& rooted, double t) {
  require_t(t, false);
  const double scale = 1.0 / std::sqrt(1.0 - t * t);
  const Vertex x0 = rooted.origin();
  auto apply = [=](const VertexVector& v) {
    VertexVector out = v;
    out.set(x0, scale * v[x0]);
    return out;
  };
  return {"uinv", rooted.vertex_count(), rooted.vertex_count(), apply, apply};
}

VertexVector resolvent(const RootedTree& rooted, Complex z, const VertexVector& v) {
  VertexVector out;
  for (const auto& [x, c] : v) {
    // Walk x, x', x'', ..., x0 accumulating z^k.
    Complex weight = c;
    std::optional<Vertex> y = static_cast<Vertex>(x);
    while (y && weight != Complex{}) {
      out.add_to(*y, weight);
      weight *= z;
      y = rooted.parent(*y);
    }
  }
  return out;
}

VertexOperator op_resolvent(const RootedTree& rooted, Complex z) {
  return {"R", rooted.vertex_count(), rooted.vertex_count(),
          [=](const VertexVector& v) { return resolvent(rooted, z, v); },
          [=](const VertexVector& w) { return adjoint_resolvent(rooted, z, w); }};
}

LinearOperator<VertexSpace, EdgeSpace> op_F(const RootedTree& rooted) {
  const Tree tree = rooted.tree();
  auto apply = [=](const VertexVector& v) {
    EdgeVector out;
    for (const auto& [x, c] : v) {
      const auto vx = static_cast<Vertex>(x);
      if (auto p = rooted.parent(vx)) out.add_to(*tree.edge_id(vx, *p), orientation(vx, *p) * c);
    }
    return out;
  };
  auto adjoint = [=](const EdgeVector& w) {
    VertexVector out;
    for (const auto& [e, c] : w) {
      const Edge& edge = tree.edge(static_cast<EdgeId>(e));
      // The child endpoint is the one whose parent is the other endpoint.
      const bool low_is_child = rooted.parent(edge.low) == edge.high;
      const Vertex child = low_is_child ? edge.low : edge.high;
      const Vertex parent = low_is_child ? edge.high : edge.low;
      out.add_to(child, orientation(child, parent) * c);
    }
    return out;
  };
  return {"F", tree.vertex_count(), tree.edge_count(), apply, adjoint};
}

LinearOperator<EdgeSpace, VertexSpace> op_Fstar(const RootedTree& rooted) { return op_F(rooted).adjoint(); }

LinearOperator<EdgeSpace, VertexSpace> op_b(const Tree& tree) {
  auto apply = [=](const EdgeVector& w) {
    VertexVector out;
    for (const auto& [e, c] : w) {
      const Edge& edge = tree.edge(static_cast<EdgeId>(e));
      out.add_to(edge.low, c);
      out.add_to(edge.high, -c);
    }
    return out;
  };
  auto adjoint = [=](const VertexVector& v) {
    EdgeVector out;
    for (const auto& [x, c] : v) {
      const auto vx = static_cast<Vertex>(x);
      for (Vertex y : tree.neighbors(vx)) out.add_to(*tree.edge_id(vx, y), orientation(vx, y) * c);
    }
    return out;
  };
  return {"b", tree.edge_count(), tree.vertex_count(), apply, adjoint};
}

double power_iteration_norm(std::size_t dimension,
                            const std::function<std::vector<Complex>(const std::vector<Complex>&)>& gram,
                            const PowerIterationOptions& options) {
  if (dimension == 0) return 0.0;
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  std::vector<Complex> x(dimension);
  for (auto& c : x) c = {gauss(rng), gauss(rng)};

  auto normalize = [](std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    s = std::sqrt(s);
    if (s > 0.0)
      for (auto& c : v) c /= s;
    return s;
  };
  normalize(x);

  double previous = -1.0;
  for (std::size_t iteration = 0; iteration < options.max_iterations; ++iteration) {
    std::vector<Complex> y = gram(x);
    // Rayleigh quotient <x, A*A x> with ||x|| = 1.
    double lambda = 0.0;
    for (std::size_t i = 0; i < dimension; ++i) lambda += std::real(std::conj(x[i]) * y[i]);
    if (normalize(y) == 0.0) return 0.0;
    if (previous >= 0.0 && std::abs(lambda - previous) <= options.relative_tolerance * lambda) {
      return std::sqrt(lambda);
    }
    previous = lambda;
    x = std::move(y);
  }
  throw NormDidNotConverge("power iteration did not converge in " + std::to_string(options.max_iterations) +
                           " iterations");
}

double power_iteration_norm(const DenseMatrix& a, const PowerIterationOptions& options) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const auto gram = [&](const std::vector<Complex>& x) {
    std::vector<Complex> ax(rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) ax[i] += a(i, j) * x[j];
    std::vector<Complex> y(cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) y[j] += std::conj(a(i, j)) * ax[i];
    return y;
  };
  return power_iteration_norm(cols, gram, options);
}

}  // namespace treerep
