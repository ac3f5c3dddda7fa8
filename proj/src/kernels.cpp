#include "treerep/kernels.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "treerep/error.hpp"
#include "treerep/operators.hpp"

namespace treerep {

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::distance:
      return "distance";
    case KernelKind::exp_t:
      return "exp";
    case KernelKind::gram_t:
      return "gram";
  }
  return "unknown";
}

namespace {

void require_open_unit(double t) {
  if (!(t > 0.0 && t < 1.0)) throw Error("kernel parameter t = " + format_real(t) + " outside (0, 1)");
}

}  // namespace

KernelMatrix distance_kernel(const Tree& tree) {
  const auto table = distance_table(tree);
  KernelMatrix k{KernelKind::distance, tree.vertex_count(), {}};
  k.entries.assign(table.begin(), table.end());
  return k;
}

KernelMatrix exp_kernel(const Tree& tree, double t) {
  require_open_unit(t);
  const auto table = distance_table(tree);
  KernelMatrix k{KernelKind::exp_t, tree.vertex_count(), {}};
  k.entries.reserve(table.size());
  for (std::size_t d : table) k.entries.push_back(std::pow(t, static_cast<double>(d)));
  return k;
}

KernelMatrix gram_kernel(const RootedTree& rooted, double t) {
  require_open_unit(t);
  const DenseMatrix inv = materialize(op_T_inverse(rooted, t));
  const DenseMatrix gram = inv.adjoint() * inv;
  const std::size_t n = rooted.vertex_count();
  KernelMatrix k{KernelKind::gram_t, n, std::vector<double>(n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k.entries[i * n + j] = (1.0 - t * t) * gram(i, j).real();
  return k;
}

std::string kernel_to_csv(const KernelMatrix& k) {
  std::string out;
  for (std::size_t i = 0; i < k.size; ++i) {
    for (std::size_t j = 0; j < k.size; ++j) {
      if (j) out += ',';
      out += format_real(k(i, j));
    }
    out += '\n';
  }
  return out;
}

double quadratic_form(const KernelMatrix& k, const std::vector<double>& xi) {
  double sum = 0.0;
  for (std::size_t i = 0; i < k.size; ++i) {
    if (xi[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < k.size; ++j) row += k(i, j) * xi[j];
    sum += xi[i] * row;
  }
  return sum;
}

CndReport cnd_check(const KernelMatrix& k, std::uint64_t seed, std::size_t samples) {
  const std::size_t n = k.size;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (k(i, j) != k(j, i)) throw Error("kernel is not symmetric");

  CndReport report;
  report.samples = samples;
  // e_i - e_0: K(i,i) + K(0,0) - 2K(i,0), no rounding involved.
  for (std::size_t i = 1; i < n; ++i) {
    const double form = k(i, i) + k(0, 0) - 2.0 * k(i, 0);
    report.basis_max = i == 1 ? form : std::max(report.basis_max, form);
  }

  // Draw all vectors up front so the result does not depend on the thread count.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<std::vector<double>> draws(samples, std::vector<double>(n));
  for (auto& xi : draws) {
    double mean = 0.0;
    for (auto& x : xi) mean += (x = gauss(rng));
    mean /= static_cast<double>(std::max<std::size_t>(n, 1));
    for (auto& x : xi) x -= mean;
  }
  std::vector<double> forms(samples);
  const auto count = static_cast<std::ptrdiff_t>(samples);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < count; ++s) forms[s] = quadratic_form(k, draws[s]);
  for (std::size_t s = 0; s < samples; ++s) report.random_max = s == 0 ? forms[s] : std::max(report.random_max, forms[s]);

  report.max_form = std::max(report.basis_max, report.random_max);
  return report;
}

PsdReport psd_check(const KernelMatrix& k) {
  Eigen::MatrixXd m(k.size, k.size);
  for (std::size_t i = 0; i < k.size; ++i)
    for (std::size_t j = 0; j < k.size; ++j) m(i, j) = k(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("symmetric eigenvalue solver failed");
  return {k.size == 0 ? 0.0 : solver.eigenvalues().minCoeff()};
}

GramReport gram_identity_check(const RootedTree& rooted, double t) {
  const Tree& tree = rooted.tree();
  const std::size_t n = tree.vertex_count();
  const KernelMatrix expk = exp_kernel(tree, t);

  DenseMatrix kernel(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) kernel(i, j) = expk(i, j);
  // T_t T_t* = 1 - tS + t²Q
  const DenseMatrix ttstar = DenseMatrix::identity(n) - t * materialize(op_S(tree)) + (t * t) * materialize(op_Q(tree));
  GramReport report;
  report.operator_residual = max_abs_diff(ttstar * kernel, (1.0 - t * t) * DenseMatrix::identity(n));

  const KernelMatrix gram = gram_kernel(rooted, t);
  for (std::size_t k = 0; k < gram.entries.size(); ++k) {
    report.gram_residual = std::max(report.gram_residual, std::abs(gram.entries[k] - expk.entries[k]));
  }
  return report;
}

Cocycle cocycle(const Tree& tree, Vertex x, Vertex y) {
  const auto geodesic = path(tree, x, y);
  Cocycle c{x, y, {}};
  for (std::size_t i = 0; i + 1 < geodesic.size(); ++i) c.value += delta_edge(tree, geodesic[i], geodesic[i + 1]);
  return c;
}

CocycleReport cocycle_check(const RootedTree& rooted, Vertex x, Vertex y) {
  const Tree& tree = rooted.tree();
  const Cocycle c = cocycle(tree, x, y);
  CocycleReport report;
  for (const auto& [e, coefficient] : c.value) report.norm_squared += std::norm(coefficient);
  report.distance = distance(tree, x, y);
  const VertexVector endpoints = delta_vertex(tree, x) - delta_vertex(tree, y);
  report.coboundary_residual = norm(op_b(tree).apply(c.value) - endpoints);
  report.closed_form_residual = norm(c.value - op_F(rooted).apply(resolvent(rooted, 1.0, endpoints)));
  return report;
}

std::string format_cocycle(const Tree& tree, const Cocycle& c) {
  std::string out;
  for (const auto& [e, coefficient] : c.value) {
    const Edge& edge = tree.edge(static_cast<EdgeId>(e));
    out += coefficient.real() > 0 ? "+ " : "- ";
    out += std::to_string(edge.low) + "-" + std::to_string(edge.high) + "\n";
  }
  return out;
}

}  // namespace treerep
