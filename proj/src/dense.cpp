#include "treerep/dense.hpp"

#include <Eigen/Dense>
#include <algorithm>

#include "treerep/error.hpp"

namespace treerep {

namespace {

void require_dimension(std::size_t rows, std::size_t cols) {
  if (rows > kMaxDenseDimension || cols > kMaxDenseDimension) {
    throw Error("dense dimension " + std::to_string(std::max(rows, cols)) + " exceeds limit " +
                std::to_string(kMaxDenseDimension));
  }
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix shape mismatch");
}

Eigen::MatrixXcd to_eigen(const DenseMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  require_dimension(rows, cols);
  data_.assign(rows * cols, Complex{});
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(Complex s) {
  for (auto& c : data_) c *= s;
  return *this;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix product dimension mismatch");
  const std::size_t n = a.rows();
  const std::size_t inner = a.cols();
  const std::size_t m = b.cols();
  DenseMatrix c(n, m);
  const Complex* pa = a.data().data();
  const Complex* pb = b.data().data();
  Complex* pc = c.raw();
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n * inner * m > 32768)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    Complex* row = pc + i * m;
    for (std::size_t k = 0; k < inner; ++k) {
      const Complex aik = pa[i * inner + k];
      if (aik == Complex{}) continue;
      const Complex* brow = pb + k * m;
      for (std::size_t j = 0; j < m; ++j) row[j] += aik * brow[j];
    }
  }
  return c;
}

DenseMatrix multiply_serial(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix product dimension mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex sum{};
      for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
      c(i, j) = sum;
    }
  return c;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) { return multiply(a, b); }

double max_abs(const DenseMatrix& a) {
  double worst = 0.0;
  for (const auto& c : a.data()) worst = std::max(worst, std::abs(c));
  return worst;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

std::vector<double> singular_values(const DenseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

double spectral_norm(const DenseMatrix& a) {
  const auto s = singular_values(a);
  return s.empty() ? 0.0 : s.front();
}

std::size_t numerical_rank(const DenseMatrix& a, double threshold) {
  const auto s = singular_values(a);
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](double v) { return v > threshold; }));
}

DenseMatrix inverse(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw Error("inverse of a non-square matrix");
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(to_eigen(a));
  if (!lu.isInvertible()) throw Error("matrix is singular");
  const Eigen::MatrixXcd inv = lu.inverse();
  DenseMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = inv(i, j);
  return m;
}

DenseMatrix submatrix(const DenseMatrix& a, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) {
  DenseMatrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = a(rows[i], cols[j]);
  return m;
}

std::string to_csv(const DenseMatrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ',';
      out += format_complex(a(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace treerep
