#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "treerep/spaces.hpp"

namespace treerep {

// Largest dimension the dense oracle will allocate.
inline constexpr std::size_t kMaxDenseDimension = 10000;

/// Row-major complex matrix. Used as the brute-force oracle representation of
/// every operator, so it favours clarity over storage tricks.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Complex>& data() const noexcept { return data_; }
  Complex* raw() noexcept { return data_.data(); }

  DenseMatrix adjoint() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(Complex s);
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(Complex s, DenseMatrix a) { return a *= s; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// Matrix product. Rows are distributed over OpenMP threads and exact zeros in
// the left factor are skipped, so products with sparse factors stay cheap.
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
// Plain triple loop kept as the reference for multiply().
DenseMatrix multiply_serial(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

double max_abs(const DenseMatrix& a);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

// Largest singular value (dense SVD).
double spectral_norm(const DenseMatrix& a);
std::vector<double> singular_values(const DenseMatrix& a);
// Count of singular values strictly above `threshold`.
std::size_t numerical_rank(const DenseMatrix& a, double threshold);
// LU inverse. Test oracle only; the library never inverts matrices generically.
DenseMatrix inverse(const DenseMatrix& a);

// Restriction to the given rows and columns (in the given order).
DenseMatrix submatrix(const DenseMatrix& a, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols);

// One row per line, entries in `re+imi` form, comma separated.
std::string to_csv(const DenseMatrix& a);

}  // namespace treerep
