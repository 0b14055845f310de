#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "fairdisc/rational.hpp"

namespace fairdisc {

// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& init = T(0))
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, init) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::span<T> row(int i) { return {data_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)}; }
  std::span<const T> row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)};
  }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  std::vector<T> row_sums() const {
    std::vector<T> out(rows_, T(0));
    for (int i = 0; i < rows_; ++i) {
      for (const T& v : row(i)) out[i] += v;
    }
    return out;
  }

  bool operator==(const Matrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using RationalMatrix = Matrix<Rational>;

inline RealMatrix to_real(const RationalMatrix& M) {
  RealMatrix out(M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) out.at(i, j) = to_double(M.at(i, j));
  }
  return out;
}

inline const RealMatrix& to_real(const RealMatrix& M) { return M; }

template <class T>
Matrix<T> multiply(const Matrix<T>& A, const Matrix<T>& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("matrix product shape mismatch");
  Matrix<T> out(A.rows(), B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    for (int l = 0; l < A.cols(); ++l) {
      const T& a = A.at(i, l);
      if (a == T(0)) continue;
      for (int j = 0; j < B.cols(); ++j) out.at(i, j) += a * B.at(l, j);
    }
  }
  return out;
}

template <class T>
std::vector<T> matvec(const Matrix<T>& A, const std::vector<T>& x) {
  if (static_cast<int>(x.size()) != A.cols()) throw std::invalid_argument("matvec shape mismatch");
  std::vector<T> out(A.rows(), T(0));
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) out[i] += A.at(i, j) * x[j];
  }
  return out;
}

inline bool entries_finite(const RealMatrix& M) {
  for (double v : M.data()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

template <class T>
bool entries_in_unit_interval(const Matrix<T>& M) {
  for (const T& v : M.data()) {
    if (v < T(0) || v > T(1)) return false;
  }
  return true;
}

template <class T>
bool entries_nonnegative(const Matrix<T>& M) {
  for (const T& v : M.data()) {
    if (v < T(0)) return false;
  }
  return true;
}

}  // namespace fairdisc
