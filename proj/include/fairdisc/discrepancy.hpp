#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fairdisc/matrix.hpp"

namespace fairdisc {

using BiColoring = std::vector<std::uint8_t>;  // entries 0/1
using KColoring = std::vector<int>;            // entries 1..k
using StartVector = std::vector<double>;       // entries in [0,1]

namespace detail {

template <class T>
T abs_value(const T& v) {
  using std::abs;
  return v < T(0) ? T(-v) : v;
}

}  // namespace detail

// ||A(p*1 - x)||_inf. Each row is evaluated as |p*rowsum - <row, x>| so
// dyadic inputs stay exact in double.
template <class T>
T eval_bicolor(const Matrix<T>& A, const BiColoring& x, const T& p) {
  if (static_cast<int>(x.size()) != A.cols()) {
    throw std::invalid_argument("coloring length differs from column count");
  }
  T best(0);
  for (int i = 0; i < A.rows(); ++i) {
    const auto row = A.row(i);
    T rs(0), xs(0);
    for (int j = 0; j < A.cols(); ++j) {
      rs += row[j];
      if (x[j]) xs += row[j];
    }
    T v = detail::abs_value(T(p * rs - xs));
    if (v > best) best = v;
  }
  return best;
}

// max over colors s of ||A((1/k)*1 - 1(chi^{-1}(s)))||_inf, evaluated as
// |rowsum - k*colorsum| / k per row.
template <class T>
T eval_multicolor(const Matrix<T>& A, int k, const KColoring& chi) {
  if (k < 1) throw std::invalid_argument("need k >= 1 colors");
  if (static_cast<int>(chi.size()) != A.cols()) {
    throw std::invalid_argument("coloring length differs from column count");
  }
  for (int c : chi) {
    if (c < 1 || c > k) throw std::invalid_argument("color out of range 1..k");
  }
  T best(0);
  std::vector<T> per_color(k);
  for (int i = 0; i < A.rows(); ++i) {
    const auto row = A.row(i);
    std::fill(per_color.begin(), per_color.end(), T(0));
    T rs(0);
    for (int j = 0; j < A.cols(); ++j) {
      rs += row[j];
      per_color[chi[j] - 1] += row[j];
    }
    for (int s = 0; s < k; ++s) {
      T v = detail::abs_value(T(rs - T(k) * per_color[s])) / T(k);
      if (v > best) best = v;
    }
  }
  return best;
}

}  // namespace fairdisc
