#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fairdisc/discrepancy.hpp"
#include "fairdisc/verify.hpp"

namespace fairdisc {

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BiColorOpt {
  BiColoring x;
  double value = 0.0;
};

struct KColorOpt {
  KColoring chi;
  double value = 0.0;
};

// Exact minimum of ||A(p*1 - x)||_inf over all 2^m colorings. Gray-code
// enumeration: each step flips one coordinate and updates the per-row
// selected sums in O(n). Ties broken by lowest binary encoding
// (bit j of the encoding is x_j).
inline BiColorOpt brute_min_bicolor(const RealMatrix& A, double p, int cap_log2 = 24) {
  const int n = A.rows(), m = A.cols();
  if (m > cap_log2 || m >= 63) {
    throw CapExceeded("brute_min_bicolor: 2^" + std::to_string(m) + " colorings exceed cap");
  }
  std::vector<double> target(n);  // p * rowsum
  for (int i = 0; i < n; ++i) {
    double rs = 0.0;
    for (int j = 0; j < m; ++j) rs += A.at(i, j);
    target[i] = p * rs;
  }
  std::vector<double> sel(n, 0.0);
  auto value_now = [&] {
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = std::fabs(target[i] - sel[i]);
      if (d > v) v = d;
    }
    return v;
  };

  std::uint64_t best_enc = 0, cur = 0;
  double best = value_now();
  const std::uint64_t total = 1ULL << m;
  for (std::uint64_t t = 1; t < total; ++t) {
    const int b = std::countr_zero(t);  // Gray code: step t flips bit b
    cur ^= (1ULL << b);
    const double sign = (cur >> b & 1) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) sel[i] += sign * A.at(i, b);
    const double v = value_now();
    if (v < best || (v == best && cur < best_enc)) {
      best = v;
      best_enc = cur;
    }
  }

  BiColorOpt out;
  out.value = best;
  out.x.assign(m, 0);
  for (int j = 0; j < m; ++j) out.x[j] = static_cast<std::uint8_t>(best_enc >> j & 1);
  return out;
}

// Exact minimum of the k-color discrepancy over all k^m colorings.
// Odometer enumeration with incremental per-color row sums; ties broken
// by lowest mixed-radix encoding (digit j, base k, is chi[j]-1).
inline KColorOpt brute_min_multicolor(const RealMatrix& A, int k, std::uint64_t cap = 1ULL << 24) {
  if (k < 1) throw std::invalid_argument("need k >= 1 colors");
  const int n = A.rows(), m = A.cols();
  std::uint64_t total = 1;
  for (int j = 0; j < m; ++j) {
    if (total > cap / static_cast<std::uint64_t>(k)) {
      throw CapExceeded("brute_min_multicolor: k^m exceeds cap");
    }
    total *= static_cast<std::uint64_t>(k);
  }

  std::vector<double> rowsum(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) rowsum[i] += A.at(i, j);
  }
  // color_sum[s*n + i] = sum of row i over goods with color s+1
  std::vector<double> color_sum(static_cast<std::size_t>(k) * n, 0.0);
  for (int i = 0; i < n; ++i) color_sum[i] = rowsum[i];  // all goods start at color 1
  std::vector<int> digit(m, 0);

  auto value_now = [&] {
    double v = 0.0;
    for (int s = 0; s < k; ++s) {
      for (int i = 0; i < n; ++i) {
        const double d = std::fabs(rowsum[i] - k * color_sum[static_cast<std::size_t>(s) * n + i]) / k;
        if (d > v) v = d;
      }
    }
    return v;
  };

  double best = value_now();
  std::vector<int> best_digits = digit;
  for (std::uint64_t t = 1; t < total; ++t) {
    // odometer increment with running color-sum updates
    int j = 0;
    while (true) {
      const int from = digit[j];
      const int to = (from + 1) % k;
      digit[j] = to;
      for (int i = 0; i < n; ++i) {
        const double u = A.at(i, j);
        color_sum[static_cast<std::size_t>(from) * n + i] -= u;
        color_sum[static_cast<std::size_t>(to) * n + i] += u;
      }
      if (to != 0) break;
      ++j;
    }
    const double v = value_now();
    // the odometer visits encodings in increasing order, so strict
    // improvement alone implements the lowest-encoding tie-break
    if (v < best) {
      best = v;
      best_digits = digit;
    }
  }

  KColorOpt out;
  out.value = best;
  out.chi.resize(m);
  for (int j = 0; j < m; ++j) out.chi[j] = best_digits[j] + 1;
  return out;
}

template <class T>
struct BruteAllocResult {
  int c_ef = 0;
  int c_prop = 0;
  int c_cd = 0;
  Allocation best_ef, best_prop, best_cd;
  std::uint64_t searched = 0;
};

// Exhaustive optimum of each fairness notion over all k^m allocations.
template <class T>
BruteAllocResult<T> brute_min_allocation(const Instance<T>& inst, std::uint64_t cap = 1ULL << 24) {
  inst.validate();
  const int k = inst.k, m = inst.m;
  std::uint64_t total = 1;
  for (int j = 0; j < m; ++j) {
    if (total > cap / static_cast<std::uint64_t>(k)) {
      throw CapExceeded("brute_min_allocation: k^m exceeds cap");
    }
    total *= static_cast<std::uint64_t>(k);
  }

  BruteAllocResult<T> out;
  Allocation alloc;
  alloc.assignment.assign(m, 0);
  bool first = true;
  for (std::uint64_t t = 0; t < total; ++t) {
    if (t > 0) {
      int j = 0;
      while (true) {
        alloc.assignment[j] = (alloc.assignment[j] + 1) % k;
        if (alloc.assignment[j] != 0) break;
        ++j;
      }
    }
    const auto reports = verify_all(inst, alloc);
    if (first || reports[0].c < out.c_ef) {
      out.c_ef = reports[0].c;
      out.best_ef = alloc;
    }
    if (first || reports[1].c < out.c_prop) {
      out.c_prop = reports[1].c;
      out.best_prop = alloc;
    }
    if (first || reports[2].c < out.c_cd) {
      out.c_cd = reports[2].c;
      out.best_cd = alloc;
    }
    first = false;
  }
  out.searched = total;
  return out;
}

}  // namespace fairdisc
