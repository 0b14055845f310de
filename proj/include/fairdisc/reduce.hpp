#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fairdisc/matrix.hpp"

namespace fairdisc {

struct ReduceResult {
  std::vector<double> w;       // A*w preserved, entries in [0,1]
  std::vector<int> floating;   // indices of the remaining fractional entries
};

namespace detail {

constexpr double kPivotThreshold = 1e-12;
constexpr double kIntegralEps = 1e-12;

// Incremental RREF tableau over a sliding window of fractional columns.
// Maintains E (accumulated row operations) with E * A[:, window] = T, so
// appending a column costs O(n^2) and a pivot exchange O(n * window).
class ColumnReducer {
 public:
  ColumnReducer(const RealMatrix& A, std::vector<double>& w)
      : A_(A), w_(w), n_(A.rows()), cap_(A.rows() + 1) {
    reset_factorization();
  }

  // Runs the reduction; returns the surviving fractional column ids.
  std::vector<int> run(std::vector<int> queue) {
    queue_ = std::move(queue);
    next_ = 0;
    std::size_t walks = 0;
    while (true) {
      while (static_cast<int>(wincol_.size()) < cap_ && next_ < queue_.size()) {
        append_column(queue_[next_++]);
      }
      const int q = lowest_free_slot();
      if (q < 0) break;  // full rank over the window and queue exhausted
      walk_along_null_vector(q);
      if (++walks % 512 == 0) refactorize();
    }
    std::vector<int> floating(wincol_.begin(), wincol_.end());
    std::sort(floating.begin(), floating.end());
    return floating;
  }

 private:
  void reset_factorization() {
    E_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int i = 0; i < n_; ++i) E_[static_cast<std::size_t>(i) * n_ + i] = 1.0;
    T_.assign(static_cast<std::size_t>(n_) * cap_, 0.0);
    wincol_.clear();
    pivot_row_of_slot_.clear();
    pivot_slot_of_row_.assign(n_, -1);
  }

  double& tval(int r, int s) { return T_[static_cast<std::size_t>(r) * cap_ + s]; }
  double& eval(int r, int c) { return E_[static_cast<std::size_t>(r) * n_ + c]; }

  int slots() const { return static_cast<int>(wincol_.size()); }

  void append_column(int col) {
    const int s = slots();
    wincol_.push_back(col);
    pivot_row_of_slot_.push_back(-1);
    // reduced column = E * A[:, col]
    for (int r = 0; r < n_; ++r) {
      double acc = 0.0;
      for (int i = 0; i < n_; ++i) acc += eval(r, i) * A_.at(i, col);
      tval(r, s) = acc;
    }
    try_pivot_slot(s);
  }

  // Makes slot s a pivot if some pivotless row has a usable entry.
  void try_pivot_slot(int s) {
    int r_best = -1;
    double best = kPivotThreshold;
    for (int r = 0; r < n_; ++r) {
      if (pivot_slot_of_row_[r] >= 0) continue;
      const double v = std::fabs(tval(r, s));
      if (v > best) {
        best = v;
        r_best = r;
      }
    }
    if (r_best < 0) return;
    pivot_at(r_best, s);
  }

  void pivot_at(int r, int s) {
    const double piv = tval(r, s);
    const double inv = 1.0 / piv;
    for (int t = 0; t < slots(); ++t) tval(r, t) *= inv;
    for (int c = 0; c < n_; ++c) eval(r, c) *= inv;
    tval(r, s) = 1.0;
    for (int r2 = 0; r2 < n_; ++r2) {
      if (r2 == r) continue;
      const double f = tval(r2, s);
      if (f == 0.0) continue;
      for (int t = 0; t < slots(); ++t) tval(r2, t) -= f * tval(r, t);
      for (int c = 0; c < n_; ++c) eval(r2, c) -= f * eval(r, c);
      tval(r2, s) = 0.0;
    }
    pivot_row_of_slot_[s] = r;
    pivot_slot_of_row_[r] = s;
  }

  int lowest_free_slot() const {
    int best = -1;
    for (int s = 0; s < slots(); ++s) {
      if (pivot_row_of_slot_[s] >= 0) continue;
      if (best < 0 || wincol_[s] < wincol_[best]) best = s;
    }
    return best;
  }

  // Null vector through free slot q: v[q] = -1, v[pivot slot of row r] =
  // T[r][q]; walk w along it until a coordinate hits {0,1}.
  void walk_along_null_vector(int q) {
    std::vector<int> vslot;
    std::vector<double> vcoef;
    vslot.push_back(q);
    vcoef.push_back(-1.0);
    for (int r = 0; r < n_; ++r) {
      const int s = pivot_slot_of_row_[r];
      if (s < 0) continue;
      const double c = tval(r, q);
      if (c != 0.0) {
        vslot.push_back(s);
        vcoef.push_back(c);
      }
    }
    double pos = std::numeric_limits<double>::infinity();
    double neg = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < vslot.size(); ++t) {
      const double wj = w_[wincol_[vslot[t]]];
      const double c = vcoef[t];
      const double up = (1.0 - wj) / std::fabs(c);
      const double down = wj / std::fabs(c);
      if (c > 0.0) {
        pos = std::min(pos, up);
        neg = std::max(neg, -down);
      } else {
        pos = std::min(pos, down);
        neg = std::max(neg, -up);
      }
    }
    const double alpha = (pos <= -neg) ? pos : neg;
    std::vector<int> dead;
    for (std::size_t t = 0; t < vslot.size(); ++t) {
      const int col = wincol_[vslot[t]];
      double v = w_[col] + alpha * vcoef[t];
      if (v <= kIntegralEps) v = 0.0;
      if (v >= 1.0 - kIntegralEps) v = 1.0;
      w_[col] = v;
      if (v == 0.0 || v == 1.0) dead.push_back(vslot[t]);
    }
    // remove in descending slot order so swap-removal stays valid
    std::sort(dead.begin(), dead.end(), std::greater<int>());
    for (int s : dead) remove_slot(s);
  }

  void remove_slot(int s) {
    const int r = pivot_row_of_slot_[s];
    if (r >= 0) {
      pivot_slot_of_row_[r] = -1;
      pivot_row_of_slot_[s] = -1;
      // repivot row r on its largest remaining free entry, if any
      int s_best = -1;
      double best = kPivotThreshold;
      for (int t = 0; t < slots(); ++t) {
        if (t == s || pivot_row_of_slot_[t] >= 0) continue;
        const double v = std::fabs(tval(r, t));
        if (v > best) {
          best = v;
          s_best = t;
        }
      }
      if (s_best >= 0) pivot_at(r, s_best);
    }
    const int last = slots() - 1;
    if (s != last) {
      wincol_[s] = wincol_[last];
      pivot_row_of_slot_[s] = pivot_row_of_slot_[last];
      if (pivot_row_of_slot_[s] >= 0) pivot_slot_of_row_[pivot_row_of_slot_[s]] = s;
      for (int r2 = 0; r2 < n_; ++r2) tval(r2, s) = tval(r2, last);
    }
    wincol_.pop_back();
    pivot_row_of_slot_.pop_back();
  }

  // Rebuilds E and T from scratch over the current window (numerical
  // refresh after many accumulated row operations).
  void refactorize() {
    const std::vector<int> cols = wincol_;
    reset_factorization();
    for (int c : cols) append_column(c);
  }

  const RealMatrix& A_;
  std::vector<double>& w_;
  int n_;
  int cap_;
  std::vector<double> E_;
  std::vector<double> T_;
  std::vector<int> wincol_;
  std::vector<int> pivot_row_of_slot_;
  std::vector<int> pivot_slot_of_row_;
  std::vector<int> queue_;
  std::size_t next_ = 0;
};

}  // namespace detail

// Moves w toward {0,1} along null-space directions of the fractional
// columns, preserving A*w exactly (up to roundoff) and leaving at most
// n fractional coordinates.
inline ReduceResult reduce_columns(const RealMatrix& A, const std::vector<double>& w) {
  if (static_cast<int>(w.size()) != A.cols()) {
    throw std::invalid_argument("start vector length differs from column count");
  }
  if (!entries_in_unit_interval(A)) {
    throw std::invalid_argument("reduce_columns requires entries in [0,1]");
  }
  ReduceResult out;
  out.w = w;
  std::vector<int> fractional;
  for (int j = 0; j < A.cols(); ++j) {
    double& v = out.w[j];
    if (v < 0.0 || v > 1.0 || !std::isfinite(v)) {
      throw std::invalid_argument("start vector entries must lie in [0,1]");
    }
    if (v <= detail::kIntegralEps) {
      v = 0.0;
    } else if (v >= 1.0 - detail::kIntegralEps) {
      v = 1.0;
    } else {
      fractional.push_back(j);
    }
  }
  if (fractional.empty()) return out;
  detail::ColumnReducer reducer(A, out.w);
  out.floating = reducer.run(std::move(fractional));
  return out;
}

}  // namespace fairdisc
