#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fairdisc/discrepancy.hpp"
#include "fairdisc/reduce.hpp"
#include "fairdisc/rng.hpp"

namespace fairdisc {

// Empirical contract for the full coloring: ||A(w - x)||_inf stays below
// kSolverConstant * sqrt(rows) on [0,1] matrices (checked by the
// regression corpus, not proven). Revisable engine constant.
inline constexpr double kSolverConstant = 16.0;
// Walk discretization: steps = ceil(kStepConstant * f * log f) per round,
// step size 1/sqrt(steps), where f is the active fractional count.
inline constexpr double kStepConstant = 8.0;
// Per-round safety cap on each row's drift, in units of the row's
// 2-norm over active columns.
inline constexpr double kCapLambda = 2.0;

struct LinearDiscResult {
  BiColoring x;
  double value = 0.0;  // measured ||A(w - x)||_inf
};

struct MultiColorResult {
  KColoring chi;
  double value = 0.0;  // measured k-color deviation of chi
};

namespace detail {

inline void validate_unit_matrix(const RealMatrix& A) {
  if (!entries_in_unit_interval(A)) {
    throw std::invalid_argument("solver requires matrix entries in [0,1]");
  }
}

// One random-walk partial-coloring pass over the active coordinates.
// y entries live in [-1,1]; coordinates reaching +-1 freeze. The walk is
// kept orthogonal to rows whose in-round drift hit their cap and to
// frozen coordinates. Returns the number of coordinates frozen.
class PartialColoringRound {
 public:
  PartialColoringRound(const RealMatrix& A, const std::vector<int>& active,
                       std::vector<double>& y, Rng& rng)
      : A_(A), active_(active), y_(y), rng_(rng), n_(A.rows()), f_(static_cast<int>(active.size())) {}

  int run() {
    build_submatrix();
    const double fd = static_cast<double>(f_);
    const long steps = static_cast<long>(std::ceil(kStepConstant * fd * std::log(std::max(fd, 2.0))));
    const double gamma = 1.0 / std::sqrt(static_cast<double>(steps));

    std::vector<double> g(f_), drift(n_, 0.0);
    frozen_.assign(f_, 0);
    tight_.assign(n_, 0);
    int frozen_count = 0;

    for (long step = 0; step < steps && frozen_count < f_; ++step) {
      for (int t = 0; t < f_; ++t) g[t] = frozen_[t] ? 0.0 : rng_.gauss();
      for (const auto& q : basis_) {
        double d = 0.0;
        for (int t = 0; t < f_; ++t) d += g[t] * q[t];
        for (int t = 0; t < f_; ++t) g[t] -= d * q[t];
      }
      double norm2 = 0.0;
      for (int t = 0; t < f_; ++t) norm2 += g[t] * g[t];
      if (norm2 < 1e-18) break;  // fully constrained

      bool dirty = false;
      for (int t = 0; t < f_; ++t) {
        if (frozen_[t]) continue;
        y_[t] += gamma * g[t];
        if (y_[t] >= 1.0) {
          y_[t] = 1.0;
          frozen_[t] = 1;
          ++frozen_count;
          dirty = true;
        } else if (y_[t] <= -1.0) {
          y_[t] = -1.0;
          frozen_[t] = 1;
          ++frozen_count;
          dirty = true;
        }
      }
      for (int i = 0; i < n_; ++i) {
        if (cap_[i] < 0.0) continue;  // zero row, never constrains
        double d = 0.0;
        const double* arow = sub_.data() + static_cast<std::size_t>(i) * f_;
        for (int t = 0; t < f_; ++t) d += arow[t] * g[t];
        drift[i] += gamma * d;
        if (!tight_[i] && std::fabs(drift[i]) >= cap_[i]) {
          tight_[i] = 1;
          dirty = true;
        }
      }
      if (dirty) rebuild_basis();
    }
    return frozen_count;
  }

  const std::vector<std::uint8_t>& frozen() const { return frozen_; }

 private:
  void build_submatrix() {
    sub_.assign(static_cast<std::size_t>(n_) * f_, 0.0);
    cap_.assign(n_, -1.0);
    for (int i = 0; i < n_; ++i) {
      double norm2 = 0.0;
      double* arow = sub_.data() + static_cast<std::size_t>(i) * f_;
      for (int t = 0; t < f_; ++t) {
        arow[t] = A_.at(i, active_[t]);
        norm2 += arow[t] * arow[t];
      }
      if (norm2 > 1e-24) cap_[i] = kCapLambda * std::sqrt(norm2);
    }
  }

  // Orthonormal basis of the span of {tight rows restricted to unfrozen
  // coordinates}; frozen coordinates are blocked by zeroing them here, so
  // a single projection step handles both constraint kinds.
  void rebuild_basis() {
    basis_.clear();
    std::vector<double> v(f_);
    for (int i = 0; i < n_; ++i) {
      if (!tight_[i]) continue;
      const double* arow = sub_.data() + static_cast<std::size_t>(i) * f_;
      for (int t = 0; t < f_; ++t) v[t] = frozen_[t] ? 0.0 : arow[t];
      for (const auto& q : basis_) {
        double d = 0.0;
        for (int t = 0; t < f_; ++t) d += v[t] * q[t];
        for (int t = 0; t < f_; ++t) v[t] -= d * q[t];
      }
      double norm2 = 0.0;
      for (int t = 0; t < f_; ++t) norm2 += v[t] * v[t];
      if (norm2 > 1e-20) {
        const double inv = 1.0 / std::sqrt(norm2);
        auto& q = basis_.emplace_back(v);
        for (double& e : q) e *= inv;
      }
    }
  }

  const RealMatrix& A_;
  const std::vector<int>& active_;
  std::vector<double>& y_;
  Rng& rng_;
  int n_, f_;
  std::vector<double> sub_;
  std::vector<double> cap_;
  std::vector<std::uint8_t> frozen_;
  std::vector<std::uint8_t> tight_;
  std::vector<std::vector<double>> basis_;
};

// Greedy single-move descent on the k-color deviation: move one column to
// another color. A move is taken when it strictly lowers the max
// deviation, or keeps the max and lowers the summed squared deviation;
// the second rule walks along max-norm plateaus (many rows tied at the
// max) until the max itself can drop. First improvement in a fixed scan
// order, so the pass is deterministic.
inline double multicolor_local_repair(const RealMatrix& A, int k, KColoring& chi) {
  const int n = A.rows(), m = A.cols();
  std::vector<double> rowsum(n, 0.0);
  std::vector<double> colsum(static_cast<std::size_t>(k) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      rowsum[i] += A.at(i, j);
      colsum[static_cast<std::size_t>(chi[j] - 1) * n + i] += A.at(i, j);
    }
  }
  // per-color max deviation and squared 2-norm of the deviation vector
  std::vector<double> color_max(k, 0.0), color_sq(k, 0.0);
  auto scan_color = [&](int s, double& worst, double& sq) {
    worst = 0.0;
    sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = (rowsum[i] - k * colsum[static_cast<std::size_t>(s) * n + i]) / k;
      worst = std::max(worst, std::fabs(d));
      sq += d * d;
    }
  };
  for (int s = 0; s < k; ++s) scan_color(s, color_max[s], color_sq[s]);

  auto total_max = [&] {
    double worst = 0.0;
    for (int s = 0; s < k; ++s) worst = std::max(worst, color_max[s]);
    return worst;
  };
  auto total_sq = [&] {
    double sq = 0.0;
    for (int s = 0; s < k; ++s) sq += color_sq[s];
    return sq;
  };

  double cur_max = total_max();
  double cur_sq = total_sq();
  bool improved = true;
  long moves = 0;
  const long move_guard = 100L * std::max(m, 1) + 1000;
  while (improved && moves < move_guard) {
    improved = false;
    for (int j = 0; j < m; ++j) {
      const int from = chi[j] - 1;
      for (int to = 0; to < k; ++to) {
        if (to == from) continue;
        double max_from, sq_from, max_to, sq_to;
        max_from = sq_from = max_to = sq_to = 0.0;
        for (int i = 0; i < n; ++i) {
          const double u = A.at(i, j);
          const double df = (rowsum[i] - k * (colsum[static_cast<std::size_t>(from) * n + i] - u)) / k;
          const double dt = (rowsum[i] - k * (colsum[static_cast<std::size_t>(to) * n + i] + u)) / k;
          max_from = std::max(max_from, std::fabs(df));
          max_to = std::max(max_to, std::fabs(dt));
          sq_from += df * df;
          sq_to += dt * dt;
        }
        double cand_max = std::max(max_from, max_to);
        for (int s = 0; s < k; ++s) {
          if (s != from && s != to) cand_max = std::max(cand_max, color_max[s]);
        }
        const double cand_sq = cur_sq - color_sq[from] - color_sq[to] + sq_from + sq_to;
        const bool better_max = cand_max < cur_max - 1e-12;
        const bool plateau_step = cand_max <= cur_max + 1e-12 && cand_sq < cur_sq - 1e-9;
        if (better_max || plateau_step) {
          for (int i = 0; i < n; ++i) {
            const double u = A.at(i, j);
            colsum[static_cast<std::size_t>(from) * n + i] -= u;
            colsum[static_cast<std::size_t>(to) * n + i] += u;
          }
          chi[j] = to + 1;
          color_max[from] = max_from;
          color_sq[from] = sq_from;
          color_max[to] = max_to;
          color_sq[to] = sq_to;
          cur_max = total_max();
          cur_sq = total_sq();
          improved = true;
          ++moves;
          break;  // re-evaluate this column's new neighborhood from scratch
        }
      }
    }
  }
  return cur_max;
}

// Greedy single-flip descent on ||A(w - x)||_inf.
inline double local_repair(const RealMatrix& A, const std::vector<double>& w, BiColoring& x) {
  const int n = A.rows(), m = A.cols();
  std::vector<double> dev(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) dev[i] += A.at(i, j) * (w[j] - (x[j] ? 1.0 : 0.0));
  }
  auto maxdev = [&] {
    double v = 0.0;
    for (double d : dev) v = std::max(v, std::fabs(d));
    return v;
  };
  double cur = maxdev();
  long flips = 0;
  const long flip_guard = 10L * std::max(m, 1) + 100;
  bool improved = true;
  std::vector<double> cand(n);
  while (improved && flips < flip_guard) {
    improved = false;
    for (int j = 0; j < m; ++j) {
      const double sign = x[j] ? 1.0 : -1.0;  // x_j 1->0 adds col, 0->1 subtracts
      double v = 0.0;
      for (int i = 0; i < n; ++i) {
        cand[i] = dev[i] + sign * A.at(i, j);
        v = std::max(v, std::fabs(cand[i]));
      }
      if (v < cur - 1e-12) {
        dev = cand;
        x[j] ^= 1;
        cur = v;
        improved = true;
        ++flips;
      }
    }
  }
  return cur;
}

}  // namespace detail

// Linear-discrepancy solver: finds x in {0,1}^m with ||A(w - x)||_inf
// small. Columns beyond the row count are first rounded away exactly
// (reduce_columns), then iterated partial coloring fixes the survivors;
// leftovers are randomized-rounded and repaired by single-flip descent.
// Deterministic given the seed.
inline LinearDiscResult solve_linear_disc(const RealMatrix& A, const StartVector& w,
                                          std::uint64_t seed) {
  detail::validate_unit_matrix(A);
  const int m = A.cols();
  if (static_cast<int>(w.size()) != m) {
    throw std::invalid_argument("start vector length differs from column count");
  }
  LinearDiscResult out;
  out.x.assign(m, 0);
  if (m == 0) return out;

  ReduceResult red = reduce_columns(A, w);
  for (int j = 0; j < m; ++j) out.x[j] = red.w[j] >= 0.5 ? 1 : 0;

  std::vector<int> active = red.floating;
  if (!active.empty()) {
    Rng rng(seed);
    std::vector<double> y;
    y.reserve(active.size());
    for (int j : active) y.push_back(2.0 * red.w[j] - 1.0);

    const int max_rounds = static_cast<int>(std::ceil(std::log2(std::max(m, 2)))) + 8;
    int stalls = 0;
    for (int round = 0; round < max_rounds && !active.empty(); ++round) {
      detail::PartialColoringRound walk(A, active, y, rng);
      const int frozen = walk.run();
      std::vector<int> next_active;
      std::vector<double> next_y;
      for (std::size_t t = 0; t < active.size(); ++t) {
        if (walk.frozen()[t]) {
          out.x[active[t]] = y[t] > 0.0 ? 1 : 0;
        } else {
          next_active.push_back(active[t]);
          next_y.push_back(y[t]);
        }
      }
      active.swap(next_active);
      y.swap(next_y);
      if (frozen == 0) {
        if (++stalls >= 2) break;
      } else {
        stalls = 0;
      }
    }
    // randomized rounding of whatever survived the rounds
    for (std::size_t t = 0; t < active.size(); ++t) {
      const double p1 = 0.5 * (y[t] + 1.0);
      out.x[active[t]] = rng.u01() < p1 ? 1 : 0;
    }
  }

  out.value = detail::local_repair(A, w, out.x);
  return out;
}

namespace detail {

// Recursive halving, exactly the splitting recursion: solve the linear
// discrepancy at w = (k1/k)*1, then recurse on each side with k0 =
// floor(k/2) and k1 = k - k0 colors over disjoint color sets.
inline KColoring multicolor_by_halving(const RealMatrix& A, int k, std::uint64_t seed) {
  const int m = A.cols();
  KColoring chi(m, 1);
  if (k == 1 || m == 0) return chi;
  const int k0 = k / 2;
  const int k1 = k - k0;
  const StartVector w(m, static_cast<double>(k1) / static_cast<double>(k));
  const LinearDiscResult split = solve_linear_disc(A, w, mix_seed(seed, 0));

  std::vector<int> side0, side1;
  for (int j = 0; j < m; ++j) (split.x[j] ? side1 : side0).push_back(j);
  auto submatrix = [&](const std::vector<int>& cols) {
    RealMatrix S(A.rows(), static_cast<int>(cols.size()));
    for (int i = 0; i < A.rows(); ++i) {
      for (std::size_t t = 0; t < cols.size(); ++t) S.at(i, static_cast<int>(t)) = A.at(i, cols[t]);
    }
    return S;
  };
  const KColoring chi0 = multicolor_by_halving(submatrix(side0), k0, mix_seed(seed, 1));
  const KColoring chi1 = multicolor_by_halving(submatrix(side1), k1, mix_seed(seed, 2));
  for (std::size_t t = 0; t < side0.size(); ++t) chi[side0[t]] = chi0[t];
  for (std::size_t t = 0; t < side1.size(); ++t) chi[side1[t]] = k0 + chi1[t];
  return chi;
}

}  // namespace detail

// Multi-color solver: the halving recursion followed by one single-move
// repair pass over the assembled coloring (the recursion alone leaves
// easy moves on the table when columns are plentiful).
inline MultiColorResult solve_multicolor(const RealMatrix& A, int k, std::uint64_t seed) {
  detail::validate_unit_matrix(A);
  if (k < 1) throw std::invalid_argument("need k >= 1 colors");
  MultiColorResult out;
  out.chi = detail::multicolor_by_halving(A, k, seed);
  out.value = detail::multicolor_local_repair(A, k, out.chi);
  return out;
}

}  // namespace fairdisc
