#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "fairdisc/model.hpp"
#include "fairdisc/rational.hpp"
#include "fairdisc/solver.hpp"
#include "fairdisc/verify.hpp"

namespace fairdisc {

// The 2n x m matrix fed to the discrepancy engine: one indicator row per
// agent over their L most valued goods, one row of the remaining
// utilities scaled into [0,1] by the smallest large-good value.
struct ReductionMatrix {
  RealMatrix base;                             // rows 0..n-1 indicators, n..2n-1 scaled
  std::vector<std::vector<int>> large_goods;   // per agent, sorted ascending
  std::vector<double> p;                       // per agent, min utility inside the large set
  int L = 0;                                   // min(m, 3*T*k)
  int T = 0;
};

struct SolveParams {
  int initial_t = 0;       // 0 -> ceil(sqrt(2n))
  int max_doublings = 6;
  int redraws_per_t = 1;   // fresh seeds at fixed T before doubling
  std::uint64_t seed = 0;
};

struct SolveOutcome {
  Allocation allocation;
  FairnessReport ef, prop, cd;
  int t_used = 0;
  double discrepancy = 0.0;  // measured k-color value of the accepted coloring
  bool accepted = false;     // certified cd <= 4*T held

  const FairnessReport& report(Notion notion) const {
    switch (notion) {
      case Notion::EF: return ef;
      case Notion::PROP: return prop;
      default: return cd;
    }
  }
};

template <class T>
ReductionMatrix build_reduction(const Instance<T>& inst, int k, int t_budget) {
  if (t_budget < 1) throw std::invalid_argument("discrepancy budget must be >= 1");
  inst.validate();
  const int n = inst.n(), m = inst.m;
  ReductionMatrix red;
  red.T = t_budget;
  red.L = static_cast<int>(std::min<long long>(m, 3LL * t_budget * k));
  red.base = RealMatrix(2 * n, m);
  red.large_goods.resize(n);
  red.p.assign(n, 0.0);

  std::vector<int> order(m);
  for (int a = 0; a < n; ++a) {
    for (int j = 0; j < m; ++j) order[j] = j;
    // top-L by utility, ties by ascending good index
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return inst.utilities.at(a, x) > inst.utilities.at(a, y);
    });
    auto& large = red.large_goods[a];
    large.assign(order.begin(), order.begin() + red.L);
    std::sort(large.begin(), large.end());

    T pmin(0);
    if (red.L > 0) {
      pmin = inst.utilities.at(a, large[0]);
      for (int j : large) pmin = std::min(pmin, inst.utilities.at(a, j));
    }
    red.p[a] = to_double(pmin);

    for (int j : large) red.base.at(a, j) = 1.0;
    if (pmin > T(0)) {
      std::vector<char> is_large(m, 0);
      for (int j : large) is_large[j] = 1;
      for (int j = 0; j < m; ++j) {
        if (!is_large[j]) red.base.at(n + a, j) = to_double(T(inst.utilities.at(a, j) / pmin));
      }
    }
    // p == 0 leaves the scaled row all-zero (0/0 = 0 convention)
  }
  return red;
}

// Consensus-division solver: builds the reduction at budget T, colors it
// with the multi-color engine, and certifies the result exactly with the
// verifiers. Accepts when the certified cd value is at most 4T, otherwise
// doubles T; on exhausted doublings returns the best attempt seen.
template <class T>
SolveOutcome solve_consensus(const Instance<T>& inst, const SolveParams& params = {}) {
  inst.validate();
  const int k = inst.k;
  const int n = inst.n();
  int t_budget = params.initial_t >= 1
                     ? params.initial_t
                     : static_cast<int>(std::ceil(std::sqrt(2.0 * n)));
  const int redraws = std::max(1, params.redraws_per_t);

  std::optional<SolveOutcome> best;
  std::uint64_t attempt = 0;
  for (int doubling = 0; doubling <= params.max_doublings; ++doubling) {
    for (int r = 0; r < redraws; ++r, ++attempt) {
      const ReductionMatrix red = build_reduction(inst, k, t_budget);
      const MultiColorResult colored = solve_multicolor(red.base, k, mix_seed(params.seed, attempt));

      SolveOutcome outcome;
      outcome.allocation.assignment.resize(inst.m);
      for (int j = 0; j < inst.m; ++j) outcome.allocation.assignment[j] = colored.chi[j] - 1;
      outcome.ef = efc_of(inst, outcome.allocation);
      outcome.prop = propc_of(inst, outcome.allocation);
      outcome.cd = cdc_of(inst, outcome.allocation);
      outcome.t_used = t_budget;
      outcome.discrepancy = colored.value;
      outcome.accepted = outcome.cd.c <= 4 * t_budget;

      if (outcome.accepted) return outcome;
      if (!best || outcome.cd.c < best->cd.c) best = outcome;
    }
    t_budget *= 2;
  }
  return *best;
}

// The same allocation serves all three notions (cd >= ef >= prop holds
// per allocation); callers read the requested notion's report.
template <class T>
SolveOutcome solve_for_notion(const Instance<T>& inst, Notion notion, const SolveParams& params = {}) {
  (void)notion;
  return solve_consensus(inst, params);
}

}  // namespace fairdisc
