#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <vector>

#include "fairdisc/model.hpp"
#include "fairdisc/rational.hpp"

namespace fairdisc {

// Smallest c such that removing the c largest elements of `values` frees
// at least `slack`. Greedy is optimal: utilities are additive and
// nonnegative, so the c largest elements maximize the removed sum for
// every c. Returns 0 when slack <= 0.
template <class T>
int min_removals(std::vector<T> values, const T& slack) {
  using P = value_policy<T>;
  if (P::leq_zero(slack)) return 0;
  std::sort(values.begin(), values.end(), std::greater<T>());
  T removed(0);
  for (std::size_t c = 0; c < values.size(); ++c) {
    removed += values[c];
    if (P::geq(removed, slack)) return static_cast<int>(c) + 1;
  }
  return static_cast<int>(values.size());
}

namespace detail {

// Per-agent bundle utilities, n x k.
template <class T>
Matrix<T> bundle_utilities(const Instance<T>& inst, const Allocation& alloc) {
  Matrix<T> S(inst.n(), inst.k);
  for (int a = 0; a < inst.n(); ++a) {
    for (int j = 0; j < inst.m; ++j) S.at(a, alloc.assignment[j]) += inst.utilities.at(a, j);
  }
  return S;
}

template <class T>
std::vector<T> values_in_bundle(const Instance<T>& inst, int agent, const std::vector<int>& goods) {
  std::vector<T> out;
  out.reserve(goods.size());
  for (int j : goods) out.push_back(inst.utilities.at(agent, j));
  return out;
}

struct ReportTracker {
  FairnessReport best;
  bool seeded = false;

  void offer(Notion notion, int c, int group, int member, int first, int second) {
    if (!seeded || c > best.c) {
      best = FairnessReport{notion, c, group, member, first, second};
      seeded = true;
    }
  }
};

}  // namespace detail

// Minimal c with the allocation envy-free up to c goods.
template <class T>
FairnessReport efc_of(const Instance<T>& inst, const Allocation& alloc) {
  inst.validate();
  alloc.validate(inst.k, inst.m);
  const auto S = detail::bundle_utilities(inst, alloc);
  const auto bundles = alloc.bundles(inst.k);
  detail::ReportTracker tracker;
  for (int a = 0; a < inst.n(); ++a) {
    const int g = inst.group_of(a);
    for (int other = 0; other < inst.k; ++other) {
      if (other == g) continue;
      const T slack = S.at(a, other) - S.at(a, g);
      const int c = min_removals(detail::values_in_bundle(inst, a, bundles[other]), slack);
      tracker.offer(Notion::EF, c, g, inst.member_of(a), g, other);
    }
  }
  return tracker.best;
}

// Minimal c with the allocation proportional up to c goods. The witness
// set is the c most valuable goods outside the agent's bundle.
template <class T>
FairnessReport propc_of(const Instance<T>& inst, const Allocation& alloc) {
  inst.validate();
  alloc.validate(inst.k, inst.m);
  const auto S = detail::bundle_utilities(inst, alloc);
  detail::ReportTracker tracker;
  for (int a = 0; a < inst.n(); ++a) {
    const int g = inst.group_of(a);
    T total(0);
    for (int b = 0; b < inst.k; ++b) total += S.at(a, b);
    const T slack = total / T(inst.k) - S.at(a, g);
    std::vector<T> outside;
    for (int j = 0; j < inst.m; ++j) {
      if (alloc.assignment[j] != g) outside.push_back(inst.utilities.at(a, j));
    }
    const int c = min_removals(std::move(outside), slack);
    tracker.offer(Notion::PROP, c, g, inst.member_of(a), g, g);
  }
  return tracker.best;
}

// Minimal c with the allocation a consensus 1/k-division up to c goods:
// every agent, every ordered bundle pair.
template <class T>
FairnessReport cdc_of(const Instance<T>& inst, const Allocation& alloc) {
  inst.validate();
  alloc.validate(inst.k, inst.m);
  const auto S = detail::bundle_utilities(inst, alloc);
  const auto bundles = alloc.bundles(inst.k);
  detail::ReportTracker tracker;
  for (int a = 0; a < inst.n(); ++a) {
    for (int i = 0; i < inst.k; ++i) {
      for (int other = 0; other < inst.k; ++other) {
        if (other == i) continue;
        const T slack = S.at(a, other) - S.at(a, i);
        const int c = min_removals(detail::values_in_bundle(inst, a, bundles[other]), slack);
        tracker.offer(Notion::CD, c, inst.group_of(a), inst.member_of(a), i, other);
      }
    }
  }
  return tracker.best;
}

template <class T>
std::array<FairnessReport, 3> verify_all(const Instance<T>& inst, const Allocation& alloc) {
  return {efc_of(inst, alloc), propc_of(inst, alloc), cdc_of(inst, alloc)};
}

}  // namespace fairdisc
