#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairdisc/matrix.hpp"

namespace fairdisc {

enum class Notion { EF, PROP, CD };

inline const char* to_string(Notion n) {
  switch (n) {
    case Notion::EF: return "ef";
    case Notion::PROP: return "prop";
    case Notion::CD: return "cd";
  }
  return "?";
}

inline Notion notion_from_string(const std::string& s) {
  if (s == "ef") return Notion::EF;
  if (s == "prop") return Notion::PROP;
  if (s == "cd") return Notion::CD;
  throw std::invalid_argument("unknown notion: " + s);
}

// k groups of agents sharing m goods. Utility rows are group-major:
// row = offset(group) + member.
template <class T>
struct Instance {
  int k = 0;
  std::vector<int> group_sizes;
  int m = 0;
  Matrix<T> utilities;  // n x m

  int n() const { return utilities.rows(); }

  int group_of(int agent) const {
    int g = 0;
    while (agent >= group_sizes[g]) agent -= group_sizes[g++];
    return g;
  }

  int member_of(int agent) const {
    int g = 0;
    while (agent >= group_sizes[g]) agent -= group_sizes[g++];
    return agent;
  }

  void validate() const {
    if (k < 2) throw std::invalid_argument("instance needs k >= 2 groups");
    if (static_cast<int>(group_sizes.size()) != k) {
      throw std::invalid_argument("group_sizes length differs from k");
    }
    int total = 0;
    for (int s : group_sizes) {
      if (s < 1) throw std::invalid_argument("every group needs at least one agent");
      total += s;
    }
    if (total != utilities.rows()) {
      throw std::invalid_argument("utility row count differs from total agent count");
    }
    if (m != utilities.cols()) {
      throw std::invalid_argument("good count differs from utility column count");
    }
    if constexpr (std::is_same_v<T, double>) {
      if (!entries_finite(utilities)) throw std::invalid_argument("utilities must be finite");
    }
    if (!entries_nonnegative(utilities)) {
      throw std::invalid_argument("utilities must be nonnegative");
    }
  }
};

// Partition of the m goods into k bundles; assignment[good] in [0, k).
struct Allocation {
  std::vector<int> assignment;

  int m() const { return static_cast<int>(assignment.size()); }

  void validate(int k, int goods) const {
    if (m() != goods) throw std::invalid_argument("allocation length differs from good count");
    for (int b : assignment) {
      if (b < 0 || b >= k) throw std::invalid_argument("bundle index out of range");
    }
  }

  std::vector<std::vector<int>> bundles(int k) const {
    std::vector<std::vector<int>> out(k);
    for (int j = 0; j < m(); ++j) out[assignment[j]].push_back(j);
    return out;
  }

  bool operator==(const Allocation&) const = default;
};

// Exact minimal c for one notion, with the (agent, bundle pair) attaining
// the maximum; indices are 0-based, ties broken lexicographically.
struct FairnessReport {
  Notion notion = Notion::EF;
  int c = 0;
  int agent_group = 0;
  int agent_member = 0;
  int pair_first = 0;
  int pair_second = 0;
};

}  // namespace fairdisc
