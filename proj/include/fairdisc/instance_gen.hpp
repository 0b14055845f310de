#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fairdisc/discrepancy.hpp"
#include "fairdisc/matrix.hpp"
#include "fairdisc/model.hpp"
#include "fairdisc/rational.hpp"
#include "fairdisc/rng.hpp"

namespace fairdisc {

// +-1 matrix with mutually orthogonal rows; first row and column all +1.
struct HadamardMatrix {
  int order = 0;
  std::vector<std::int8_t> e;  // row-major

  int at(int i, int j) const { return e[static_cast<std::size_t>(i) * order + j]; }
};

inline HadamardMatrix sylvester_hadamard(int order) {
  if (order < 1 || (order & (order - 1)) != 0) {
    throw std::invalid_argument("Hadamard order must be a power of two");
  }
  HadamardMatrix H;
  H.order = 1;
  H.e = {1};
  while (H.order < order) {
    const int s = H.order;
    HadamardMatrix next;
    next.order = 2 * s;
    next.e.assign(static_cast<std::size_t>(2 * s) * (2 * s), 1);
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < s; ++j) {
        const std::int8_t v = H.e[static_cast<std::size_t>(i) * s + j];
        next.e[static_cast<std::size_t>(i) * 2 * s + j] = v;
        next.e[static_cast<std::size_t>(i) * 2 * s + s + j] = v;
        next.e[static_cast<std::size_t>(i + s) * 2 * s + j] = v;
        next.e[static_cast<std::size_t>(i + s) * 2 * s + s + j] = static_cast<std::int8_t>(-v);
      }
    }
    H = std::move(next);
  }
  return H;
}

// W = (1 + H) / 2, the 0/1 shift of a Hadamard matrix.
template <class T = double>
Matrix<T> w_matrix(const HadamardMatrix& H) {
  Matrix<T> W(H.order, H.order);
  for (int i = 0; i < H.order; ++i) {
    for (int j = 0; j < H.order; ++j) W.at(i, j) = T((1 + H.at(i, j)) / 2);
  }
  return W;
}

// The weighted-discrepancy hard instance: W of the given order. Its
// first row is all ones, so |p*n - #colored| lower-bounds every coloring.
inline RealMatrix gen_wdisc_lower(int order) { return w_matrix<double>(sylvester_hadamard(order)); }

// k groups, each holding one copy of every row-agent of A.
template <class T>
Instance<T> gen_cd_lower_instance(const Matrix<T>& A, int k) {
  if (k < 2) throw std::invalid_argument("need k >= 2 groups");
  if (!entries_in_unit_interval(A)) throw std::invalid_argument("matrix entries must lie in [0,1]");
  const int n = A.rows();
  if (n < 1) throw std::invalid_argument("need at least one row agent");
  Instance<T> inst;
  inst.k = k;
  inst.group_sizes.assign(k, n);
  inst.m = A.cols();
  inst.utilities = Matrix<T>(k * n, A.cols());
  for (int g = 0; g < k; ++g) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < A.cols(); ++l) inst.utilities.at(g * n + j, l) = A.at(j, l);
    }
  }
  inst.validate();
  return inst;
}

// Group sizes (2n', 1, ..., 1): group 1 holds the row-agents of A and
// their conjugates (1 - A); every other group holds one agent valuing
// every good at 1.
template <class T>
Instance<T> gen_prop_lower_instance(const Matrix<T>& A, int k) {
  if (k < 2) throw std::invalid_argument("need k >= 2 groups");
  if (!entries_in_unit_interval(A)) throw std::invalid_argument("matrix entries must lie in [0,1]");
  const int np = A.rows();
  if (np < 1) throw std::invalid_argument("need at least one row agent");
  const int m = A.cols();
  Instance<T> inst;
  inst.k = k;
  inst.group_sizes.assign(k, 1);
  inst.group_sizes[0] = 2 * np;
  inst.m = m;
  inst.utilities = Matrix<T>(2 * np + (k - 1), m);
  for (int j = 0; j < np; ++j) {
    for (int l = 0; l < m; ++l) {
      inst.utilities.at(j, l) = A.at(j, l);
      inst.utilities.at(np + j, l) = T(1) - A.at(j, l);
    }
  }
  for (int i = 0; i < k - 1; ++i) {
    for (int l = 0; l < m; ++l) inst.utilities.at(2 * np + i, l) = T(1);
  }
  inst.validate();
  return inst;
}

// Set system over [M] with subsets of size exactly 4.
struct SetSystem {
  int ground = 0;  // M
  std::vector<std::array<int, 4>> subsets;

  int size() const { return static_cast<int>(subsets.size()); }

  void validate() const {
    if (ground < 4) throw std::invalid_argument("set system needs a ground set of size >= 4");
    for (const auto& s : subsets) {
      for (int v : s) {
        if (v < 0 || v >= ground) throw std::invalid_argument("set element out of range");
      }
      for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
          if (s[a] == s[b]) throw std::invalid_argument("set elements must be distinct");
        }
      }
    }
  }

  // d: the largest number of subsets any element appears in
  int max_frequency() const {
    std::vector<int> freq(ground, 0);
    for (const auto& s : subsets) {
      for (int v : s) ++freq[v];
    }
    int d = 0;
    for (int f : freq) d = std::max(d, f);
    return d;
  }
};

// The set-splitting gadget of the multi-color hardness reduction:
// C stacks 1/2-indicators of the subsets along the edges of a d'-regular
// bipartite multigraph, D stacks right-endpoint indicators, and
// B = [C D ... D] with k-2 copies of D. Row sums of B equal k; column
// sums stay below max{d'd/2, d'}.
struct GadgetBundle {
  RationalMatrix B, C, D;
  std::vector<std::pair<int, int>> edges;
  SetSystem sets;
  int k = 0;
  int dprime = 0;
  int max_freq = 0;         // d
  Rational column_bound;    // max{d'd/2, d'}
  double gamma = 0.0;       // expander diagnostic parameter, delta/(8dk) at delta = 1
};

// Random d'-regular bipartite multigraph as the union of d' uniform
// permutations. Expansion is only statistical here, not certified; the
// YES-case pipeline does not depend on it.
inline GadgetBundle gen_setsplit_gadget(const SetSystem& sets, int k, int dprime,
                                        std::uint64_t seed) {
  sets.validate();
  if (k < 2) throw std::invalid_argument("need k >= 2 colors");
  if (dprime < 1) throw std::invalid_argument("need d' >= 1");
  const int N = sets.size();
  if (N < 1) throw std::invalid_argument("set system is empty");
  const int M = sets.ground;

  GadgetBundle bundle;
  bundle.sets = sets;
  bundle.k = k;
  bundle.dprime = dprime;
  bundle.max_freq = sets.max_frequency();
  bundle.column_bound = std::max(Rational(dprime) * bundle.max_freq / 2, Rational(dprime));
  bundle.gamma = 1.0 / (8.0 * std::max(1, bundle.max_freq) * k);

  Rng rng(seed);
  std::vector<int> perm(N);
  for (int t = 0; t < dprime; ++t) {
    for (int i = 0; i < N; ++i) perm[i] = i;
    rng.shuffle(perm);
    for (int u = 0; u < N; ++u) bundle.edges.emplace_back(u, perm[u]);
  }

  const int E = static_cast<int>(bundle.edges.size());
  bundle.C = RationalMatrix(E, M);
  bundle.D = RationalMatrix(E, N);
  const Rational half(1, 2);
  for (int i = 0; i < E; ++i) {
    const auto [u, v] = bundle.edges[i];
    for (int j : sets.subsets[u]) bundle.C.at(i, j) = half;
    bundle.D.at(i, v) = 1;
  }
  bundle.B = RationalMatrix(E, M + (k - 2) * N);
  for (int i = 0; i < E; ++i) {
    for (int j = 0; j < M; ++j) bundle.B.at(i, j) = bundle.C.at(i, j);
    for (int copy = 0; copy < k - 2; ++copy) {
      for (int j = 0; j < N; ++j) bundle.B.at(i, M + copy * N + j) = bundle.D.at(i, j);
    }
  }
  return bundle;
}

struct UnsplitSubsetError : std::runtime_error {
  int subset_index;
  explicit UnsplitSubsetError(int index, const std::string& what)
      : std::runtime_error(what), subset_index(index) {}
};

// YES-case coloring: color 1 is T, color 2 its complement in [M], and
// each remaining color takes one block of D columns. Yields exactly zero
// discrepancy on B whenever T splits every subset.
inline KColoring split_coloring_from_solution(const std::vector<int>& T, const GadgetBundle& bundle) {
  const int M = bundle.sets.ground;
  const int N = bundle.sets.size();
  std::vector<char> in_t(M, 0);
  for (int v : T) {
    if (v < 0 || v >= M) throw std::invalid_argument("solution element out of range");
    in_t[v] = 1;
  }
  for (int i = 0; i < N; ++i) {
    int hits = 0;
    for (int v : bundle.sets.subsets[i]) hits += in_t[v];
    if (hits != 2) {
      throw UnsplitSubsetError(i, "subset " + std::to_string(i) +
                                      " is not split: it meets T in " + std::to_string(hits) +
                                      " elements");
    }
  }
  KColoring chi(M + (bundle.k - 2) * N);
  for (int j = 0; j < M; ++j) chi[j] = in_t[j] ? 1 : 2;
  for (int copy = 0; copy < bundle.k - 2; ++copy) {
    for (int j = 0; j < N; ++j) chi[M + copy * N + j] = 3 + copy;
  }
  return chi;
}

// A = (1/D) * W * B where D = max{d'd/2, d'} bounds the column sums of B
// and W is the 0/1 Hadamard shift; rows of B are padded with zero rows at
// the bottom up to the next power of two. Entries land in [0,1], and any
// zero-discrepancy coloring of B stays zero on A.
inline RationalMatrix hadamard_amplify(const GadgetBundle& bundle) {
  const int rows = bundle.B.rows();
  int padded = 1;
  while (padded < rows) padded *= 2;
  RationalMatrix Bpad(padded, bundle.B.cols());
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < bundle.B.cols(); ++j) Bpad.at(i, j) = bundle.B.at(i, j);
  }
  const RationalMatrix W = w_matrix<Rational>(sylvester_hadamard(padded));
  RationalMatrix A = multiply(W, Bpad);
  if (bundle.column_bound > 0) {
    for (auto& v : A.data()) v /= bundle.column_bound;
  }
  return A;
}

// k groups of n agents each, agent utilities taken from the rows of A;
// a zero-discrepancy coloring of A certifies an exact consensus division.
template <class T>
Instance<T> gen_hardness_fairdiv(const Matrix<T>& A, int k) {
  return gen_cd_lower_instance(A, k);
}

// Planted YES instance: sample T of size floor(M/2), then draw subsets
// with exactly two elements inside T and two outside.
struct PlantedSetSplit {
  SetSystem sets;
  std::vector<int> solution;  // the planted T, sorted
};

inline PlantedSetSplit gen_planted_setsplit(int subsets, int ground, std::uint64_t seed) {
  if (ground < 4) throw std::invalid_argument("ground set must have at least 4 elements");
  if (subsets < 1) throw std::invalid_argument("need at least one subset");
  Rng rng(seed);
  std::vector<int> elems(ground);
  for (int i = 0; i < ground; ++i) elems[i] = i;
  rng.shuffle(elems);
  const int half = ground / 2;
  std::vector<int> inside(elems.begin(), elems.begin() + half);
  std::vector<int> outside(elems.begin() + half, elems.end());

  PlantedSetSplit out;
  out.sets.ground = ground;
  for (int s = 0; s < subsets; ++s) {
    const int a = static_cast<int>(rng.below(inside.size()));
    int b = static_cast<int>(rng.below(inside.size() - 1));
    if (b >= a) ++b;
    const int c = static_cast<int>(rng.below(outside.size()));
    int d = static_cast<int>(rng.below(outside.size() - 1));
    if (d >= c) ++d;
    out.sets.subsets.push_back({inside[a], inside[b], outside[c], outside[d]});
  }
  out.solution = inside;
  std::sort(out.solution.begin(), out.solution.end());
  out.sets.validate();
  return out;
}

enum class RandomUtilities { Uniform01, Bernoulli };

// Regression-corpus instances: i.i.d. U[0,1] utilities (or 0/1 coin
// flips), deterministic per seed.
inline Instance<double> random_instance(const std::vector<int>& group_sizes, int m,
                                        std::uint64_t seed,
                                        RandomUtilities kind = RandomUtilities::Uniform01,
                                        double q = 0.5) {
  Instance<double> inst;
  inst.k = static_cast<int>(group_sizes.size());
  inst.group_sizes = group_sizes;
  inst.m = m;
  int n = 0;
  for (int s : group_sizes) n += s;
  inst.utilities = RealMatrix(n, m);
  Rng rng(seed);
  for (int a = 0; a < n; ++a) {
    for (int j = 0; j < m; ++j) {
      const double u = rng.u01();
      inst.utilities.at(a, j) = kind == RandomUtilities::Uniform01 ? u : (u < q ? 1.0 : 0.0);
    }
  }
  inst.validate();
  return inst;
}

}  // namespace fairdisc
