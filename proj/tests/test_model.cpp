#include <catch2/catch_amalgamated.hpp>

#include "fairdisc/instance_gen.hpp"
#include "fairdisc/verify.hpp"
#include "oracles.hpp"

using namespace fairdisc;

namespace {

Instance<double> make_instance(int k, std::vector<int> sizes, std::vector<std::vector<double>> rows) {
  Instance<double> inst;
  inst.k = k;
  inst.group_sizes = std::move(sizes);
  inst.m = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  inst.utilities = RealMatrix(static_cast<int>(rows.size()), inst.m);
  for (int a = 0; a < static_cast<int>(rows.size()); ++a) {
    for (int j = 0; j < inst.m; ++j) inst.utilities.at(a, j) = rows[a][j];
  }
  return inst;
}

Allocation make_alloc(std::vector<int> assignment) { return Allocation{std::move(assignment)}; }

}  // namespace

TEST_CASE("min_removals on the worked examples") {
  CHECK(min_removals<double>({5, 3, 1}, 0.0) == 0);
  CHECK(min_removals<double>({5, 3, 1}, 4.0) == 1);
  CHECK(min_removals<double>({1, 1, 1, 1}, 3.5) == 4);
  CHECK(min_removals<double>({5, 3, 1}, -2.0) == 0);
  CHECK(min_removals<double>({}, 0.0) == 0);

  CHECK(min_removals<Rational>({Rational(5), Rational(3), Rational(1)}, Rational(4)) == 1);
  CHECK(min_removals<Rational>({Rational(1), Rational(1), Rational(1), Rational(1)},
                               Rational(7, 2)) == 4);
}

TEST_CASE("min_removals matches subset enumeration on random inputs") {
  Rng rng(7);
  for (int it = 0; it < 200; ++it) {
    const int m = static_cast<int>(rng.below(7));
    std::vector<double> values(m);
    for (double& v : values) v = rng.u01() * 3.0;
    const double slack = rng.u01() * 6.0 - 1.0;
    CHECK(min_removals(values, slack) == oracle::min_removals_by_enumeration(values, slack));
  }
}

TEST_CASE("single valuable good forces envy of one good") {
  // one good both agents value at 1, two singleton groups, good to group 0
  auto inst = make_instance(2, {1, 1}, {{1.0}, {1.0}});
  const auto report = efc_of(inst, make_alloc({0}));
  CHECK(report.c == 1);
  CHECK(report.agent_group == 1);
  CHECK(report.agent_member == 0);
  CHECK(report.pair_first == 1);
  CHECK(report.pair_second == 0);
}

TEST_CASE("all-zero utilities are fair under every notion") {
  auto inst = make_instance(2, {1, 2}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  const auto alloc = make_alloc({0, 1, 1});
  CHECK(efc_of(inst, alloc).c == 0);
  CHECK(propc_of(inst, alloc).c == 0);
  CHECK(cdc_of(inst, alloc).c == 0);
}

TEST_CASE("proportionality of a single valued good") {
  auto inst = make_instance(2, {1, 1}, {{1.0}, {0.0}});
  CHECK(propc_of(inst, make_alloc({0})).c == 0);  // owner holds the good: 1 >= 1/2
  CHECK(propc_of(inst, make_alloc({1})).c == 1);  // good across: needs B = {good}
}

TEST_CASE("consensus division of two equal goods") {
  auto inst = make_instance(2, {1, 1}, {{1.0, 1.0}, {0.0, 0.0}});
  CHECK(cdc_of(inst, make_alloc({0, 1})).c == 0);
  auto skew = make_instance(2, {1, 1}, {{1.0, 0.0}, {0.0, 0.0}});
  CHECK(cdc_of(skew, make_alloc({0, 1})).c == 1);
}

TEST_CASE("empty good set gives zero for every notion") {
  auto inst = make_instance(3, {1, 1, 1}, {{}, {}, {}});
  inst.m = 0;
  inst.utilities = RealMatrix(3, 0);
  const auto alloc = make_alloc({});
  CHECK(efc_of(inst, alloc).c == 0);
  CHECK(propc_of(inst, alloc).c == 0);
  CHECK(cdc_of(inst, alloc).c == 0);
}

TEST_CASE("dimension mismatches are rejected") {
  auto inst = make_instance(2, {1, 1}, {{1.0, 0.5}, {0.5, 1.0}});
  CHECK_THROWS_AS(efc_of(inst, make_alloc({0})), std::invalid_argument);
  CHECK_THROWS_AS(cdc_of(inst, make_alloc({0, 2})), std::invalid_argument);
  auto bad = inst;
  bad.utilities.at(0, 0) = -1.0;
  CHECK_THROWS_AS(propc_of(bad, make_alloc({0, 1})), std::invalid_argument);
}

TEST_CASE("verifiers agree with subset enumeration on random small instances") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(seed);
    const int k = 2 + static_cast<int>(rng.below(2));
    std::vector<int> sizes(k);
    for (int& s : sizes) s = 1 + static_cast<int>(rng.below(2));
    const int m = static_cast<int>(rng.below(9));
    auto inst = random_instance(sizes, m, seed * 31 + 5);
    Allocation alloc;
    alloc.assignment.resize(m);
    for (int j = 0; j < m; ++j) alloc.assignment[j] = static_cast<int>(rng.below(k));

    CHECK(efc_of(inst, alloc).c == oracle::efc_by_enumeration(inst, alloc));
    CHECK(propc_of(inst, alloc).c == oracle::propc_by_enumeration(inst, alloc));
    CHECK(cdc_of(inst, alloc).c == oracle::cdc_by_enumeration(inst, alloc));
  }
}

TEST_CASE("exact rational verification agrees with enumeration") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed + 100);
    const int m = 3 + static_cast<int>(rng.below(5));
    Instance<Rational> inst;
    inst.k = 2;
    inst.group_sizes = {1, 2};
    inst.m = m;
    inst.utilities = RationalMatrix(3, m);
    for (int a = 0; a < 3; ++a) {
      for (int j = 0; j < m; ++j) {
        inst.utilities.at(a, j) = Rational(rng.below(13), 1 + rng.below(7));
      }
    }
    Allocation alloc;
    alloc.assignment.resize(m);
    for (int j = 0; j < m; ++j) alloc.assignment[j] = static_cast<int>(rng.below(2));

    CHECK(efc_of(inst, alloc).c == oracle::efc_by_enumeration(inst, alloc));
    CHECK(propc_of(inst, alloc).c == oracle::propc_by_enumeration(inst, alloc));
    CHECK(cdc_of(inst, alloc).c == oracle::cdc_by_enumeration(inst, alloc));
  }
}

TEST_CASE("per-allocation chain cd >= ef >= prop") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed * 13 + 1);
    const int k = 2 + static_cast<int>(rng.below(3));
    std::vector<int> sizes(k);
    for (int& s : sizes) s = 1 + static_cast<int>(rng.below(3));
    const int m = 1 + static_cast<int>(rng.below(12));
    auto inst = random_instance(sizes, m, seed);
    Allocation alloc;
    alloc.assignment.resize(m);
    for (int j = 0; j < m; ++j) alloc.assignment[j] = static_cast<int>(rng.below(k));

    const int cd = cdc_of(inst, alloc).c;
    const int ef = efc_of(inst, alloc).c;
    const int prop = propc_of(inst, alloc).c;
    CHECK(cd >= ef);
    CHECK(ef >= prop);
    CHECK(cd <= m);
  }
}

TEST_CASE("removing an agent never raises any notion's value") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed + 17);
    const int k = 2;
    std::vector<int> sizes = {2, 2};
    const int m = 2 + static_cast<int>(rng.below(8));
    auto inst = random_instance(sizes, m, seed);
    Allocation alloc;
    alloc.assignment.resize(m);
    for (int j = 0; j < m; ++j) alloc.assignment[j] = static_cast<int>(rng.below(k));

    const int drop = static_cast<int>(rng.below(inst.n()));
    Instance<double> smaller;
    smaller.k = inst.k;
    smaller.group_sizes = inst.group_sizes;
    --smaller.group_sizes[inst.group_of(drop)];
    smaller.m = inst.m;
    smaller.utilities = RealMatrix(inst.n() - 1, inst.m);
    for (int a = 0, t = 0; a < inst.n(); ++a) {
      if (a == drop) continue;
      for (int j = 0; j < inst.m; ++j) smaller.utilities.at(t, j) = inst.utilities.at(a, j);
      ++t;
    }

    CHECK(efc_of(smaller, alloc).c <= efc_of(inst, alloc).c);
    CHECK(propc_of(smaller, alloc).c <= propc_of(inst, alloc).c);
    CHECK(cdc_of(smaller, alloc).c <= cdc_of(inst, alloc).c);
  }
}

TEST_CASE("scaling one agent's utilities leaves every report unchanged") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed + 3);
    auto inst = random_instance({2, 2}, 8, seed);
    Allocation alloc;
    alloc.assignment.resize(8);
    for (int j = 0; j < 8; ++j) alloc.assignment[j] = static_cast<int>(rng.below(2));

    auto scaled = inst;
    const int agent = static_cast<int>(rng.below(4));
    const double factor = 0.25 + 7.0 * rng.u01();
    for (int j = 0; j < 8; ++j) scaled.utilities.at(agent, j) *= factor;

    CHECK(efc_of(scaled, alloc).c == efc_of(inst, alloc).c);
    CHECK(propc_of(scaled, alloc).c == propc_of(inst, alloc).c);
    CHECK(cdc_of(scaled, alloc).c == cdc_of(inst, alloc).c);
  }
}
