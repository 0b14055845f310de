#include <catch2/catch_amalgamated.hpp>

#include "fairdisc/brute.hpp"
#include "fairdisc/fairdiv.hpp"
#include "fairdisc/instance_gen.hpp"

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

}  // namespace

TEST_CASE("reduction with every good large has zero scaled rows") {
  auto inst = random_instance({1, 1}, 6, 3);
  const auto red = build_reduction(inst, 2, 1);  // 3*T*k = 6 = m
  CHECK(red.L == 6);
  for (int a = 0; a < inst.n(); ++a) {
    for (int j = 0; j < 6; ++j) {
      CHECK(red.base.at(a, j) == 1.0);
      CHECK(red.base.at(inst.n() + a, j) == 0.0);
    }
  }
}

TEST_CASE("reduction of an all-equal agent scales small goods to one") {
  auto inst = make_instance(2, {1, 1}, {{5, 5, 5, 5, 5, 5, 5, 5}, {1, 2, 3, 4, 5, 6, 7, 8}});
  const auto red = build_reduction(inst, 2, 1);  // L = 6 < m = 8
  CHECK(red.L == 6);
  // agent 0 values everything equally: ties break by ascending index
  CHECK(red.large_goods[0] == std::vector<int>{0, 1, 2, 3, 4, 5});
  for (int j = 6; j < 8; ++j) CHECK(red.base.at(2 + 0, j) == 1.0);
}

TEST_CASE("reduction of the descending-utility example") {
  auto inst = make_instance(2, {1, 1},
                            {{8, 7, 6, 5, 4, 3, 2, 1}, {8, 7, 6, 5, 4, 3, 2, 1}});
  const auto red = build_reduction(inst, 2, 1);
  CHECK(red.L == 6);
  CHECK(red.large_goods[0] == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(red.p[0] == 3.0);
  const int zrow = inst.n() + 0;
  for (int j = 0; j < 6; ++j) CHECK(red.base.at(zrow, j) == 0.0);
  CHECK_THAT(red.base.at(zrow, 6), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(red.base.at(zrow, 7), Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-15));
}

TEST_CASE("zero-utility agents produce all-zero scaled rows") {
  auto inst = make_instance(2, {1, 1}, {{0, 0, 0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1, 1, 1}});
  const auto red = build_reduction(inst, 2, 1);
  for (int j = 0; j < 8; ++j) CHECK(red.base.at(2 + 0, j) == 0.0);  // p = 0, 0/0 = 0
}

TEST_CASE("solving two equal goods for one agent is exactly fair") {
  auto inst = make_instance(2, {1, 1}, {{1, 1}, {0, 0}});
  const auto out = solve_consensus(inst);
  CHECK(out.cd.c == 0);
  CHECK(out.accepted);
}

TEST_CASE("empty good set solves trivially") {
  auto inst = make_instance(2, {1, 1}, {{}, {}});
  inst.m = 0;
  inst.utilities = RealMatrix(2, 0);
  const auto out = solve_consensus(inst);
  CHECK(out.allocation.assignment.empty());
  CHECK(out.cd.c == 0);
  CHECK(out.ef.c == 0);
  CHECK(out.prop.c == 0);
}

TEST_CASE("all-zero utilities solve to zero under every notion") {
  auto inst = make_instance(3, {1, 1, 1}, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  const auto out = solve_for_notion(inst, Notion::EF);
  CHECK(out.ef.c == 0);
  CHECK(out.prop.c == 0);
  CHECK(out.cd.c == 0);
}

TEST_CASE("certified chain holds on every outcome") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = random_instance({2, 2}, 12, seed);
    SolveParams params;
    params.seed = seed;
    const auto out = solve_consensus(inst, params);
    CHECK(out.prop.c <= out.ef.c);
    CHECK(out.ef.c <= out.cd.c);
    CHECK(out.cd.c <= inst.m);
  }
}

TEST_CASE("certified values are never below the exhaustive optimum") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto inst = random_instance({2, 2}, 8, seed * 11 + 1);
    const auto exact = brute_min_allocation(inst);
    SolveParams params;
    params.seed = seed;
    const auto out = solve_consensus(inst, params);
    CHECK(out.cd.c >= exact.c_cd);
    CHECK(out.ef.c >= exact.c_ef);
    CHECK(out.prop.c >= exact.c_prop);
  }
}

TEST_CASE("acceptance implies the 4T budget accounting") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = random_instance({3, 2, 1}, 40, seed + 5);
    SolveParams params;
    params.seed = seed;
    const auto out = solve_consensus(inst, params);
    if (out.accepted) CHECK(out.cd.c <= 4 * out.t_used);
  }
}

TEST_CASE("certificates are recomputed, not inferred from the budget") {
  auto inst = random_instance({2, 2}, 16, 9);
  SolveParams params;
  params.seed = 4;
  const auto out = solve_consensus(inst, params);
  CHECK(out.cd.c == cdc_of(inst, out.allocation).c);
  CHECK(out.ef.c == efc_of(inst, out.allocation).c);
  CHECK(out.prop.c == propc_of(inst, out.allocation).c);
}

TEST_CASE("solve_for_notion surfaces the requested report") {
  auto inst = random_instance({1, 2}, 10, 2);
  const auto out = solve_for_notion(inst, Notion::PROP);
  CHECK(out.report(Notion::PROP).notion == Notion::PROP);
  CHECK(out.report(Notion::EF).notion == Notion::EF);
  CHECK(out.report(Notion::CD).notion == Notion::CD);
}

TEST_CASE("exact instances certify with exact arithmetic") {
  Instance<Rational> inst;
  inst.k = 2;
  inst.group_sizes = {1, 1};
  inst.m = 4;
  inst.utilities = RationalMatrix(2, 4);
  for (int j = 0; j < 4; ++j) {
    inst.utilities.at(0, j) = Rational(1, j + 1);
    inst.utilities.at(1, j) = Rational(j, 4);
  }
  const auto out = solve_consensus(inst);
  CHECK(out.cd.c == cdc_of(inst, out.allocation).c);
  CHECK(out.cd.c <= 4);
}

TEST_CASE("identical parameters give identical outcomes") {
  auto inst = random_instance({2, 2, 2}, 30, 77);
  SolveParams params;
  params.seed = 31;
  const auto a = solve_consensus(inst, params);
  const auto b = solve_consensus(inst, params);
  CHECK(a.allocation == b.allocation);
  CHECK(a.cd.c == b.cd.c);
  CHECK(a.t_used == b.t_used);
}

TEST_CASE("redraws at fixed budget are an alternative to doubling") {
  auto inst = random_instance({2, 2}, 20, 13);
  SolveParams params;
  params.redraws_per_t = 3;
  params.max_doublings = 0;
  const auto out = solve_consensus(inst, params);
  CHECK(out.cd.c == cdc_of(inst, out.allocation).c);
}
