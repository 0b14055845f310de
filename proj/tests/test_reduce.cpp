#include <catch2/catch_amalgamated.hpp>

#include "fairdisc/reduce.hpp"
#include "fairdisc/rng.hpp"

using namespace fairdisc;

namespace {

std::vector<double> image(const RealMatrix& A, const std::vector<double>& w) {
  std::vector<double> out(A.rows(), 0.0);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) out[i] += A.at(i, j) * w[j];
  }
  return out;
}

void check_reduction(const RealMatrix& A, const std::vector<double>& w) {
  const auto res = reduce_columns(A, w);
  REQUIRE(static_cast<int>(res.w.size()) == A.cols());
  CHECK(static_cast<int>(res.floating.size()) <= A.rows());

  int fractional = 0;
  for (int j = 0; j < A.cols(); ++j) {
    CHECK(res.w[j] >= 0.0);
    CHECK(res.w[j] <= 1.0);
    const bool is_fractional = res.w[j] != 0.0 && res.w[j] != 1.0;
    if (is_fractional) ++fractional;
    const bool listed = std::find(res.floating.begin(), res.floating.end(), j) != res.floating.end();
    CHECK(is_fractional == listed);
  }
  CHECK(fractional == static_cast<int>(res.floating.size()));

  const auto before = image(A, w);
  const auto after = image(A, res.w);
  for (int i = 0; i < A.rows(); ++i) {
    CHECK_THAT(after[i], Catch::Matchers::WithinAbs(before[i], 1e-9));
  }
}

}  // namespace

TEST_CASE("integral start vectors pass through untouched") {
  RealMatrix A(2, 4);
  Rng rng(1);
  for (auto& v : A.data()) v = rng.u01();
  const std::vector<double> w = {0.0, 1.0, 1.0, 0.0};
  const auto res = reduce_columns(A, w);
  CHECK(res.w == w);
  CHECK(res.floating.empty());
}

TEST_CASE("single all-ones row forces one surviving fraction") {
  RealMatrix A(1, 3, 1.0);
  const std::vector<double> w = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  const auto res = reduce_columns(A, w);
  CHECK(static_cast<int>(res.floating.size()) <= 1);
  double sum = 0.0;
  for (double v : res.w) sum += v;
  CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("random 4x12 matrix at w = 1/2") {
  Rng rng(42);
  RealMatrix A(4, 12);
  for (auto& v : A.data()) v = rng.u01();
  check_reduction(A, std::vector<double>(12, 0.5));
}

TEST_CASE("reduction invariants across shapes") {
  Rng rng(9);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng gen(seed);
    const int n = 1 + static_cast<int>(gen.below(8));
    const int m = 1 + static_cast<int>(gen.below(40));
    RealMatrix A(n, m);
    for (auto& v : A.data()) v = gen.u01();
    std::vector<double> w(m);
    for (double& v : w) v = gen.u01();
    check_reduction(A, w);
  }
}

TEST_CASE("duplicate and zero columns reduce cleanly") {
  RealMatrix A(3, 9);
  Rng rng(4);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double v = rng.u01();
      A.at(i, j) = v;
      A.at(i, j + 3) = v;  // duplicate block
      A.at(i, j + 6) = 0.0;
    }
  }
  check_reduction(A, std::vector<double>(9, 0.5));

  RealMatrix zero(2, 6, 0.0);
  check_reduction(zero, std::vector<double>(6, 0.25));
}

TEST_CASE("wide flat matrices reduce to at most n fractions") {
  RealMatrix A(2, 64);
  Rng rng(13);
  for (auto& v : A.data()) v = rng.u01() < 0.3 ? 1.0 : 0.0;
  check_reduction(A, std::vector<double>(64, 0.5));
}

TEST_CASE("invalid inputs are rejected") {
  RealMatrix A(2, 3, 0.5);
  CHECK_THROWS_AS(reduce_columns(A, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(reduce_columns(A, {0.5, 0.5, 1.5}), std::invalid_argument);
  RealMatrix bad(2, 3, 2.0);
  CHECK_THROWS_AS(reduce_columns(bad, {0.5, 0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("tall matrices keep every fraction when rank allows") {
  // n >= m: nothing has to move if the columns are independent
  RealMatrix A(5, 2);
  Rng rng(3);
  for (auto& v : A.data()) v = rng.u01();
  const std::vector<double> w = {0.3, 0.7};
  const auto res = reduce_columns(A, w);
  CHECK(static_cast<int>(res.floating.size()) <= 2);
  const auto before = image(A, w);
  const auto after = image(A, res.w);
  for (int i = 0; i < 5; ++i) CHECK_THAT(after[i], Catch::Matchers::WithinAbs(before[i], 1e-9));
}
