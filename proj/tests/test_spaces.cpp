#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "entropy_banach/errors.hpp"
#include "entropy_banach/spaces.hpp"

#include "support.hpp"

using namespace eb;

namespace {

Q leibniz3(const QMatrix& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

std::vector<Q> lattice(int n) {
  std::vector<Q> out;
  for (int k = 0; k <= n; ++k) {
    out.push_back(frac(k, n));
    out.back().canonicalize();
  }
  return out;
}

}  // namespace

TEST_CASE("linear solve satisfies the system") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    QMatrix a(4, std::vector<Q>(4));
    std::vector<Q> b(4);
    for (auto& row : a)
      for (auto& x : row) x = d(rng);
    for (auto& x : b) x = d(rng);
    if (determinant(a) == 0) continue;
    auto x = solve_linear(a, b);
    for (int i = 0; i < 4; ++i) {
      Q s = 0;
      for (int j = 0; j < 4; ++j) s += a[i][j] * x[j];
      CHECK(s == b[i]);
    }
  }
  CHECK_THROWS_AS(solve_linear({{Q(1), Q(2)}, {Q(2), Q(4)}}, {Q(1), Q(1)}), DomainError);
}

TEST_CASE("determinant matches cofactor expansion") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    QMatrix a(3, std::vector<Q>(3));
    for (auto& row : a)
      for (auto& x : row) x = frac(d(rng), 3);
    CHECK(determinant(a) == leibniz3(a));
  }
}

TEST_CASE("independent points give an invertible evaluation matrix") {
  std::mt19937_64 rng(3);
  for (int n = 3; n <= 6; ++n) {
    FunctionFamily fs = random_pl_family(n, lattice(2 * n), rng);
    IndependencePoints pts;
    try {
      pts = independent_points(fs, lattice(8 * n));
    } catch (const DependencyError&) {
      continue;
    }
    REQUIRE(pts.points.size() == static_cast<std::size_t>(n));
    QMatrix m(n, std::vector<Q>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] = fs.members[j](pts.points[i]);
    CHECK(determinant(m) != 0);
    CHECK(abs_q(determinant(m)) == abs_q(pts.gram_determinant));
  }
}

TEST_CASE("dependent families report the relation") {
  PLMap f({Q(0), frac(1, 2), Q(1)}, {Q(0), Q(1), Q(0)});
  PLMap g({Q(0), Q(1)}, {Q(1), Q(0)});
  FunctionFamily fs{{f, g, linear_combination(std::vector<Q>{Q(2), Q(-3)}, std::vector<PLMap>{f, g})}, "dep"};
  try {
    independent_points(fs, lattice(16));
    FAIL("expected DependencyError");
  } catch (const DependencyError& e) {
    const auto& r = e.relation();
    REQUIRE(r.size() == 3);
    for (int k = 0; k <= 16; ++k) {
      Q x = frac(k, 16);
      CHECK(r[0] * f(x) + r[1] * g(x) + r[2] * fs.members[2](x) == 0);
    }
  }
}

TEST_CASE("horseshoe combination alternates and certifies log(n-1)") {
  std::mt19937_64 rng(4);
  int done = 0;
  for (int n = 3; n <= 7; ++n) {
    FunctionFamily fs = random_pl_family(n, lattice(2 * n), rng);
    IndependencePoints pts;
    try {
      pts = independent_points(fs, lattice(8 * n));
    } catch (const DependencyError&) {
      continue;
    }
    HorseshoeCombination hc = horseshoe_combination(fs, pts);
    const Q lo = pts.points.front(), hi = pts.points.back();
    for (std::size_t i = 0; i < pts.points.size(); ++i)
      CHECK(hc.f(pts.points[i]) == (i % 2 == 0 ? lo : hi));
    CHECK(check_certificate(hc.f, hc.certificate).empty());
    CHECK(certified_lower_bound(hc.f, hc.certificate) == doctest::Approx(std::log(n - 1.0)));
    // f is the stated combination.
    PLMap direct = linear_combination(hc.coefficients, fs.members);
    CHECK(same_function(direct, hc.f));
    ++done;
  }
  CHECK(done >= 3);
}

TEST_CASE("cropped polynomials have at most deg laps") {
  // Chebyshev T_4 = 8x^4 - 8x^2 + 1 has 4 laps on [-1, 1].
  PLMap t4 = cropped_polynomial({Q(1), Q(0), Q(-8), Q(0), Q(8)}, Q(-1), Q(1), 17);
  CHECK(lap_count(t4) == 4);
  for (const auto& x : t4.breakpoints()) CHECK(t4(x) == 8 * x * x * x * x - 8 * x * x + 1);
  CHECK_THROWS_AS(cropped_polynomial({Q(1), Q(0), Q(1)}, Q(0), Q(1), 3), DomainError);
  CHECK_THROWS_AS(cropped_polynomial({Q(1)}, Q(1), Q(0), 5), DomainError);
}

TEST_CASE("bump sums place a tent on each requested slot") {
  PLMap b = bump_sum({{1, Q(1)}, {3, Q(-2)}});
  CHECK(b.domain() == IntervalQ(Q(1), Q(2)));
  // amp (x - l)(r - x) peaks at the midpoint node
  CHECK(sup_norm(b) == frac(1, 16));
  CHECK(b(frac(41, 24)) == frac(-1, 288));
  CHECK(b(frac(7, 4)) == 0);
  CHECK_THROWS_AS(bump_sum({{1, Q(1)}, {1, Q(2)}}), DomainError);
  CHECK_THROWS_AS(bump_sum({{0, Q(1)}}), DomainError);
}

TEST_CASE("scaled sine carries d-horseshoes") {
  for (int d : {2, 3, 5}) {
    PLMap s = sin_scaled(2 * std::numbers::pi * d);
    auto [found, cert] = horseshoe_max(s);
    CHECK(found >= d);
  }
  CHECK_THROWS(sin_scaled(3.0, 10));
}
