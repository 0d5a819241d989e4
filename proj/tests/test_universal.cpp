#include <doctest.h>

#include <cmath>
#include <random>

#include "entropy_banach/entropy.hpp"
#include "entropy_banach/errors.hpp"
#include "entropy_banach/universal.hpp"

#include "support.hpp"

using namespace eb;

namespace {

PLMap tent() { return PLMap({Q(0), frac(1, 2), Q(1)}, {Q(0), Q(1), Q(0)}); }

PLMap random_unit_map(std::mt19937_64& rng, int nodes) {
  std::uniform_int_distribution<int> v(-32, 32);
  std::vector<Q> xs, ys;
  for (int k = 0; k <= nodes; ++k) {
    xs.push_back(frac(k, nodes));
    ys.push_back(frac(v(rng), 32));
  }
  return PLMap(xs, ys);
}

}  // namespace

TEST_CASE("schedules satisfy the monotonicity conditions") {
  for (const Q r : {frac(2, 3), frac(3, 4), frac(9, 10)}) {
    ScaleSchedule s = geometric_schedule(r, 10);
    CHECK(check_schedule(s).empty());
    CHECK(s.q[0] == 1);
    for (int n = 0; n <= 10; ++n) {
      CHECK(s.p[n] == pow2(-n));
      CHECK(s.q[n] == pow_q(r, n));
    }
  }
  for (const Q a : {frac(1, 4), frac(1, 2), frac(3, 4)}) CHECK(check_schedule(hoelder_schedule(a, 12)).empty());
  CHECK_THROWS_AS(geometric_schedule(frac(1, 3), 5), DomainError);
  CHECK_THROWS_AS(geometric_schedule(Q(1), 5), DomainError);

  ScaleSchedule bad = geometric_schedule(frac(2, 3), 4);
  bad.q[2] = bad.q[1] * 2;
  CHECK_FALSE(check_schedule(bad).empty());
  CHECK(with_truncation(geometric_schedule(frac(2, 3), 4), 9).N == 9);
}

TEST_CASE("the windows are nested as expected") {
  for (int n = 0; n < 12; ++n) {
    CHECK(psi_J(n).contains(psi_I(n)));
    // consecutive J windows at ratio 2/3 touch without overlapping interiors
    CHECK(psi_J(n + 1).hi <= psi_J(n).hi);
  }
}

TEST_CASE("psi places scaled copies of f on the I windows") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    PLMap f = random_unit_map(rng, 6);
    ScaleSchedule s = geometric_schedule(frac(2, 3), 6);
    PLMap g = psi(f, s);
    CHECK(g.domain() == IntervalQ(frac(-4, 3), frac(4, 3)));
    for (int n = 0; n <= s.N; ++n) {
      for (int k = 0; k <= 12; ++k) {
        Q t = frac(k, 12);
        Q x = s.p[n] * (t + frac(3, 2)) / 2;
        CHECK(g(x) == s.q[n] * f(t));
        CHECK(g(-x) == s.q[n] * f(t));
      }
      CHECK(g(s.p[n] * frac(2, 3)) == 0);
    }
    CHECK(g(Q(0)) == 0);
    CHECK(g(frac(4, 3)) == 0);
    CHECK(sup_norm(g) == sup_norm(f));
  }
}

TEST_CASE("psi is linear") {
  std::mt19937_64 rng(10);
  ScaleSchedule s = hoelder_schedule(frac(1, 2), 7);
  for (int trial = 0; trial < 10; ++trial) {
    PLMap f = random_unit_map(rng, 5);
    PLMap h = random_unit_map(rng, 4);
    std::vector<Q> c{frac(2, 3), frac(-5, 4)};
    std::vector<PLMap> fs{f, h};
    std::vector<PLMap> gs{psi(f, s), psi(h, s)};
    CHECK(same_function(psi(linear_combination(c, fs), s), linear_combination(c, gs)));
  }
}

TEST_CASE("psi rejects maps off [0,1]") {
  PLMap f({Q(0), Q(2)}, {Q(0), Q(1)});
  CHECK_THROWS_AS(psi(f, geometric_schedule(frac(2, 3), 3)), DomainError);
}

TEST_CASE("psi of the tent carries certified d-horseshoes") {
  ScaleSchedule s = geometric_schedule(frac(2, 3), 16);
  PLMap g = psi(tent(), s);
  for (int d = 2; d <= 6; ++d) {
    HorseshoeCertificate c = psi_horseshoe(tent(), s, d);
    CHECK(c.d == d);
    CHECK(check_certificate(g, c).empty());
    CHECK(certified_lower_bound(g, c) == doctest::Approx(std::log(d)));
  }
}

TEST_CASE("insufficient truncation reports the minimal level") {
  ScaleSchedule s = geometric_schedule(frac(2, 3), 3);
  try {
    psi_horseshoe(tent(), s, 3);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    int n = e.minimal_truncation();
    CHECK(n > 3);
    HorseshoeCertificate c = psi_horseshoe(tent(), with_truncation(s, n), 3);
    CHECK(check_certificate(psi(tent(), with_truncation(s, n)), c).empty());
    CHECK_THROWS_AS(psi_horseshoe(tent(), with_truncation(s, n - 1), 3), TruncationError);
  }
  CHECK_THROWS_AS(psi_horseshoe(constant_map(Q(0)), s, 3), DomainError);
  CHECK_THROWS_AS(psi_horseshoe(tent(), s, 1), DomainError);
}

TEST_CASE("hoelder schedule keeps the quotient bounded") {
  std::vector<Q> grid;
  for (int k = -256; k <= 256; ++k) grid.push_back(frac(k, 192));
  double prev = 0.0;
  for (int N : {4, 8, 12}) {
    double h = holder_quotient(psi(tent(), hoelder_schedule(frac(1, 2), N)), 0.5, grid);
    CHECK(std::isfinite(h));
    if (prev > 0.0) CHECK(h <= 2 * prev);
    prev = h;
  }
}
