#include <doctest.h>

#include <cmath>
#include <set>

#include "entropy_banach/entropy_dial.hpp"
#include "entropy_banach/errors.hpp"

#include "support.hpp"

using namespace eb;

namespace {

// Stern's diatomic sequence: CW term n (from 1) is s(n)/s(n+1).
long stern(long n) {
  if (n < 2) return n;
  return n % 2 == 0 ? stern(n / 2) : stern(n / 2) + stern(n / 2 + 1);
}

}  // namespace

TEST_CASE("calkin wilf matches the diatomic sequence") {
  auto cw = calkin_wilf(200);
  for (long n = 1; n <= 200; ++n) CHECK(cw[n - 1] == frac(stern(n), stern(n + 1)));
  std::set<std::pair<long, long>> seen;
  for (const auto& q : cw) seen.insert({q.get_num().get_si(), q.get_den().get_si()});
  CHECK(seen.size() == cw.size());
}

TEST_CASE("enumeration never more than doubles") {
  auto e = rational_enumeration(400);
  const std::vector<Q> head{Q(1), frac(1, 2), Q(1), Q(2), frac(1, 3)};
  for (std::size_t k = 0; k < head.size(); ++k) CHECK(e[k] == head[k]);
  for (std::size_t k = 0; k + 1 < e.size(); ++k) CHECK(e[k + 1] <= 2 * e[k]);
  std::vector<Q> cw = calkin_wilf(30);
  for (const auto& q : cw) CHECK(std::find(e.begin(), e.end(), q) != e.end());
  CHECK_THROWS_AS(rational_enumeration(0), DomainError);
}

TEST_CASE("theta interpolates the zigzag") {
  for (int d : {3, 5, 7}) {
    PLMap z = theta(Q(1), d);
    CHECK(lap_count(crop(z, Q(9), Q(10))) == d);
    PLMap id = theta(Q(0), d);
    for (int k = 0; k <= 24; ++k) CHECK(id(frac(k, 2)) == frac(k, 2));
  }
  CHECK_THROWS_AS(theta(frac(1, 2), 4), DomainError);
  CHECK_THROWS_AS(theta(Q(2), 3), DomainError);
}

TEST_CASE("entropy of theta grows with a") {
  DialConfig cfg;
  cfg.t = std::log(2.0);
  double prev = -1.0;
  for (const Q a : {frac(1, 2), frac(3, 4), Q(1)}) {
    RValue r = r_of_a(a, cfg);
    CHECK(r.value >= prev - r.width);
    prev = r.value;
  }
  CHECK(prev == doctest::Approx(std::log(3.0)).epsilon(0.02));
}

TEST_CASE("scales sit in disjoint windows") {
  for (int n = 0; n < 10; ++n) {
    CHECK(dial_x(n) == pow2(-2 * n));
    CHECK(dial_I(n + 1).hi <= dial_I(n).lo);
  }
}

TEST_CASE("dial map restricts to scaled copies of theta") {
  DialConfig cfg;
  cfg.t = std::log(2.0);
  cfg.a_star = frac(21, 32);
  cfg.N = 6;
  PLMap f = build_dial_map(cfg);
  PLMap th = theta(cfg.a_star, cfg.d);
  auto lambdas = rational_enumeration(cfg.N + 1);
  for (int n = 0; n <= cfg.N; ++n) {
    Q xn = dial_x(n);
    for (int k = 0; k <= 20; ++k) {
      Q u = 9 + frac(k, 20);
      CHECK(f(xn * u / 10) == lambdas[n] * xn / 10 * th(u));
      CHECK(f(-xn * u / 10) == f(xn * u / 10));
    }
  }
}

TEST_CASE("find_a_star rejects impossible targets") {
  DialConfig cfg;
  cfg.t = 0;
  CHECK_THROWS_AS(find_a_star(0.0, cfg), ConfigError);
  CHECK_THROWS_AS(find_a_star(std::log(3.0) + 0.1, cfg), ConfigError);
}

TEST_CASE("dial lambda check rejects zero") {
  DialConfig cfg;
  cfg.t = std::log(2.0);
  cfg.a_star = frac(21, 32);
  cfg.N = 4;
  CHECK_THROWS(dial_entropy_check(cfg, {Q(0)}));
}
