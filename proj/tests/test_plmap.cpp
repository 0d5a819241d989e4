#include <doctest.h>

#include <random>

#include "entropy_banach/errors.hpp"
#include "entropy_banach/plmap.hpp"

#include "support.hpp"

using namespace eb;

namespace {

PLMap tent() { return PLMap({Q(0), frac(1, 2), Q(1)}, {Q(0), Q(1), Q(0)}); }

Q random_q(std::mt19937_64& rng, int den, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo * den, hi * den);
  Q x = frac(d(rng), den);
  x.canonicalize();
  return x;
}

PLMap random_map(std::mt19937_64& rng, int nodes) {
  std::vector<Q> xs, ys;
  for (int k = 0; k <= nodes; ++k) {
    xs.push_back(frac(k, nodes));
    ys.push_back(random_q(rng, 16, 0, 1));
  }
  return PLMap(xs, ys);
}

// Sign changes of the slope sequence, ignoring flat pieces.
int brute_laps(const PLMap& f) {
  int laps = 1, last = 0;
  for (std::size_t k = 0; k + 1 < f.size(); ++k) {
    int s = sgn(Q(f.values()[k + 1] - f.values()[k]));
    if (s == 0) continue;
    if (last != 0 && s != last) ++laps;
    last = s;
  }
  return laps;
}

}  // namespace

TEST_CASE("construction rejects bad input") {
  CHECK_THROWS_AS(PLMap({}, {}), DomainError);
  CHECK_THROWS_AS(PLMap({Q(0), Q(1)}, {Q(0)}), DomainError);
  CHECK_THROWS_AS(PLMap({Q(1), Q(0)}, {Q(0), Q(1)}), DomainError);
  CHECK_THROWS_AS(PLMap({Q(0), Q(0)}, {Q(0), Q(1)}), DomainError);
}

TEST_CASE("evaluation interpolates and extends by constants") {
  PLMap f = tent();
  CHECK(f(frac(1, 4)) == frac(1, 2));
  CHECK(f(frac(3, 4)) == frac(1, 2));
  CHECK(f(Q(-5)) == 0);
  CHECK(f(Q(7)) == 0);
  PLMap g({Q(0), Q(1)}, {Q(2), Q(3)});
  CHECK(g(Q(-1)) == 2);
  CHECK(g(Q(2)) == 3);
}

TEST_CASE("composition agrees with pointwise evaluation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    PLMap f = random_map(rng, 5);
    PLMap g = random_map(rng, 7);
    PLMap h = compose(f, g);
    for (int s = 0; s < 30; ++s) {
      Q x = random_q(rng, 97, 0, 1);
      CHECK(h(x) == f(g(x)));
    }
    for (const auto& x : g.breakpoints()) CHECK(h(x) == f(g(x)));
  }
}

TEST_CASE("composition respects the breakpoint cap") {
  PLMap t = tent();
  PLMap g = t;
  for (int i = 0; i < 4; ++i) g = compose(t, g);
  CHECK(g.size() == 33);
  CHECK_THROWS_AS(compose(t, g, 40), ResourceError);
}

TEST_CASE("lap count matches slope sign changes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    PLMap f = random_map(rng, 9);
    CHECK(lap_count(f) == brute_laps(f));
  }
  CHECK(lap_count(constant_map(Q(1))) == 1);
  CHECK(lap_count(tent()) == 2);
}

TEST_CASE("linear combination and scaling are pointwise") {
  std::mt19937_64 rng(3);
  PLMap f = random_map(rng, 4);
  PLMap g = random_map(rng, 6);
  std::vector<Q> c{frac(3, 2), frac(-7, 5)};
  std::vector<PLMap> fs{f, g};
  PLMap h = linear_combination(c, fs);
  PLMap s = scale(f, Q(-2));
  for (int k = 0; k <= 60; ++k) {
    Q x = frac(k, 60);
    CHECK(h(x) == c[0] * f(x) + c[1] * g(x));
    CHECK(s(x) == -2 * f(x));
  }
}

TEST_CASE("simplified keeps the function and drops collinear nodes") {
  PLMap f({Q(0), frac(1, 3), frac(2, 3), Q(1)}, {Q(0), frac(1, 3), frac(2, 3), Q(1)});
  PLMap s = simplified(f);
  CHECK(s.size() == 2);
  CHECK(same_function(f, s));
  CHECK_FALSE(same_function(f, tent()));
}

TEST_CASE("crop, image, oscillation and sup norm") {
  PLMap f = tent();
  PLMap c = crop(f, frac(1, 4), frac(3, 4));
  CHECK(c.domain() == IntervalQ(frac(1, 4), frac(3, 4)));
  CHECK(c(frac(1, 2)) == 1);
  IntervalQ im = image_interval(f, IntervalQ(frac(1, 4), frac(3, 4)));
  CHECK(im == IntervalQ(frac(1, 2), Q(1)));
  CHECK(oscillation(f, IntervalQ(frac(1, 4), frac(3, 4))) == frac(1, 2));
  CHECK(sup_norm(scale(f, Q(-3))) == 3);
}

TEST_CASE("even extension is symmetric") {
  PLMap f({Q(0), frac(1, 2), Q(1)}, {Q(1), Q(0), Q(2)});
  PLMap e = even_extension(f);
  CHECK(e.domain() == IntervalQ(Q(-1), Q(1)));
  for (int k = 0; k <= 20; ++k) {
    Q x = frac(k, 20);
    CHECK(e(x) == f(x));
    CHECK(e(-x) == f(x));
  }
  CHECK_THROWS_AS(even_extension(PLMap({Q(-1), Q(1)}, {Q(0), Q(1)})), DomainError);
}

TEST_CASE("sampling hits the nodes") {
  PLMap s = sample_pl_exact([](const Q& x) { return x * x; }, {Q(0), Q(1)}, 9);
  CHECK(s.size() == 9);
  for (std::size_t k = 0; k < s.size(); ++k)
    CHECK(s.values()[k] == s.breakpoints()[k] * s.breakpoints()[k]);
  PLMap d = sample_pl([](double x) { return 2 * x; }, {Q(0), Q(1)}, 5);
  CHECK(d(frac(1, 2)) == 1);
}
