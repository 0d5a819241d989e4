#include <doctest.h>

#include <random>

#include "entropy_banach/checks.hpp"
#include "entropy_banach/ellone.hpp"
#include "entropy_banach/errors.hpp"

#include "support.hpp"

using namespace eb;

namespace {

// Independent construction: row i is (-1)^i left of the diagonal, the opposite on and right of it.
int an_entry(int i, int j) {
  int s = (i % 2 == 0) ? 1 : -1;
  return j < i ? s : -s;
}

}  // namespace

TEST_CASE("sign matrix layout") {
  SignMatrix a = build_An(5);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) CHECK(a.at(i, j) == an_entry(i, j));
  CHECK_THROWS_AS(build_An(1), DomainError);
}

TEST_CASE("closed form solve reproduces the right-hand side") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> v(-20, 20);
  for (int n = 2; n <= 30; ++n) {
    std::vector<Q> beta(n);
    for (auto& b : beta) b = frac(v(rng), 7);
    auto alpha = solve_An(n, beta);
    for (int i = 1; i <= n; ++i) {
      Q s = 0;
      for (int j = 1; j <= n; ++j) s += an_entry(i, j) * alpha[j - 1];
      CHECK(s == beta[i - 1]);
    }
  }
  CHECK_THROWS_AS(solve_An(4, {Q(1)}), DomainError);
}

TEST_CASE("oracle check catches a corrupted solver") {
  AnSolver good = [](int n, const std::vector<Q>& b) { return solve_An(n, b); };
  CHECK(check_an_oracle(good, 20, 20, 1).passed);
  AnSolver flipped = [](int n, const std::vector<Q>& b) {
    auto a = solve_An(n, b);
    a.back() = -a.back();
    return a;
  };
  CHECK_FALSE(check_an_oracle(flipped, 20, 20, 1).passed);
  AnSolver off_by_one = [](int n, const std::vector<Q>& b) {
    auto a = solve_An(n, b);
    if (n == 7) a[3] += frac(1, 1000);
    return a;
  };
  CHECK_FALSE(check_an_oracle(off_by_one, 20, 20, 1).passed);
}

TEST_CASE("gamma schedules satisfy the tail condition") {
  for (int M = 1; M <= 6; ++M) {
    GammaSchedule s = gamma_schedule(M, Q(2));
    CHECK(check_gamma(s).empty());
    CHECK(s.gammas.front() == 1);
    for (int m = 1; m <= M; ++m) {
      Q tail = 0;
      for (int i = m + 1; i <= M; ++i) tail += 2 * (i + 3) * s.gammas[i - 1];
      CHECK(gamma_tail(s, m) == tail);
    }
  }
  GammaSchedule flat{3, {Q(1), Q(1), Q(1)}};
  CHECK_FALSE(check_gamma(flat).empty());
  CHECK_THROWS_AS(gamma_schedule(3, Q(1)), DomainError);
}

TEST_CASE("rademacher members agree with the exact evaluator") {
  RademacherModel r = build_rademacher(5, frac(1, 1024));
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> v(0, 4096);
  for (int level = 1; level <= 5; ++level) {
    PLMap m = r.member(level);
    for (int s = 0; s < 200; ++s) {
      Q x = frac(v(rng), 4096);
      CHECK(m(x) == r.value(level, x));
    }
  }
  CHECK_THROWS_AS(build_rademacher(5, frac(1, 64)), ConfigError);
  CHECK_THROWS_AS(build_rademacher(5, Q(0)), ConfigError);
}

TEST_CASE("sign points realize every pattern") {
  RademacherModel r = build_rademacher(4, frac(1, 256));
  for (int code = 0; code < 16; ++code) {
    std::vector<int> pattern;
    for (int b = 3; b >= 0; --b) pattern.push_back((code >> b) & 1 ? -1 : 1);
    Q x = sign_point(r, pattern);
    for (int level = 1; level <= 4; ++level) CHECK(r.value(level, x) == pattern[level - 1]);
  }
  CHECK(sign_point(r, {}) == frac(1, 2));
  CHECK_THROWS_AS(sign_point(r, {1, 0}), DomainError);
}

TEST_CASE("the model is an l1 isometry on the span") {
  RademacherModel r = build_rademacher(6, frac(1, 1024));
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> v(-50, 50);
  std::vector<PLMap> members;
  for (int l = 1; l <= 6; ++l) members.push_back(r.member(l));
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Q> c(6);
    Q l1 = 0;
    for (auto& x : c) {
      x = frac(v(rng), 10);
      l1 += abs_q(x);
    }
    CHECK(sup_norm(linear_combination(c, members)) == l1);
  }
}

TEST_CASE("finite l1 witness for three steps") {
  WitnessReport w = ell1_witness(std::nullopt, 3, gamma_schedule(3, Q(2)));
  CHECK(verify_witness(w).empty());
  CHECK(w.f(w.x0) == w.x0);
  REQUIRE(w.steps.size() == 3);
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    const auto& st = w.steps[i];
    CHECK(st.certificate.d == st.m + 2);
    CHECK(check_certificate(w.f, st.certificate).empty());
    if (i > 0) CHECK(w.steps[i - 1].J.contains(st.J));
    for (std::size_t k = 0; k < st.points.size(); ++k) {
      const Q y = w.f(st.points[k]);
      if (k % 2 == 0) CHECK(y <= w.x0 - st.epsilon);
      else CHECK(y >= w.x0 + st.epsilon);
    }
  }
  // Shifting the map moves the fixed point.
  WitnessReport bad = w;
  std::vector<Q> ys = bad.f.values();
  for (auto& y : ys) y += frac(1, 1 << 20);
  bad.f = PLMap(bad.f.breakpoints(), ys);
  CHECK_FALSE(verify_witness(bad).empty());
}

TEST_CASE("a too large ramp width is refused") {
  CHECK_THROWS_AS(ell1_witness(frac(1, 8), 2, gamma_schedule(2, Q(2))), BudgetError);
}
