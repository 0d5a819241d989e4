#include "entropy_banach/ellone.hpp"

#include <algorithm>
#include <string>

#include "entropy_banach/errors.hpp"

namespace eb {

SignMatrix build_An(int n) {
  if (n < 2) throw DomainError("build_An needs n >= 2");
  SignMatrix s;
  s.n = n;
  s.a.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int i = 1; i <= n; ++i) {
    int below = (i % 2 == 0) ? 1 : -1;  // (-1)^i
    for (int j = 1; j <= n; ++j)
      s.a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
          j < i ? below : -below;
  }
  return s;
}

std::vector<Q> solve_An(int n, const std::vector<Q>& beta) {
  if (n < 2) throw DomainError("solve_An needs n >= 2");
  if (beta.size() != static_cast<std::size_t>(n))
    throw DomainError("solve_An: beta has length " + std::to_string(beta.size()) +
                      ", expected " + std::to_string(n));
  std::vector<Q> alpha(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) {
    Q num = beta[static_cast<std::size_t>(i - 1)] + beta[static_cast<std::size_t>(i)];
    alpha[static_cast<std::size_t>(i - 1)] = (i % 2 == 1) ? Q(num / 2) : Q(-num / 2);
  }
  const Q& last = beta[static_cast<std::size_t>(n - 1)];
  alpha.back() = (beta[0] + ((n % 2 == 1) ? last : Q(-last))) / 2;
  return alpha;
}

GammaSchedule gamma_schedule(int M, const Q& tail_factor) {
  if (M < 1) throw DomainError("gamma_schedule needs M >= 1");
  if (!(tail_factor > 1)) throw DomainError("gamma_schedule needs tail_factor > 1");
  GammaSchedule s;
  s.M = M;
  s.gammas.assign(static_cast<std::size_t>(M), Q(0));
  s.gammas.back() = 1;
  for (int m = M - 1; m >= 1; --m) s.gammas[static_cast<std::size_t>(m - 1)] = tail_factor * gamma_tail(s, m);
  Q first = s.gammas.front();
  for (auto& g : s.gammas) g /= first;
  return s;
}

Q gamma_tail(const GammaSchedule& s, int m) {
  Q tail(0);
  for (int i = m + 1; i <= s.M; ++i) tail += 2 * (i + 3) * s.gammas[static_cast<std::size_t>(i - 1)];
  return tail;
}

std::string check_gamma(const GammaSchedule& s) {
  if (s.gammas.size() != static_cast<std::size_t>(s.M)) return "length differs from M";
  for (int m = 1; m <= s.M; ++m) {
    const Q& g = s.gammas[static_cast<std::size_t>(m - 1)];
    if (sgn(g) <= 0) return "gamma_" + std::to_string(m) + " is not positive";
    if (m < s.M && !(g > gamma_tail(s, m)))
      return "tail condition fails at m = " + std::to_string(m);
  }
  return {};
}

namespace {

int cell_sign(const mpz_class& k) { return mpz_odd_p(k.get_mpz_t()) ? -1 : 1; }

mpz_class floor_q(const Q& x) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

void check_level(const RademacherModel& model, int level) {
  if (level < 1 || level > model.N)
    throw DomainError("level " + std::to_string(level) + " outside 1.." + std::to_string(model.N));
}

}  // namespace

RademacherModel build_rademacher(int N, const Q& delta) {
  if (N < 1) throw DomainError("build_rademacher needs N >= 1");
  Q bound = pow2(-(N + 2));
  if (!(delta > 0 && delta < bound))
    throw ConfigError("delta must satisfy 0 < delta < " + format_q(bound) + " for N = " +
                      std::to_string(N));
  return RademacherModel{N, delta};
}

PLMap RademacherModel::member(int level) const {
  check_level(*this, level);
  const mpz_class cells = mpz_class(1) << level;
  const long count = 1L << level;
  std::vector<Q> xs, ys;
  xs.reserve(static_cast<std::size_t>(2 * count));
  ys.reserve(static_cast<std::size_t>(2 * count));
  xs.emplace_back(0);
  ys.emplace_back(1);
  for (long k = 1; k < count; ++k) {
    Q cut(mpz_class(k), cells);
    int left = (k % 2 == 1) ? 1 : -1;
    xs.push_back(cut - delta);
    ys.emplace_back(left);
    xs.push_back(cut + delta);
    ys.emplace_back(-left);
  }
  xs.emplace_back(1);
  ys.emplace_back(-1);
  return PLMap(std::move(xs), std::move(ys));
}

Q RademacherModel::value(int level, const Q& x) const {
  check_level(*this, level);
  const mpz_class cells = mpz_class(1) << level;
  if (x <= 0) return Q(1);
  if (x >= 1) return Q(-1);
  Q scaled = x * cells;
  mpz_class nearest = floor_q(scaled + Q(1, 2));
  if (nearest >= 1 && nearest < cells) {
    Q cut(nearest, cells);
    cut.canonicalize();
    if (abs_q(x - cut) < delta) {
      Q left(cell_sign(nearest - 1));
      Q right(cell_sign(nearest));
      return left + (x - (cut - delta)) * (right - left) / (2 * delta);
    }
  }
  mpz_class cell = floor_q(scaled);
  return Q(cell_sign(cell));
}

Q sign_point(const RademacherModel& model, const std::vector<int>& pattern) {
  if (pattern.size() > static_cast<std::size_t>(model.N))
    throw DomainError("sign pattern longer than the model");
  if (pattern.empty()) return Q(1, 2);
  mpz_class k = 0;
  for (int s : pattern) {
    if (s != 1 && s != -1) throw DomainError("sign pattern entries must be +1 or -1");
    k = 2 * k + (s == -1 ? 1 : 0);
  }
  Q x(2 * k + 1, mpz_class(1) << (pattern.size() + 1));
  x.canonicalize();
  return x;
}

namespace {

struct Pass {
  std::vector<WitnessStep> steps;
  std::vector<std::pair<int, int>> active;  // active columns (0-based) of each step
  PLMap f{std::vector<Q>{Q(0)}, std::vector<Q>{Q(0)}};
  Q x0;
  int levels_needed = 0;
};

// One construction at a fixed number of model levels; the level count it
// actually needs is returned for the caller's fixed-point loop.
Pass construct(const RademacherModel& model, int M, const GammaSchedule& gs) {
  Pass out;
  out.x0 = pow2(-(model.N + 1));
  out.f = scale(model.member(1), out.x0);
  int prev_n = 0;
  int prev_e = 0;
  int next_level = 2;
  for (int m = 1; m <= M; ++m) {
    WitnessStep st;
    st.m = m;
    st.n = std::max(prev_n + 2, m + 4);
    const Q& gamma = gs.gammas[static_cast<std::size_t>(m - 1)];
    st.beta.assign(static_cast<std::size_t>(st.n), Q(0));
    for (int j = 1; j <= m + 3; ++j) {
      st.rows.push_back(j + 1);
      st.beta[static_cast<std::size_t>(j)] = (j % 2 == 0) ? gamma : Q(-gamma);
    }
    st.alpha = solve_An(st.n, st.beta);
    std::vector<int> cols;
    for (int c = 0; c < st.n; ++c)
      if (sgn(st.alpha[static_cast<std::size_t>(c)]) != 0) cols.push_back(c);
    if (cols.size() != 2)
      throw Error("ell1_witness: unexpected support of the step solution");

    const Q budget = (gamma - gamma_tail(gs, m)) / 2;
    int e = prev_e + 1;
    constexpr int kMaxExponent = 1024;
    for (; e <= kMaxExponent; ++e) {
      st.epsilon = pow2(-e);
      st.J = IntervalQ(out.x0 - st.epsilon, out.x0 + st.epsilon);
      st.oscillation = oscillation(out.f, st.J);
      if (st.epsilon + st.oscillation <= budget) break;
    }
    if (e > kMaxExponent)
      throw BudgetError("oscillation condition unsatisfiable at step " + std::to_string(m) +
                            "; increase the model depth or the tail factor",
                        m);

    const int cuts = (m + 4) / 2;  // ceil((m + 3) / 2)
    const int k_max = 2 * cuts - 1;
    int a = next_level;
    while (Q(k_max + 1) * pow2(-a) > st.epsilon) ++a;
    const int b = a + 1;
    next_level = b + 1;
    st.levels.assign(static_cast<std::size_t>(st.n), -1);
    st.levels[static_cast<std::size_t>(cols[0])] = a;
    st.levels[static_cast<std::size_t>(cols[1])] = b;
    if (b > model.N) {
      out.levels_needed = b;
      out.steps.push_back(std::move(st));
      return out;  // caller retries with more levels
    }
    std::vector<PLMap> parts{out.f, model.member(a), model.member(b)};
    std::vector<Q> coeffs{Q(1), st.alpha[static_cast<std::size_t>(cols[0])],
                          st.alpha[static_cast<std::size_t>(cols[1])]};
    out.f = linear_combination(coeffs, parts);
    out.active.emplace_back(cols[0], cols[1]);
    out.steps.push_back(std::move(st));
    prev_n = out.steps.back().n;
    prev_e = e;
  }

  // Spare levels host the columns with zero coefficient, deepest last.
  int level = next_level;
  for (auto& st : out.steps)
    for (auto& l : st.levels)
      if (l < 0) l = level++;
  out.levels_needed = level - 1;
  return out;
}

void place_points(const RademacherModel& model, Pass& pass) {
  for (std::size_t s = 0; s < pass.steps.size(); ++s) {
    auto& st = pass.steps[s];
    const SignMatrix A = build_An(st.n);
    const int a = st.levels[static_cast<std::size_t>(pass.active[s].first)];
    const int b = st.levels[static_cast<std::size_t>(pass.active[s].second)];
    st.points.clear();
    for (int j = 1; j <= st.m + 3; ++j) {
      const int row = st.rows[static_cast<std::size_t>(j - 1)];
      const long k = 2L * ((j + 1) / 2) - 1;  // odd level-a cut
      const long cell = (j % 2 == 1) ? 2 * k - 1 : 2 * k;
      std::vector<int> pattern(static_cast<std::size_t>(model.N), 1);
      for (int l = 1; l <= b; ++l)
        pattern[static_cast<std::size_t>(l - 1)] = ((cell >> (b - l)) & 1) ? -1 : 1;
      for (int c = 0; c < st.n; ++c) {
        int l = st.levels[static_cast<std::size_t>(c)];
        if (l > b) pattern[static_cast<std::size_t>(l - 1)] = A.at(row, c + 1);
      }
      Q x = sign_point(model, pattern);
      for (int c = 0; c < st.n; ++c) {
        int l = st.levels[static_cast<std::size_t>(c)];
        if (model.value(l, x) != A.at(row, c + 1))
          throw Error("ell1_witness: row " + std::to_string(row) + " of step " +
                      std::to_string(st.m) + " not realized (level " + std::to_string(l) +
                      ", levels " + std::to_string(a) + "/" + std::to_string(b) + ")");
      }
      st.points.push_back(x);
    }
    st.certificate.d = st.m + 2;
    st.certificate.k = 1;
    st.certificate.intervals.clear();
    for (std::size_t i = 0; i + 1 < st.points.size(); ++i)
      st.certificate.intervals.emplace_back(st.points[i], st.points[i + 1]);
  }
}

}  // namespace

WitnessReport ell1_witness(std::optional<Q> delta, int M, const GammaSchedule& schedule) {
  if (M < 1) throw DomainError("ell1_witness needs M >= 1");
  if (schedule.M < M) throw DomainError("gamma schedule shorter than M");
  if (auto why = check_gamma(schedule); !why.empty())
    throw DomainError("invalid gamma schedule: " + why);

  int levels = 40;
  Pass pass;
  RademacherModel model;
  for (int attempt = 0;; ++attempt) {
    model = RademacherModel{levels, pow2(-(levels + 3))};
    pass = construct(model, M, schedule);
    if (pass.levels_needed == levels) break;
    if (attempt >= 8) {
      if (pass.levels_needed <= levels) break;
      throw BudgetError("level assignment did not settle", static_cast<int>(pass.steps.size()));
    }
    levels = pass.levels_needed;
  }
  if (delta) {
    Q bound = pow2(-(model.N + 2));
    if (!(*delta > 0 && *delta < bound))
      throw BudgetError("delta too large for the " + std::to_string(model.N) +
                            " levels required; need delta < " + format_q(bound),
                        M);
    model.delta = *delta;
    pass = construct(model, M, schedule);
    if (pass.levels_needed > model.N)
      throw BudgetError("delta changes the level budget", M);
  }
  place_points(model, pass);

  WitnessReport report;
  report.f = std::move(pass.f);
  report.x0 = pass.x0;
  report.model = model;
  report.gammas = schedule;
  report.gammas.M = M;
  report.gammas.gammas.resize(static_cast<std::size_t>(M));
  report.steps = std::move(pass.steps);
  report.coefficient_l1_norm = report.x0;
  for (const auto& st : report.steps)
    for (const auto& a : st.alpha) report.coefficient_l1_norm += abs_q(a);
  if (auto why = verify_witness(report); !why.empty())
    throw Error("ell1_witness failed verification: " + why);
  return report;
}

std::string verify_witness(const WitnessReport& r) {
  if (r.f(r.x0) != r.x0) return "f(x0) != x0";
  Q bound(0);
  for (const auto& st : r.steps) bound += 2 * (st.m + 3) * r.gammas.gammas[static_cast<std::size_t>(st.m - 1)];
  if (r.coefficient_l1_norm > bound) return "coefficient l1 norm exceeds the summability bound";
  for (std::size_t s = 0; s < r.steps.size(); ++s) {
    const auto& st = r.steps[s];
    const std::string tag = "step " + std::to_string(st.m) + ": ";
    if (s > 0 && !(st.epsilon < r.steps[s - 1].epsilon)) return tag + "J(m) not nested";
    if (st.points.size() != static_cast<std::size_t>(st.m + 3)) return tag + "wrong point count";
    for (std::size_t j = 0; j < st.points.size(); ++j) {
      const Q& x = st.points[j];
      if (!st.J.contains(x)) return tag + "point outside J(m)";
      if (j > 0 && !(st.points[j - 1] < x)) return tag + "points not increasing";
      Q y = r.f(x);
      bool low = (j % 2 == 0);  // j is 0-based, so even j is an odd index i(j)
      if (low ? !(y <= r.x0 - st.epsilon) : !(y >= r.x0 + st.epsilon))
        return tag + "alternation fails at point " + std::to_string(j + 1);
    }
    if (st.certificate.d != st.m + 2) return tag + "certificate size != m + 2";
    if (auto why = check_certificate(r.f, st.certificate); !why.empty()) return tag + why;
  }
  return {};
}

}  // namespace eb
