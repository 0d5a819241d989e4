#include "entropy_banach/universal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entropy_banach/errors.hpp"

namespace eb {

namespace {

std::vector<Q> dyadic_scales(int N) {
  std::vector<Q> p;
  p.reserve(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) p.push_back(pow2(-n));
  return p;
}

}  // namespace

ScaleSchedule geometric_schedule(const Q& ratio, int N) {
  if (N < 0) throw DomainError("schedule truncation must be >= 0");
  if (!(ratio > Q(1, 2) && ratio < 1))
    throw DomainError("geometric ratio must lie in (1/2, 1), got " + format_q(ratio));
  ScaleSchedule s;
  s.kind = ScheduleKind::geometric;
  s.ratio_or_alpha = ratio;
  s.N = N;
  s.p = dyadic_scales(N);
  Q q(1);
  for (int n = 0; n <= N; ++n, q *= ratio) s.q.push_back(q);
  return s;
}

ScaleSchedule hoelder_schedule(const Q& alpha, int N) {
  if (N < 0) throw DomainError("schedule truncation must be >= 0");
  if (!(alpha > 0 && alpha < 1))
    throw DomainError("hoelder exponent must lie in (0, 1), got " + format_q(alpha));
  ScaleSchedule s;
  s.kind = ScheduleKind::hoelder;
  s.ratio_or_alpha = alpha;
  s.N = N;
  s.p = dyadic_scales(N);
  const double a = to_double(alpha);
  for (int n = 0; n <= N; ++n) s.q.emplace_back(std::exp2(-a * n));
  if (auto why = check_schedule(s); !why.empty())
    throw DomainError("hoelder schedule not representable: " + why);
  return s;
}

ScaleSchedule with_truncation(const ScaleSchedule& s, int N) {
  return s.kind == ScheduleKind::geometric ? geometric_schedule(s.ratio_or_alpha, N)
                                           : hoelder_schedule(s.ratio_or_alpha, N);
}

std::string check_schedule(const ScaleSchedule& s) {
  if (s.p.size() != static_cast<std::size_t>(s.N) + 1 || s.q.size() != s.p.size())
    return "list lengths differ from N + 1";
  if (s.q[0] != 1) return "q_0 != 1";
  for (int n = 0; n <= s.N; ++n) {
    auto i = static_cast<std::size_t>(n);
    if (s.q[i] < s.p[i]) return "q_n < p_n at n = " + std::to_string(n);
    if (n > 0 && !(s.q[i] < s.q[i - 1]))
      return "q_n not decreasing at n = " + std::to_string(n);
    if (n > 0 && !(s.q[i] / s.p[i] > s.q[i - 1] / s.p[i - 1]))
      return "q_n / p_n not increasing at n = " + std::to_string(n);
  }
  return {};
}

IntervalQ psi_I(int n) {
  Q p = pow2(-n);
  return {Q(3, 4) * p, Q(5, 4) * p};
}

IntervalQ psi_J(int n) {
  Q p = pow2(-n);
  return {Q(2, 3) * p, Q(4, 3) * p};
}

PLMap psi(const PLMap& f, const ScaleSchedule& sched) {
  if (f.domain().lo != 0 || f.domain().hi != 1)
    throw DomainError("psi needs f on [0, 1]");
  if (auto why = check_schedule(sched); !why.empty())
    throw DomainError("invalid schedule: " + why);
  std::vector<Q> ys{Q(0)}, vs{Q(0)};
  for (int n = sched.N; n >= 0; --n) {
    const Q& p = sched.p[static_cast<std::size_t>(n)];
    const Q& q = sched.q[static_cast<std::size_t>(n)];
    ys.push_back(Q(2, 3) * p);
    vs.push_back(Q(0));
    for (std::size_t k = 0; k < f.size(); ++k) {
      ys.push_back(p * (f.breakpoints()[k] + Q(3, 2)) / 2);
      vs.push_back(q * f.values()[k]);
    }
  }
  ys.push_back(Q(4, 3));
  vs.push_back(Q(0));
  return even_extension(PLMap(std::move(ys), std::move(vs)));
}

int psi_horseshoe_level(const PLMap& f, const ScaleSchedule& sched, int d, int limit) {
  const Q norm = sup_norm(f);
  if (sgn(norm) == 0) return -1;
  int start = std::max(d - 1, 0);
  for (int top = std::max({sched.N, 2 * d + 8, 16}); start <= limit; top *= 2) {
    top = std::min(top, limit);
    ScaleSchedule s = top == sched.N ? sched : with_truncation(sched, top);
    for (int n = start; n <= top; ++n)
      if (s.q[static_cast<std::size_t>(n)] * norm > pow2(d - n)) return n;
    start = top + 1;
  }
  return -1;
}

HorseshoeCertificate psi_horseshoe(const PLMap& f, const ScaleSchedule& sched, int d) {
  if (d < 2) throw DomainError("psi_horseshoe needs d >= 2");
  const Q norm = sup_norm(f);
  if (sgn(norm) == 0) throw DomainError("psi_horseshoe needs a nonzero f");
  int n = -1;
  for (int m = std::max(d - 1, 0); m <= sched.N; ++m) {
    if (sched.q[static_cast<std::size_t>(m)] * norm > pow2(d - m)) {
      n = m;
      break;
    }
  }
  if (n < 0) {
    int needed = psi_horseshoe_level(f, sched, d);
    throw TruncationError("truncation N = " + std::to_string(sched.N) +
                              " too small for a " + std::to_string(d) + "-horseshoe",
                          needed);
  }
  bool positive = std::any_of(f.values().begin(), f.values().end(),
                              [&norm](const Q& v) { return v == norm; });
  HorseshoeCertificate cert;
  cert.d = d;
  cert.k = 1;
  for (int i = n - d + 1; i <= n; ++i) {
    IntervalQ j = psi_J(i);
    cert.intervals.push_back(positive ? j : IntervalQ(-j.hi, -j.lo));
  }
  std::sort(cert.intervals.begin(), cert.intervals.end(),
            [](const IntervalQ& a, const IntervalQ& b) { return a.lo < b.lo; });
  if (auto why = check_certificate(psi(f, sched), cert); !why.empty())
    throw Error("psi_horseshoe certificate failed validation: " + why);
  return cert;
}

double holder_quotient(const PLMap& g, double alpha, const std::vector<Q>& grid) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("holder exponent must lie in (0, 1)");
  if (grid.size() < 2) throw DomainError("holder_quotient needs >= 2 grid points");
  std::vector<Q> pts = grid;
  pts.insert(pts.end(), g.breakpoints().begin(), g.breakpoints().end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<double> xs, vs;
  for (const auto& x : pts) {
    xs.push_back(to_double(x));
    vs.push_back(to_double(g(x)));
  }
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double dx = xs[j] - xs[i];
      if (dx > 1.0 + 1e-12 || (dx >= 1.0 - 1e-12 && pts[j] - pts[i] > 1)) break;
      double quotient = std::abs(vs[j] - vs[i]) / std::pow(dx, alpha);
      best = std::max(best, quotient);
    }
  }
  return best;
}

}  // namespace eb
