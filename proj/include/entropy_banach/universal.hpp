#pragma once

#include <vector>

#include "entropy_banach/entropy.hpp"
#include "entropy_banach/plmap.hpp"

namespace eb {

enum class ScheduleKind { geometric, hoelder };

/// Scales p_n = 2^-n and amplitudes q_n for n = 0..N.
struct ScaleSchedule {
  ScheduleKind kind = ScheduleKind::geometric;
  Q ratio_or_alpha;
  int N = 0;
  std::vector<Q> p;
  std::vector<Q> q;
};

/// q_n = ratio^n, 1/2 < ratio < 1.
ScaleSchedule geometric_schedule(const Q& ratio, int N);
/// q_n = 2^(-n alpha) as double-precision dyadics, 0 < alpha < 1. Throws
/// DomainError if rounding breaks the schedule invariants.
ScaleSchedule hoelder_schedule(const Q& alpha, int N);
/// Same kind and parameter with a different truncation.
ScaleSchedule with_truncation(const ScaleSchedule& s, int N);
/// Empty string when the invariants hold, else the first violation.
std::string check_schedule(const ScaleSchedule& s);

/// [3/4 p_n, 5/4 p_n]
IntervalQ psi_I(int n);
/// closure of J_n: [2/3 p_n, 4/3 p_n]
IntervalQ psi_J(int n);

/// g on [-4/3, 4/3]: copies q_n f(2y/p_n - 3/2) on I_n, zero on the J_n
/// boundaries and on [-2/3 p_N, 2/3 p_N], linear in between, even.
PLMap psi(const PLMap& f, const ScaleSchedule& sched);

/// Smallest n >= d-1 with q_n sup|f| > p_(n-d), or -1 if none up to `limit`.
int psi_horseshoe_level(const PLMap& f, const ScaleSchedule& sched, int d, int limit = 4096);

/// d-horseshoe of psi(f, sched) on the closed J_(n-d+1), ..., J_n (mirrored
/// when |f| peaks at a negative value). Throws DomainError for f = 0 or
/// d < 2, TruncationError carrying the minimal N when sched.N is too small.
HorseshoeCertificate psi_horseshoe(const PLMap& f, const ScaleSchedule& sched, int d);

/// max |g(x) - g(y)| / |x - y|^alpha over grid and breakpoint pairs with
/// 0 < |x - y| <= 1.
double holder_quotient(const PLMap& g, double alpha, const std::vector<Q>& grid);

}  // namespace eb
