#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entropy_banach/entropy.hpp"
#include "entropy_banach/plmap.hpp"

namespace eb {

/// a[i][j] = (-1)^i for j < i and (-1)^(i+1) for j >= i (1-based).
struct SignMatrix {
  int n = 0;
  std::vector<std::vector<int>> a;  // 0-based storage

  int at(int i, int j) const { return a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]; }
};

SignMatrix build_An(int n);

/// Closed-form solution of A_n alpha = beta.
std::vector<Q> solve_An(int n, const std::vector<Q>& beta);

struct GammaSchedule {
  int M = 0;
  std::vector<Q> gammas;  // gamma_1 .. gamma_M
};

/// Backward recursion gamma_M = 1, gamma_m = tail_factor * sum_{i>m} 2(i+3) gamma_i,
/// normalized so gamma_1 = 1.
GammaSchedule gamma_schedule(int M, const Q& tail_factor);
/// sum_{i=m+1}^{M} 2(i+3) gamma_i
Q gamma_tail(const GammaSchedule& s, int m);
/// Empty when gamma_m > gamma_tail(m) for all m < M.
std::string check_gamma(const GammaSchedule& s);

/// Dyadic sign system: member i is +1 on even and -1 on odd level-i cells,
/// with linear ramps of half-width delta across each interior cut.
struct RademacherModel {
  int N = 0;
  Q delta;

  PLMap member(int level) const;
  Q value(int level, const Q& x) const;
};

/// Throws ConfigError unless 0 < delta < 2^-(N+2).
RademacherModel build_rademacher(int N, const Q& delta);

/// Midpoint of the level-|pattern| cell on which member i equals pattern[i-1].
Q sign_point(const RademacherModel& model, const std::vector<int>& pattern);

struct WitnessStep {
  int m = 0;
  int n = 0;                   // n(m)
  Q epsilon;                   // eps(m)
  IntervalQ J{Q(0), Q(0)};     // [x0 - eps, x0 + eps]
  Q oscillation;               // of the previous partial sum on J
  std::vector<Q> beta;
  std::vector<Q> alpha;
  std::vector<int> levels;     // model level hosting column j
  std::vector<int> rows;       // i(1) .. i(m+3)
  std::vector<Q> points;       // x_{i(1)} < ... < x_{i(m+3)}
  HorseshoeCertificate certificate;
};

struct WitnessReport {
  PLMap f{std::vector<Q>{Q(0)}, std::vector<Q>{Q(0)}};
  Q x0;
  RademacherModel model;
  GammaSchedule gammas;
  std::vector<WitnessStep> steps;
  Q coefficient_l1_norm;
};

/// Finite truncation of the l1 witness with certified (m+2)-horseshoes on
/// nested J(m), m = 1..M. `delta` defaults to 2^-(L+3) for the number of
/// levels L used. Throws BudgetError when the oscillation condition cannot
/// be met or a given delta is too large.
WitnessReport ell1_witness(std::optional<Q> delta, int M, const GammaSchedule& schedule);

/// Re-runs every exact check on a report; empty string when all pass.
std::string verify_witness(const WitnessReport& report);

}  // namespace eb
