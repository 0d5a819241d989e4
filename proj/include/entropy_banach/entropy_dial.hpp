#pragma once

#include <string>
#include <vector>

#include "entropy_banach/entropy.hpp"
#include "entropy_banach/plmap.hpp"

namespace eb {

struct DialConfig {
  double t = 0.0;
  int d = 3;
  Q a_star;
  int N = 12;
  int lambda_grid_size = 101;
  int entropy_depth = 60;
  double tolerance = 1e-2;
  int golden_iterations = 10;
  EntropyOptions entropy;
};

/// (1 - a) id + a T_d on [0, 12], T_d the full d-branch map of [9, 10] onto
/// itself. Throws DomainError for even d, d < 3 or a outside [0, 1].
PLMap theta(const Q& a, int d);

struct RValue {
  double value = 0.0;       // midpoint of the best bracket
  double width = 0.0;       // its width
  Q lambda_star;            // maximizing lambda
  EntropyBounds bounds;
  std::string warning;      // set when width > tolerance
};

/// max over lambda in [9/10, 10/9] of the bracket midpoint of lambda theta_a
/// (uniform grid, then golden-section refinement around the best node).
RValue r_of_a(const Q& a, const DialConfig& cfg);

struct AStarResult {
  Q a;
  RValue r;
  double residual = 0.0;
  int iterations = 0;
  std::vector<std::pair<Q, double>> trace;
};

/// Bisection over dyadic a in [0, 1] for r(a) = t. Throws ConfigError when
/// t >= log d, t <= 0 or r(0), r(1) do not bracket t.
AStarResult find_a_star(double t, const DialConfig& cfg);

/// Calkin-Wilf order with doubling bridges so that consecutive terms
/// satisfy next <= 2 current; terms[0] = 1.
std::vector<Q> rational_enumeration(int count);
/// First `count` Calkin-Wilf rationals.
std::vector<Q> calkin_wilf(int count);

/// x_n = 4^-n
Q dial_x(int n);
/// [9/10 x_n, x_n]
IntervalQ dial_I(int n);

/// f on [-10, 10] with lambda_n (x_n / 10) Theta(10 x / x_n) on I_n for
/// n = 0..N, Theta = theta(a_star, d), scale n using rational_enumeration
/// term n. Linear elsewhere, 10 at x = 10, linear to 0 below I_N, even.
PLMap build_dial_map(const DialConfig& cfg);

struct ScaleEntropy {
  int n = 0;
  Q mu;              // lambda * lambda_n
  bool active = false;
  EntropyBounds bounds;
};

struct DialLambdaReport {
  Q lambda;
  EntropyBounds bounds;             // max over active scales
  std::vector<ScaleEntropy> scales; // active scales only
  double nearest_gap = 0.0;         // min_n |lambda lambda_n - lambda_star|
};

/// Per lambda: the scales n <= N whose box I_n x lambda f(I_n) meets the
/// diagonal, with entropy_bounds(lambda lambda_n Theta) for each.
std::vector<DialLambdaReport> dial_entropy_check(const DialConfig& cfg,
                                                 const std::vector<Q>& lambdas,
                                                 const Q& lambda_star = Q(1));

/// Entropy bracket of mu Theta for one scale factor mu.
EntropyBounds dial_scale_entropy(const DialConfig& cfg, const Q& mu, int depth);

}  // namespace eb
