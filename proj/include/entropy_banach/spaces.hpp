#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "entropy_banach/entropy.hpp"
#include "entropy_banach/plmap.hpp"

namespace eb {

/// Finite family spanning a linear space of constant-extended functions.
struct FunctionFamily {
  std::vector<PLMap> members;
  std::string label;
};

/// Points x_1 < ... < x_n with an invertible evaluation matrix
/// (f_j(x_i)); `gram_determinant` is its determinant for the sorted points.
struct IndependencePoints {
  std::vector<Q> points;
  Q gram_determinant;
};

using QMatrix = std::vector<std::vector<Q>>;

/// Solves A x = b exactly by Gaussian elimination. Throws DomainError when A
/// is singular.
std::vector<Q> solve_linear(QMatrix a, std::vector<Q> b);
Q determinant(QMatrix a);

/// Greedy rank extension over `grid`: point k+1 is the first grid point at
/// which f_{k+1} departs from its interpolant by f_1..f_k. Throws
/// DependencyError with the relation (a_1, ..., a_k, -1) when no such point
/// exists.
IndependencePoints independent_points(const FunctionFamily& fs, const std::vector<Q>& grid);

struct HorseshoeCombination {
  PLMap f;
  std::vector<Q> coefficients;
  HorseshoeCertificate certificate;
};

/// f = sum a_i f_i with f(x_i) = x_1 for odd i and x_n for even i, together
/// with the (n-1)-horseshoe on the intervals [x_i, x_{i+1}].
HorseshoeCombination horseshoe_combination(const FunctionFamily& fs,
                                           const IndependencePoints& pts);

/// Polynomial with the given coefficients (constant term first) sampled on
/// [a, b], resolution doubled until the lap count is stable; frozen outside
/// [a, b]. Throws DomainError on bad arguments and NumericError if the lap
/// count never stabilizes.
PLMap cropped_polynomial(const std::vector<Q>& coeffs, const Q& a, const Q& b,
                         int resolution);

/// Sum of PL surrogates of a (x - 2 + 1/n)(2 - 1/(n+1) - x) on
/// J_n = [2 - 1/n, 2 - 1/(n+1)], zero elsewhere on [1, 2].
PLMap bump_sum(const std::vector<std::pair<int, Q>>& params, int samples_per_bump = 16);

/// lambda * sin sampled on [-|lambda|-1, |lambda|+1] with `resolution` nodes
/// per period (>= 64).
PLMap sin_scaled(double lambda, int resolution = 64);

/// n random PL functions on the shared nodes, values uniform in [-1, 1] on a
/// 1/64 lattice.
FunctionFamily random_pl_family(int n, const std::vector<Q>& nodes, std::mt19937_64& rng);

}  // namespace eb
