#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "entropy_banach/rational.hpp"

namespace eb {

/// Breakpoint cap used by compose/iterate. 2'000'000 unless the
/// ENTROPY_BANACH_CAP environment variable holds a positive integer.
std::size_t default_breakpoint_cap();

/// Exact piecewise-linear function on [x_0, x_m], extended to the whole line
/// by its end values: f(x) = y_0 for x <= x_0 and f(x) = y_m for x >= x_m.
///
/// Instances are immutable once built; every operation below returns a new
/// map.
class PLMap {
 public:
  /// Throws DomainError if the lists are empty, differ in length, or the
  /// breakpoints are not strictly increasing.
  PLMap(std::vector<Q> breakpoints, std::vector<Q> values);

  const std::vector<Q>& breakpoints() const noexcept { return xs_; }
  const std::vector<Q>& values() const noexcept { return ys_; }
  std::size_t size() const noexcept { return xs_.size(); }
  IntervalQ domain() const { return {xs_.front(), xs_.back()}; }

  Q operator()(const Q& x) const;

  /// Index k of the segment [x_k, x_{k+1}] holding x; requires x in the
  /// open domain interior or at a breakpoint other than the last.
  std::size_t segment_of(const Q& x) const;

  /// Same node lists (not merely the same function; see same_function).
  friend bool operator==(const PLMap& a, const PLMap& b) {
    return a.xs_ == b.xs_ && a.ys_ == b.ys_;
  }

 private:
  std::vector<Q> xs_;
  std::vector<Q> ys_;
};

PLMap make_pl(std::vector<Q> breakpoints, std::vector<Q> values);
Q eval(const PLMap& f, const Q& x);

PLMap identity_map(const Q& a, const Q& b);
PLMap constant_map(const Q& c, const Q& a = Q(0), const Q& b = Q(1));

/// Drops interior breakpoints at which the slope does not change.
PLMap simplified(const PLMap& f);

/// True when f and g agree at every point of the line.
bool same_function(const PLMap& f, const PLMap& g);

/// f o g on the domain of g. The result is simplified. Throws ResourceError
/// (depth 0) when it would exceed `cap` breakpoints.
PLMap compose(const PLMap& f, const PLMap& g,
              std::size_t cap = default_breakpoint_cap());

/// Maximal monotone pieces on the domain; constant runs join a neighbour and
/// an entirely constant map has one lap.
int lap_count(const PLMap& f);

/// Points separating consecutive laps (x-coordinates, increasing). For a
/// plateau between laps the left end of the plateau is reported.
std::vector<Q> turning_points(const PLMap& f);

/// f restricted to [a, b] and frozen outside. Throws DomainError if a >= b.
PLMap crop(const PLMap& f, const Q& a, const Q& b);

/// sum_i coeffs[i] * fs[i] on the union of the breakpoint sets.
PLMap linear_combination(std::span<const Q> coeffs, std::span<const PLMap> fs);
PLMap scale(const PLMap& f, const Q& c);

/// Exact [min, max] of f over J.
IntervalQ image_interval(const PLMap& f, const IntervalQ& j);
Q oscillation(const PLMap& f, const IntervalQ& j);
Q sup_norm(const PLMap& f);

/// For f on [0, b]: the even map on [-b, b]. Throws DomainError otherwise.
PLMap even_extension(const PLMap& f);

/// Interpolates h at n equispaced rational nodes of `domain`. Sample values
/// are rounded to multiples of 2^-value_bits; a non-finite sample throws
/// NumericError. Approximation error is the caller's business.
PLMap sample_pl(const std::function<double(double)>& h, const IntervalQ& domain,
                int n, int value_bits = 40);

/// Same, for a function that is exactly computable on rationals.
PLMap sample_pl_exact(const std::function<Q(const Q&)>& h,
                      const IntervalQ& domain, int n);

}  // namespace eb
