#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "entropy_banach/plmap.hpp"

namespace eb {

/// d intervals with pairwise disjoint interiors, each mapped by f^k over all
/// of them.
struct HorseshoeCertificate {
  int d = 0;
  int k = 1;
  std::vector<IntervalQ> intervals;
};

/// Certified bracket lower <= htop(f) <= upper. `upper` is +inf when no
/// finite bound was established. `lower_source` is "horseshoe", "markov" or
/// "none"; `lower_witness` is set exactly when the lower bound is log(d)/k of
/// the witness.
struct EntropyBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::optional<HorseshoeCertificate> lower_witness;
  int depth_used = 0;
  std::string lower_source = "none";

  double width() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
  /// Distance from t to [lower, upper] (0 when t lies inside).
  double distance_to(double t) const;
};

struct EntropyOptions {
  /// Maximal breakpoints of an explicit iterate used for horseshoe search.
  std::size_t horseshoe_breakpoint_cap = 256;
  /// Refinement level for the covering-matrix lower bound.
  int markov_refinement = 6;
  /// Maximal number of partition intervals for the covering matrix.
  std::size_t partition_cap = 4096;
  /// Maximal number of distinct orbit intervals per level in lap counting.
  std::size_t lap_state_cap = 20000;
  std::size_t breakpoint_cap = default_breakpoint_cap();
};

/// f cropped to the forward-invariant hull of f(R). A degenerate hull gives a
/// one-point map.
PLMap invariant_restriction(const PLMap& f);

/// f^k by repeated composition. Throws ResourceError carrying the largest k
/// reached within `cap`.
PLMap iterate(const PLMap& f, int k, std::size_t cap = default_breakpoint_cap());

/// f, f^2, ... while the iterate stays within `cap` breakpoints (at most
/// `depth` of them, at least f itself).
std::vector<PLMap> iterates_within(const PLMap& f, int depth, std::size_t cap);

/// Lap numbers of f^1..f^n on the domain of f, computed from the orbits of
/// the turning points and domain endpoints rather than from explicit
/// iterates, so n can be in the hundreds. Exact for maps without plateaus;
/// with plateaus the counts are upper bounds.
std::vector<mpz_class> lap_numbers(const PLMap& f, int depth,
                                   std::size_t state_cap = 20000);

/// min over k <= depth of log(lap(f^k)) / k.
double entropy_upper_lap(const PLMap& f, int depth, const EntropyOptions& opts = {});

/// Largest greedy horseshoe over breakpoint-delimited hulls. Returns (0,
/// nullopt) when no 2-horseshoe exists at this resolution.
std::pair<int, std::optional<HorseshoeCertificate>> horseshoe_max(const PLMap& f);

/// max over k <= depth of log(horseshoe_max(f^k)) / k.
std::pair<double, std::optional<HorseshoeCertificate>> entropy_lower_horseshoe(
    const PLMap& f, int depth, const EntropyOptions& opts = {});

/// log of the spectral radius of the covering matrix of the lap partition of
/// f^(r+1), maximized over r <= refinement. Throws ResourceError when even
/// refinement 0 exceeds the partition cap.
double entropy_lower_markov(const PLMap& f, int refinement,
                            const EntropyOptions& opts = {});

/// Spectral radius of a nonnegative matrix whose row i is the 0/1 indicator
/// of the column range [ranges[i].first, ranges[i].second] (empty when
/// first > second).
double banded_spectral_radius(const std::vector<std::pair<long, long>>& ranges);

/// Both bounds on invariant_restriction(f).
EntropyBounds entropy_bounds(const PLMap& f, int depth, const EntropyOptions& opts = {});

/// Exact check of disjoint interiors and covering for f^k. Returns an empty
/// string on success, otherwise the reason.
std::string check_certificate(const PLMap& f, const HorseshoeCertificate& cert,
                              std::size_t cap = default_breakpoint_cap());

/// log(d)/k after check_certificate succeeds; throws DomainError otherwise.
double certified_lower_bound(const PLMap& f, const HorseshoeCertificate& cert);

}  // namespace eb
