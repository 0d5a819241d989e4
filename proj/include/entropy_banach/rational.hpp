#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace eb {

/// Exact rational scalar. gmpxx canonicalizes after every arithmetic
/// operation, so values are always in lowest terms with a positive
/// denominator.
using Q = mpq_class;

/// Closed interval [lo, hi] with exact endpoints.
struct IntervalQ {
  Q lo;
  Q hi;

  IntervalQ() = default;
  IntervalQ(Q lo_, Q hi_);

  Q length() const { return hi - lo; }
  bool contains(const Q& x) const { return lo <= x && x <= hi; }
  bool contains(const IntervalQ& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  bool degenerate() const { return lo == hi; }
  friend bool operator==(const IntervalQ& a, const IntervalQ& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

/// Parses "p/q", "p" or a plain integer string. Throws ParseError.
Q parse_q(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string format_q(const Q& x);

/// Nearest double (exact conversion happens in GMP).
double to_double(const Q& x);

/// Natural log of a positive rational, accurate for huge numerators and
/// denominators.
double log_q(const Q& x);

/// Rounds x to the nearest multiple of 2^-bits.
Q round_dyadic(double x, int bits);

/// Smallest multiple of 2^-bits that is >= x (x finite).
Q ceil_dyadic(double x, int bits);

/// 2^e for any integer e.
Q pow2(long e);

/// base^e for e >= 0.
Q pow_q(const Q& base, unsigned long e);

Q abs_q(const Q& x);

}  // namespace eb
