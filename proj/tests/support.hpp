#pragma once

#include "entropy_banach/rational.hpp"

// a/b in lowest terms; mpq_class(a, b) alone does not canonicalize.
inline eb::Q frac(long a, long b) {
  eb::Q q(a, b);
  q.canonicalize();
  return q;
}
