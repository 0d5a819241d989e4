#include "entropy_banach/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "entropy_banach/errors.hpp"

namespace eb {

double EntropyBounds::distance_to(double t) const {
  if (t < lower) return lower - t;
  if (t > upper) return t - upper;
  return 0.0;
}

PLMap invariant_restriction(const PLMap& f) {
  IntervalQ hull = image_interval(f, f.domain());
  for (int round = 0;; ++round) {
    if (round >= 10000)
      throw ResourceError("invariant hull did not stabilize", round);
    IntervalQ img = image_interval(f, hull);
    IntervalQ next{std::min<Q>(hull.lo, img.lo), std::max<Q>(hull.hi, img.hi)};
    if (next == hull) break;
    hull = next;
  }
  if (hull.degenerate()) return PLMap({hull.lo}, {f(hull.lo)});
  return crop(f, hull.lo, hull.hi);
}

PLMap iterate(const PLMap& f, int k, std::size_t cap) {
  if (k < 1) throw DomainError("iterate needs k >= 1");
  PLMap g = f;
  for (int i = 2; i <= k; ++i) {
    try {
      g = compose(f, g, cap);
    } catch (const ResourceError&) {
      throw ResourceError("iterate exceeded breakpoint cap at k = " + std::to_string(i),
                          i - 1);
    }
  }
  return g;
}

std::vector<PLMap> iterates_within(const PLMap& f, int depth, std::size_t cap) {
  std::vector<PLMap> out{f};
  while (static_cast<int>(out.size()) < depth) {
    try {
      PLMap next = compose(f, out.back(), cap);
      out.push_back(std::move(next));
    } catch (const ResourceError&) {
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lap numbers via orbit intervals.
//
// A turning point of f^n is a point x of the open domain with f^j(x) in C
// (turning points of f) for some j < n. Splitting an interval at the points
// of C and mapping each monotone piece forward gives the intervals on which
// f^(n-1) has to be examined; identical intervals are merged with their
// multiplicities.

namespace {

struct PairLess {
  bool operator()(const std::pair<Q, Q>& a, const std::pair<Q, Q>& b) const {
    int c = cmp(a.first, b.first);
    if (c != 0) return c < 0;
    return cmp(a.second, b.second) < 0;
  }
};

}  // namespace

std::vector<mpz_class> lap_numbers(const PLMap& f, int depth, std::size_t state_cap) {
  std::vector<mpz_class> laps;
  if (depth < 1) return laps;
  const IntervalQ dom = f.domain();
  if (dom.degenerate()) return std::vector<mpz_class>(static_cast<std::size_t>(depth), 1);
  const std::vector<Q> crit = turning_points(f);

  using Level = std::map<std::pair<Q, Q>, mpz_class, PairLess>;
  Level current;
  current.emplace(std::make_pair(dom.lo, dom.hi), mpz_class(1));
  mpz_class turning = 0;
  for (int n = 1; n <= depth; ++n) {
    Level next;
    mpz_class contribution = 0;
    for (const auto& [iv, weight] : current) {
      const auto& [p, q] = iv;
      auto lo = std::upper_bound(crit.begin(), crit.end(), p);
      auto hi = std::lower_bound(crit.begin(), crit.end(), q);
      if (hi > lo) contribution += weight * static_cast<unsigned long>(hi - lo);
      if (n == depth) continue;
      auto add_piece = [&](const Q& s, const Q& t) {
        Q u = f(s), v = f(t);
        if (u == v) return;
        auto key = u < v ? std::make_pair(std::move(u), std::move(v))
                         : std::make_pair(std::move(v), std::move(u));
        next[key] += weight;
      };
      const Q* s = &p;
      for (auto it = lo; it < hi; ++it) {
        add_piece(*s, *it);
        s = &*it;
      }
      add_piece(*s, q);
    }
    turning += contribution;
    laps.push_back(turning + 1);
    if (next.size() > state_cap) break;
    if (next.empty()) {
      while (static_cast<int>(laps.size()) < depth) laps.push_back(laps.back());
      break;
    }
    current.swap(next);
  }
  return laps;
}

namespace {

double log_z(const mpz_class& z) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

double upper_from_laps(const std::vector<mpz_class>& laps) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < laps.size(); ++k)
    best = std::min(best, log_z(laps[k]) / static_cast<double>(k + 1));
  // log and division each carry half an ulp; round outward.
  if (std::isfinite(best) && best > 0.0) best = std::nextafter(std::nextafter(best, HUGE_VAL), HUGE_VAL);
  return best;
}

}  // namespace

double entropy_upper_lap(const PLMap& f, int depth, const EntropyOptions& opts) {
  if (depth < 1) throw DomainError("entropy_upper_lap needs depth >= 1");
  return upper_from_laps(lap_numbers(f, depth, opts.lap_state_cap));
}

// ---------------------------------------------------------------------------
// Horseshoe search.
//
// For a hull [u, v] the intervals are taken greedily from the left, each as
// short as possible with f(I) covering [u, v]; earliest-end greedy is
// optimal because supersets of a covering interval still cover. Doubles
// screen all hulls, exact rationals confirm.

namespace {

template <class T>
struct Walker {
  const std::vector<T>& x;
  const std::vector<T>& y;

  T value_at(std::size_t seg, const T& t) const {
    if (t == x[seg]) return y[seg];
    return T(y[seg] + (y[seg + 1] - y[seg]) * (t - x[seg]) / (x[seg + 1] - x[seg]));
  }

  // First t in [s, end] (s on segment seg) with sign*(f(t) - level) >= 0,
  // i.e. f(t) >= level for sign = +1 and f(t) <= level for sign = -1.
  bool first_reach(std::size_t seg, const T& s, std::size_t end_idx, const T& level,
                   int sign, T& t_out) const {
    T start = s;
    T fs = value_at(seg, s);
    auto reached = [&](const T& v) { return sign > 0 ? !(v < level) : !(v > level); };
    if (reached(fs)) {
      t_out = start;
      return true;
    }
    for (std::size_t k = seg; k < end_idx; ++k) {
      const T& fe = y[k + 1];
      if (reached(fe)) {
        t_out = T(start + (level - fs) * (x[k + 1] - start) / (fe - fs));
        if (t_out > x[k + 1]) t_out = x[k + 1];
        if (t_out < start) t_out = start;
        return true;
      }
      start = x[k + 1];
      fs = fe;
    }
    return false;
  }

  // Greedy count for hull [x[ui], x[vi]]; levels are widened by tol.
  int greedy(std::size_t ui, std::size_t vi, const T& tol,
             std::vector<std::pair<T, T>>* out) const {
    const T& u = x[ui];
    const T& v = x[vi];
    T low_level = T(u + tol);
    T high_level = T(v - tol);
    T s = u;
    std::size_t seg = ui;
    int count = 0;
    while (true) {
      T tl, th;
      if (!first_reach(seg, s, vi, low_level, -1, tl)) break;
      if (!first_reach(seg, s, vi, high_level, +1, th)) break;
      T t = tl < th ? th : tl;
      if (!(s < t)) break;
      ++count;
      if (out) out->emplace_back(s, t);
      s = t;
      while (seg + 1 < vi && !(s < x[seg + 1])) ++seg;
      if (!(s < v)) break;
    }
    return count;
  }
};

}  // namespace

std::pair<int, std::optional<HorseshoeCertificate>> horseshoe_max(const PLMap& f) {
  const std::size_t m = f.size();
  if (m < 3) return {0, std::nullopt};  // a single segment is monotone
  std::vector<double> xd(m), yd(m);
  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    xd[i] = to_double(f.breakpoints()[i]);
    yd[i] = to_double(f.values()[i]);
    scale = std::max({scale, std::abs(xd[i]), std::abs(yd[i])});
  }
  // turning[i] = 1 when breakpoint i separates two laps.
  std::vector<int> prefix(m + 1, 0);
  {
    std::vector<int> turning(m, 0);
    int current = 0;
    std::size_t last_end = 0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
      int s = cmp(f.values()[k + 1], f.values()[k]);
      if (s == 0) continue;
      if (current != 0 && s != current) turning[last_end] = 1;
      current = s;
      last_end = k + 1;
    }
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + turning[i];
  }
  const double tol = 1e-12 * scale;
  Walker<double> wd{xd, yd};
  struct Candidate {
    int count;
    std::size_t ui, vi;
  };
  std::vector<Candidate> candidates;
  int best = 1;
  for (std::size_t ui = 0; ui < m; ++ui) {
    for (std::size_t vi = m - 1; vi > ui; --vi) {
      int laps_inside = 1 + prefix[vi] - prefix[ui + 1];
      if (laps_inside < 2 || laps_inside < best) continue;
      int c = wd.greedy(ui, vi, tol, nullptr);
      if (c >= 2 && c >= best) {
        candidates.push_back({c, ui, vi});
        best = c;
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.count > b.count; });
  Walker<Q> wq{f.breakpoints(), f.values()};
  int best_exact = 0;
  std::vector<std::pair<Q, Q>> best_intervals;
  for (const auto& c : candidates) {
    if (c.count <= best_exact) break;
    std::vector<std::pair<Q, Q>> ivs;
    int e = wq.greedy(c.ui, c.vi, Q(0), &ivs);
    if (e > best_exact) {
      best_exact = e;
      best_intervals = std::move(ivs);
    }
  }
  if (best_exact < 2) return {0, std::nullopt};
  HorseshoeCertificate cert;
  cert.d = best_exact;
  cert.k = 1;
  for (auto& [a, b] : best_intervals) cert.intervals.emplace_back(a, b);
  return {best_exact, std::move(cert)};
}

std::pair<double, std::optional<HorseshoeCertificate>> entropy_lower_horseshoe(
    const PLMap& f, int depth, const EntropyOptions& opts) {
  if (depth < 1) throw DomainError("entropy_lower_horseshoe needs depth >= 1");
  double best = 0.0;
  std::optional<HorseshoeCertificate> witness;
  PLMap g = f;
  for (int k = 1; k <= depth; ++k) {
    if (k > 1) {
      try {
        g = compose(f, g, opts.horseshoe_breakpoint_cap);
      } catch (const ResourceError&) {
        break;
      }
    }
    auto [d, cert] = horseshoe_max(g);
    if (d >= 2) {
      double value = std::log(static_cast<double>(d)) / k;
      if (value > best + 1e-15) {
        best = value;
        cert->k = k;
        witness = std::move(cert);
      }
    }
  }
  return {best, std::move(witness)};
}

double banded_spectral_radius(const std::vector<std::pair<long, long>>& ranges) {
  const std::size_t n = ranges.size();
  if (n == 0) return 0.0;
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n), prefix(n + 1);
  double estimate = 0.0;
  for (int it = 0; it < 10000; ++it) {
    prefix[0] = 0.0;
    for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + x[j];
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = x[i];  // shift by the identity keeps the iteration aperiodic
      const auto [a, b] = ranges[i];
      if (a <= b) v += prefix[static_cast<std::size_t>(b) + 1] - prefix[static_cast<std::size_t>(a)];
      y[i] = v;
      total += v;
    }
    double next = total;  // ||x||_1 == 1
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / total;
    bool done = it > 0 && std::abs(next - estimate) <= 1e-10 * next;
    estimate = next;
    if (done) break;
  }
  // Collatz-Wielandt: A x >= c x with x >= 0 nonzero gives rho(A) >= c.
  // Negligible entries are zeroed so slow transient classes do not spoil c.
  double peak = *std::max_element(x.begin(), x.end());
  for (auto& v : x)
    if (v < 1e-9 * peak) v = 0.0;
  prefix[0] = 0.0;
  for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + x[j];
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    const auto [a, b] = ranges[i];
    double ax = a <= b ? prefix[static_cast<std::size_t>(b) + 1] - prefix[static_cast<std::size_t>(a)] : 0.0;
    c = std::min(c, ax / x[i]);
  }
  return std::max(0.0, c * (1.0 - 1e-12));
}

double entropy_lower_markov(const PLMap& f, int refinement, const EntropyOptions& opts) {
  if (refinement < 0) throw DomainError("entropy_lower_markov needs refinement >= 0");
  const IntervalQ dom = f.domain();
  if (dom.degenerate()) return 0.0;
  double best = 0.0;
  PLMap g = f;
  for (int r = 0; r <= refinement; ++r) {
    if (r > 0) {
      try {
        g = compose(f, g, opts.breakpoint_cap);
      } catch (const ResourceError&) {
        break;
      }
    }
    std::vector<Q> pts{dom.lo};
    for (auto& t : turning_points(g))
      if (t > pts.back() && t < dom.hi) pts.push_back(t);
    pts.push_back(dom.hi);
    if (pts.size() - 1 > opts.partition_cap) {
      if (r == 0)
        throw ResourceError("critical partition exceeds cap " +
                                std::to_string(opts.partition_cap),
                            -1);
      break;
    }
    const std::size_t n = pts.size() - 1;
    std::vector<std::pair<long, long>> ranges(n);
    for (std::size_t i = 0; i < n; ++i) {
      IntervalQ img = image_interval(f, {pts[i], pts[i + 1]});
      long a = std::lower_bound(pts.begin(), pts.end(), img.lo) - pts.begin();
      long b = (std::upper_bound(pts.begin(), pts.end(), img.hi) - pts.begin()) - 2;
      ranges[i] = {a, b};
    }
    double rho = banded_spectral_radius(ranges);
    if (rho > 1.0) best = std::max(best, std::log(rho));
  }
  return best;
}

EntropyBounds entropy_bounds(const PLMap& f, int depth, const EntropyOptions& opts) {
  if (depth < 1) throw DomainError("entropy_bounds needs depth >= 1");
  EntropyBounds out;
  PLMap r = invariant_restriction(f);
  if (r.size() == 1 || lap_count(r) == 1) {
    // Monotone maps have zero entropy.
    out.depth_used = depth;
    return out;
  }
  auto laps = lap_numbers(r, depth, opts.lap_state_cap);
  out.upper = upper_from_laps(laps);
  out.depth_used = static_cast<int>(laps.size());
  auto [hs, cert] = entropy_lower_horseshoe(r, depth, opts);
  double mk = 0.0;
  try {
    mk = entropy_lower_markov(r, opts.markov_refinement, opts);
  } catch (const ResourceError&) {
    mk = 0.0;
  }
  if (hs >= mk && cert) {
    out.lower = hs;
    out.lower_witness = std::move(cert);
    out.lower_source = "horseshoe";
  } else if (mk > 0.0) {
    out.lower = mk;
    out.lower_source = "markov";
  }
  return out;
}

std::string check_certificate(const PLMap& f, const HorseshoeCertificate& cert,
                              std::size_t cap) {
  if (cert.d < 2) return "d < 2";
  if (cert.k < 1) return "k < 1";
  if (static_cast<int>(cert.intervals.size()) != cert.d) return "interval count != d";
  std::vector<IntervalQ> ivs = cert.intervals;
  std::sort(ivs.begin(), ivs.end(),
            [](const IntervalQ& a, const IntervalQ& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i + 1 < ivs.size(); ++i)
    if (ivs[i + 1].lo < ivs[i].hi) return "interiors overlap";
  for (const auto& iv : ivs)
    if (iv.degenerate()) return "degenerate interval";
  PLMap g = iterate(f, cert.k, cap);
  IntervalQ hull{ivs.front().lo, ivs.back().hi};
  for (std::size_t i = 0; i < ivs.size(); ++i)
    if (!image_interval(g, ivs[i]).contains(hull))
      return "interval " + std::to_string(i) + " does not cover the others";
  return {};
}

double certified_lower_bound(const PLMap& f, const HorseshoeCertificate& cert) {
  std::string why = check_certificate(f, cert);
  if (!why.empty()) throw DomainError("invalid horseshoe certificate: " + why);
  return std::log(static_cast<double>(cert.d)) / cert.k;
}

}  // namespace eb
