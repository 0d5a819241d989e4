#include "entropy_banach/plmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "entropy_banach/errors.hpp"

namespace eb {

std::size_t default_breakpoint_cap() {
  std::size_t value = 2'000'000;
  if (const char* env = std::getenv("ENTROPY_BANACH_CAP")) {
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0) value = parsed;
  }
  return value;
}

PLMap::PLMap(std::vector<Q> breakpoints, std::vector<Q> values)
    : xs_(std::move(breakpoints)), ys_(std::move(values)) {
  if (xs_.empty()) throw DomainError("PLMap needs at least one breakpoint");
  if (xs_.size() != ys_.size())
    throw DomainError("PLMap breakpoints and values differ in length");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i - 1] < xs_[i]))
      throw DomainError("PLMap breakpoints must be strictly increasing (index " +
                        std::to_string(i) + ")");
}

std::size_t PLMap::segment_of(const Q& x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t k = static_cast<std::size_t>(it - xs_.begin());
  k = k == 0 ? 0 : k - 1;
  return std::min(k, xs_.size() >= 2 ? xs_.size() - 2 : 0);
}

Q PLMap::operator()(const Q& x) const {
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  std::size_t k = segment_of(x);
  if (x == xs_[k]) return ys_[k];
  return ys_[k] + (ys_[k + 1] - ys_[k]) * (x - xs_[k]) / (xs_[k + 1] - xs_[k]);
}

PLMap make_pl(std::vector<Q> breakpoints, std::vector<Q> values) {
  return PLMap(std::move(breakpoints), std::move(values));
}

Q eval(const PLMap& f, const Q& x) { return f(x); }

PLMap identity_map(const Q& a, const Q& b) { return PLMap({a, b}, {a, b}); }

PLMap constant_map(const Q& c, const Q& a, const Q& b) {
  return PLMap({a, b}, {c, c});
}

namespace {

bool collinear(const Q& x0, const Q& y0, const Q& x1, const Q& y1, const Q& x2,
               const Q& y2) {
  return (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0);
}

int slope_sign(const PLMap& f, std::size_t k) {
  return cmp(f.values()[k + 1], f.values()[k]);
}

}  // namespace

PLMap simplified(const PLMap& f) {
  const auto& xs = f.breakpoints();
  const auto& ys = f.values();
  if (xs.size() <= 2) return f;
  std::vector<Q> ox{xs[0]}, oy{ys[0]};
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    if (collinear(ox.back(), oy.back(), xs[i], ys[i], xs[i + 1], ys[i + 1])) continue;
    ox.push_back(xs[i]);
    oy.push_back(ys[i]);
  }
  ox.push_back(xs.back());
  oy.push_back(ys.back());
  return PLMap(std::move(ox), std::move(oy));
}

bool same_function(const PLMap& f, const PLMap& g) {
  std::vector<Q> pts;
  pts.reserve(f.size() + g.size());
  std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(),
             g.breakpoints().end(), std::back_inserter(pts));
  for (const auto& x : pts)
    if (f(x) != g(x)) return false;
  return true;
}

PLMap compose(const PLMap& f, const PLMap& g, std::size_t cap) {
  const auto& gx = g.breakpoints();
  const auto& gy = g.values();
  const auto& fx = f.breakpoints();
  const auto& fy = f.values();
  std::vector<Q> ox, oy;
  ox.reserve(gx.size());
  oy.reserve(gx.size());
  auto push = [&](const Q& x, const Q& y) {
    // Collinear interior points are dropped on the fly to keep memory bounded.
    if (ox.size() >= 2 &&
        collinear(ox[ox.size() - 2], oy[oy.size() - 2], ox.back(), oy.back(), x, y)) {
      ox.back() = x;
      oy.back() = y;
    } else {
      ox.push_back(x);
      oy.push_back(y);
    }
    if (ox.size() > cap)
      throw ResourceError("compose exceeded breakpoint cap " + std::to_string(cap), 0);
  };
  for (std::size_t k = 0; k + 1 < gx.size(); ++k) {
    push(gx[k], f(gy[k]));
    const Q& ya = gy[k];
    const Q& yb = gy[k + 1];
    if (ya == yb) continue;
    const Q scale = (gx[k + 1] - gx[k]) / (yb - ya);
    if (ya < yb) {
      auto lo = std::upper_bound(fx.begin(), fx.end(), ya);
      auto hi = std::lower_bound(fx.begin(), fx.end(), yb);
      for (auto it = lo; it < hi; ++it)
        push(gx[k] + (*it - ya) * scale, fy[static_cast<std::size_t>(it - fx.begin())]);
    } else {
      auto lo = std::upper_bound(fx.begin(), fx.end(), yb);
      auto hi = std::lower_bound(fx.begin(), fx.end(), ya);
      for (auto it = hi; it > lo;) {
        --it;
        push(gx[k] + (*it - ya) * scale, fy[static_cast<std::size_t>(it - fx.begin())]);
      }
    }
  }
  push(gx.back(), f(gy.back()));
  return PLMap(std::move(ox), std::move(oy));
}

int lap_count(const PLMap& f) {
  int laps = 1;
  int current = 0;
  for (std::size_t k = 0; k + 1 < f.size(); ++k) {
    int s = slope_sign(f, k);
    if (s == 0) continue;
    if (current != 0 && s != current) ++laps;
    current = s;
  }
  return laps;
}

std::vector<Q> turning_points(const PLMap& f) {
  std::vector<Q> out;
  int current = 0;
  std::size_t last_end = 0;  // breakpoint index where the last monotone segment ended
  for (std::size_t k = 0; k + 1 < f.size(); ++k) {
    int s = slope_sign(f, k);
    if (s == 0) continue;
    if (current != 0 && s != current) out.push_back(f.breakpoints()[last_end]);
    current = s;
    last_end = k + 1;
  }
  return out;
}

PLMap crop(const PLMap& f, const Q& a, const Q& b) {
  if (!(a < b)) throw DomainError("crop requires a < b");
  const auto& xs = f.breakpoints();
  std::vector<Q> ox{a}, oy{f(a)};
  auto lo = std::upper_bound(xs.begin(), xs.end(), a);
  auto hi = std::lower_bound(xs.begin(), xs.end(), b);
  for (auto it = lo; it < hi; ++it) {
    ox.push_back(*it);
    oy.push_back(f.values()[static_cast<std::size_t>(it - xs.begin())]);
  }
  ox.push_back(b);
  oy.push_back(f(b));
  return PLMap(std::move(ox), std::move(oy));
}

PLMap linear_combination(std::span<const Q> coeffs, std::span<const PLMap> fs) {
  if (coeffs.empty() || coeffs.size() != fs.size())
    throw DomainError("linear_combination needs equal-length nonempty lists");
  std::vector<Q> pts;
  for (const auto& f : fs) {
    std::vector<Q> merged;
    merged.reserve(pts.size() + f.size());
    std::set_union(pts.begin(), pts.end(), f.breakpoints().begin(),
                   f.breakpoints().end(), std::back_inserter(merged));
    pts.swap(merged);
  }
  std::vector<Q> vals(pts.size(), Q(0));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    for (std::size_t k = 0; k < pts.size(); ++k) vals[k] += coeffs[i] * fs[i](pts[k]);
  }
  return PLMap(std::move(pts), std::move(vals));
}

PLMap scale(const PLMap& f, const Q& c) {
  std::vector<Q> ys(f.values());
  for (auto& y : ys) y *= c;
  return PLMap(f.breakpoints(), std::move(ys));
}

IntervalQ image_interval(const PLMap& f, const IntervalQ& j) {
  Q lo = f(j.lo), hi = lo;
  auto widen = [&](const Q& v) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  };
  widen(f(j.hi));
  const auto& xs = f.breakpoints();
  auto first = std::upper_bound(xs.begin(), xs.end(), j.lo);
  auto last = std::lower_bound(xs.begin(), xs.end(), j.hi);
  for (auto it = first; it < last; ++it)
    widen(f.values()[static_cast<std::size_t>(it - xs.begin())]);
  return {lo, hi};
}

Q oscillation(const PLMap& f, const IntervalQ& j) {
  return image_interval(f, j).length();
}

Q sup_norm(const PLMap& f) {
  Q best(0);
  for (const auto& y : f.values()) {
    Q a = abs_q(y);
    if (a > best) best = a;
  }
  return best;
}

PLMap even_extension(const PLMap& f) {
  const auto& xs = f.breakpoints();
  if (sgn(xs.front()) != 0) throw DomainError("even_extension needs a domain [0, b]");
  std::vector<Q> ox, oy;
  ox.reserve(2 * xs.size() - 1);
  oy.reserve(2 * xs.size() - 1);
  for (std::size_t i = xs.size(); i-- > 1;) {
    ox.push_back(-xs[i]);
    oy.push_back(f.values()[i]);
  }
  ox.insert(ox.end(), xs.begin(), xs.end());
  oy.insert(oy.end(), f.values().begin(), f.values().end());
  return PLMap(std::move(ox), std::move(oy));
}

namespace {

std::vector<Q> equispaced(const IntervalQ& domain, int n) {
  if (n < 2) throw DomainError("sampling needs n >= 2");
  if (domain.degenerate()) throw DomainError("sampling needs a nondegenerate domain");
  std::vector<Q> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  Q step = domain.length() / (n - 1);
  for (int k = 0; k < n; ++k) nodes.push_back(domain.lo + step * k);
  nodes.back() = domain.hi;
  return nodes;
}

}  // namespace

PLMap sample_pl(const std::function<double(double)>& h, const IntervalQ& domain,
                int n, int value_bits) {
  auto nodes = equispaced(domain, n);
  std::vector<Q> vals;
  vals.reserve(nodes.size());
  for (const auto& x : nodes) {
    double v = h(to_double(x));
    if (!std::isfinite(v)) throw NumericError("sample_pl: non-finite sample value");
    vals.push_back(round_dyadic(v, value_bits));
  }
  return PLMap(std::move(nodes), std::move(vals));
}

PLMap sample_pl_exact(const std::function<Q(const Q&)>& h, const IntervalQ& domain,
                      int n) {
  auto nodes = equispaced(domain, n);
  std::vector<Q> vals;
  vals.reserve(nodes.size());
  for (const auto& x : nodes) vals.push_back(h(x));
  return PLMap(std::move(nodes), std::move(vals));
}

}  // namespace eb
