#include "entropy_banach/entropy_dial.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "entropy_banach/errors.hpp"

namespace eb {

namespace {

const Q kLow(9, 10);
const Q kHigh(10, 9);

// Evaluates fn(0..count-1) on a small thread pool; fn must be pure.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  unsigned threads = std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

PLMap theta(const Q& a, int d) {
  if (d < 3 || d % 2 == 0) throw DomainError("theta needs an odd d >= 3, got " + std::to_string(d));
  if (a < 0 || a > 1) throw DomainError("theta needs a in [0, 1]");
  std::vector<Q> xs{Q(0)}, ys{Q(0)};
  for (int k = 0; k <= d; ++k) {
    Q x = 9 + Q(k, d);
    x.canonicalize();
    Q target = (k % 2 == 0) ? Q(9) : Q(10);
    xs.push_back(x);
    ys.push_back((1 - a) * x + a * target);
  }
  xs.emplace_back(12);
  ys.emplace_back(12);
  return PLMap(std::move(xs), std::move(ys));
}

EntropyBounds dial_scale_entropy(const DialConfig& cfg, const Q& mu, int depth) {
  return entropy_bounds(scale(theta(cfg.a_star, cfg.d), mu), depth, cfg.entropy);
}

RValue r_of_a(const Q& a, const DialConfig& cfg) {
  if (cfg.lambda_grid_size < 2) throw DomainError("lambda grid needs >= 2 points");
  const PLMap th = theta(a, cfg.d);
  auto bounds_at = [&](const Q& lambda) {
    return entropy_bounds(scale(th, lambda), cfg.entropy_depth, cfg.entropy);
  };
  const std::size_t G = static_cast<std::size_t>(cfg.lambda_grid_size);
  std::vector<Q> grid(G);
  for (std::size_t k = 0; k < G; ++k) {
    grid[k] = kLow + (kHigh - kLow) * Q(static_cast<long>(k), static_cast<long>(G - 1));
    grid[k].canonicalize();
  }
  auto results = parallel_map<EntropyBounds>(G, [&](std::size_t k) { return bounds_at(grid[k]); });
  std::size_t best = 0;
  for (std::size_t k = 1; k < G; ++k)
    if (results[k].midpoint() > results[best].midpoint()) best = k;

  RValue out;
  out.lambda_star = grid[best];
  out.bounds = results[best];
  if (results[best].upper > 0.0 && cfg.golden_iterations > 0) {
    // Golden-section search between the neighbours of the best node.
    double lo = to_double(grid[best == 0 ? 0 : best - 1]);
    double hi = to_double(grid[std::min(best + 1, G - 1)]);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto eval = [&](double x) {
      Q lam = round_dyadic(x, 40);
      EntropyBounds b = bounds_at(lam);
      if (b.midpoint() > out.bounds.midpoint()) {
        out.bounds = b;
        out.lambda_star = lam;
      }
      return b.midpoint();
    };
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = eval(x1), f2 = eval(x2);
    for (int it = 0; it < cfg.golden_iterations; ++it) {
      if (f1 >= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = eval(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = eval(x2);
      }
    }
  }
  out.value = out.bounds.midpoint();
  out.width = out.bounds.width();
  if (out.width > cfg.tolerance)
    out.warning = "bracket width " + std::to_string(out.width) + " exceeds tolerance " +
                  std::to_string(cfg.tolerance) + " at depth " +
                  std::to_string(cfg.entropy_depth);
  return out;
}

AStarResult find_a_star(double t, const DialConfig& cfg) {
  if (!(t > 0)) throw ConfigError("find_a_star needs t > 0");
  if (t >= std::log(static_cast<double>(cfg.d)))
    throw ConfigError("t = " + std::to_string(t) + " is not below log d = " +
                      std::to_string(std::log(static_cast<double>(cfg.d))));
  AStarResult res;
  RValue r0 = r_of_a(Q(0), cfg);
  RValue r1 = r_of_a(Q(1), cfg);
  res.trace.emplace_back(Q(0), r0.value);
  res.trace.emplace_back(Q(1), r1.value);
  if (!(r0.value < t && t < r1.value))
    throw ConfigError("r(0) = " + std::to_string(r0.value) + " and r(1) = " +
                      std::to_string(r1.value) + " do not bracket t");
  Q lo(0), hi(1);
  res.a = Q(1);
  res.r = r1;
  res.residual = std::abs(r1.value - t);
  constexpr int kMaxIterations = 40;
  for (int it = 1; it <= kMaxIterations; ++it) {
    Q mid = (lo + hi) / 2;
    RValue r = r_of_a(mid, cfg);
    res.trace.emplace_back(mid, r.value);
    res.iterations = it;
    double residual = std::abs(r.value - t);
    if (residual < res.residual) {
      res.a = mid;
      res.r = r;
      res.residual = residual;
    }
    if (residual <= cfg.tolerance) break;
    (r.value < t ? lo : hi) = mid;
  }
  return res;
}

std::vector<Q> calkin_wilf(int count) {
  std::vector<Q> out;
  if (count <= 0) return out;
  Q q(1);
  out.push_back(q);
  while (static_cast<int>(out.size()) < count) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    q = 1 / (2 * Q(fl) - q + 1);
    out.push_back(q);
  }
  return out;
}

std::vector<Q> rational_enumeration(int count) {
  if (count < 1) throw DomainError("rational_enumeration needs count >= 1");
  std::vector<Q> out{Q(1)};
  Q q(1);
  while (static_cast<int>(out.size()) < count) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    q = 1 / (2 * Q(fl) - q + 1);
    while (q > 2 * out.back() && static_cast<int>(out.size()) < count)
      out.push_back(2 * out.back());
    if (static_cast<int>(out.size()) < count) out.push_back(q);
  }
  return out;
}

Q dial_x(int n) { return pow2(-2L * n); }

IntervalQ dial_I(int n) {
  Q x = dial_x(n);
  return {Q(9, 10) * x, x};
}

PLMap build_dial_map(const DialConfig& cfg) {
  if (cfg.N < 1) throw DomainError("build_dial_map needs N >= 1");
  const PLMap window = crop(theta(cfg.a_star, cfg.d), Q(9), Q(10));
  const std::vector<Q> lambdas = rational_enumeration(cfg.N + 1);
  std::vector<Q> xs{Q(0)}, ys{Q(0)};
  for (int n = cfg.N; n >= 0; --n) {
    const Q xn = dial_x(n);
    const Q& lam = lambdas[static_cast<std::size_t>(n)];
    for (std::size_t k = 0; k < window.size(); ++k) {
      xs.push_back(xn * window.breakpoints()[k] / 10);
      ys.push_back(lam * xn / 10 * window.values()[k]);
    }
  }
  xs.emplace_back(10);
  ys.emplace_back(10);
  return even_extension(PLMap(std::move(xs), std::move(ys)));
}

std::vector<DialLambdaReport> dial_entropy_check(const DialConfig& cfg,
                                                 const std::vector<Q>& lambdas,
                                                 const Q& lambda_star) {
  const std::vector<Q> terms = rational_enumeration(cfg.N + 1);
  std::vector<DialLambdaReport> out;
  for (const auto& raw : lambdas) {
    if (sgn(raw) == 0) throw DomainError("dial_entropy_check needs lambda != 0");
    // -lambda f on (-inf, 0] is conjugate to lambda f on [0, inf).
    const Q lambda = abs_q(raw);
    DialLambdaReport rep;
    rep.lambda = raw;
    rep.nearest_gap = INFINITY;
    std::vector<ScaleEntropy> active;
    for (int n = 0; n <= cfg.N; ++n) {
      ScaleEntropy s;
      s.n = n;
      s.mu = lambda * terms[static_cast<std::size_t>(n)];
      rep.nearest_gap = std::min(rep.nearest_gap, std::abs(to_double(s.mu - lambda_star)));
      // lambda f(I_n) = [9/10 mu x_n, mu x_n] meets I_n iff mu is in the window.
      s.active = s.mu >= kLow && s.mu <= kHigh;
      if (s.active) active.push_back(s);
    }
    auto bounds = parallel_map<EntropyBounds>(active.size(), [&](std::size_t i) {
      return dial_scale_entropy(cfg, active[i].mu, cfg.entropy_depth);
    });
    rep.bounds = EntropyBounds{};
    for (std::size_t i = 0; i < active.size(); ++i) {
      active[i].bounds = bounds[i];
      rep.bounds.lower = std::max(rep.bounds.lower, bounds[i].lower);
      rep.bounds.upper = std::max(rep.bounds.upper, bounds[i].upper);
      rep.bounds.depth_used = std::max(rep.bounds.depth_used, bounds[i].depth_used);
      // Witnesses live on the conjugate scale map, so only the source is kept.
      if (bounds[i].lower >= rep.bounds.lower && bounds[i].lower > 0)
        rep.bounds.lower_source =
            "scale " + std::to_string(active[i].n) + " " + bounds[i].lower_source;
    }
    rep.scales = std::move(active);
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace eb
