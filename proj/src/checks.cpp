#include "entropy_banach/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "entropy_banach/ellone.hpp"
#include "entropy_banach/entropy.hpp"
#include "entropy_banach/entropy_dial.hpp"
#include "entropy_banach/errors.hpp"
#include "entropy_banach/spaces.hpp"
#include "entropy_banach/universal.hpp"

namespace eb {

namespace {

using Clock = std::chrono::steady_clock;

Q random_q(std::mt19937_64& rng, long num_range, long den_max) {
  std::uniform_int_distribution<long> num(-num_range, num_range);
  std::uniform_int_distribution<long> den(1, den_max);
  Q q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

// Gauss-Jordan on [A | B] for many right-hand sides at once. Independent of
// the library solvers on purpose.
std::vector<std::vector<Q>> eliminate(std::vector<std::vector<Q>> a,
                                      std::vector<std::vector<Q>> rhs) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw Error("oracle: singular matrix");
    std::swap(a[p], a[c]);
    std::swap(rhs[p], rhs[c]);
    Q inv = 1 / a[c][c];
    for (auto& v : a[c]) v *= inv;
    for (auto& v : rhs[c]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Q f = a[r][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      for (std::size_t k = 0; k < rhs[r].size(); ++k) rhs[r][k] -= f * rhs[c][k];
    }
  }
  return rhs;
}

Q max_abs(const std::vector<Q>& v) {
  Q m(0);
  for (const auto& x : v)
    if (abs_q(x) > m) m = abs_q(x);
  return m;
}

PLMap full_branch(int d) {
  std::vector<Q> xs, ys;
  for (int k = 0; k <= d; ++k) {
    Q x(k, d);
    x.canonicalize();
    xs.push_back(x);
    ys.emplace_back(k % 2);
  }
  return PLMap(std::move(xs), std::move(ys));
}

PLMap random_unit_map(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(2, 12);
  int n = count(rng);
  std::vector<Q> xs{Q(0)};
  std::uniform_int_distribution<int> gap(1, 8);
  std::vector<int> gaps;
  int total = 0;
  for (int i = 1; i < n; ++i) {
    gaps.push_back(gap(rng));
    total += gaps.back();
  }
  int acc = 0;
  for (int g : gaps) {
    acc += g;
    Q x(acc, total);
    x.canonicalize();
    xs.push_back(x);
  }
  std::vector<Q> ys;
  for (int i = 0; i < n; ++i) ys.push_back(random_q(rng, 64, 32) / 2);
  return PLMap(std::move(xs), std::move(ys));
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

// Each criterion returns (passed, detail).
using Body = std::function<std::pair<bool, std::string>(std::uint64_t)>;

std::pair<bool, std::string> criterion1(std::uint64_t seed) {
  auto r = check_an_oracle(solve_An, 50, 100, seed);
  return {r.passed, r.detail};
}

std::pair<bool, std::string> criterion2(std::uint64_t) {
  static const int printed[8][8] = {
      {+1, +1, +1, +1, +1, +1, +1, +1}, {+1, -1, -1, -1, -1, -1, -1, -1},
      {-1, -1, +1, +1, +1, +1, +1, +1}, {+1, +1, +1, -1, -1, -1, -1, -1},
      {-1, -1, -1, -1, +1, +1, +1, +1}, {+1, +1, +1, +1, +1, -1, -1, -1},
      {-1, -1, -1, -1, -1, -1, +1, +1}, {+1, +1, +1, +1, +1, +1, +1, -1}};
  SignMatrix a = build_An(8);
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j)
      if (a.at(i, j) != printed[i - 1][j - 1])
        return {false, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs"};
  return {true, "64 entries match"};
}

std::pair<bool, std::string> criterion3(std::uint64_t) {
  double worst = 0.0;
  for (int d = 2; d <= 10; ++d) {
    EntropyBounds b = entropy_bounds(full_branch(d), 1);
    double err = std::max(std::abs(b.lower - std::log(d)), std::abs(b.upper - std::log(d)));
    worst = std::max(worst, err);
    if (err > 1e-9)
      return {false, "d = " + std::to_string(d) + ": [" + fmt(b.lower) + ", " + fmt(b.upper) + "]"};
  }
  return {true, "max deviation " + fmt(worst)};
}

std::pair<bool, std::string> criterion4(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int combos = 0;
  for (int n = 3; n <= 8; ++n) {
    std::vector<Q> nodes;
    for (int k = 0; k <= 2 * n; ++k) {
      Q x(k, 2 * n);
      x.canonicalize();
      nodes.push_back(x);
    }
    std::vector<Q> grid;
    for (int k = 0; k <= 8 * n; ++k) {
      Q x(k, 8 * n);
      x.canonicalize();
      grid.push_back(x);
    }
    for (int trial = 0; trial < 5; ++trial) {
      FunctionFamily fam = random_pl_family(n, nodes, rng);
      IndependencePoints pts;
      try {
        pts = independent_points(fam, grid);
      } catch (const DependencyError&) {
        continue;  // dependent draws are skipped
      }
      auto hc = horseshoe_combination(fam, pts);
      for (int i = 0; i < n; ++i) {
        const Q& want = (i % 2 == 0) ? pts.points.front() : pts.points.back();
        if (hc.f(pts.points[static_cast<std::size_t>(i)]) != want)
          return {false, "alternation fails for n = " + std::to_string(n)};
      }
      double lb = certified_lower_bound(hc.f, hc.certificate);
      if (lb < std::log(n - 1) - 1e-12)
        return {false, "lower bound " + fmt(lb) + " < log(n-1) for n = " + std::to_string(n)};
      ++combos;
    }
    // Sharpness: Chebyshev T_(n-1) on [-1, 1] has n-1 full laps.
    std::vector<Q> cheb_prev{Q(1)}, cheb{Q(0), Q(1)};
    for (int deg = 1; deg < n - 1; ++deg) {
      std::vector<Q> next(cheb.size() + 1, Q(0));
      for (std::size_t i = 0; i < cheb.size(); ++i) next[i + 1] += 2 * cheb[i];
      for (std::size_t i = 0; i < cheb_prev.size(); ++i) next[i] -= cheb_prev[i];
      cheb_prev = cheb;
      cheb = next;
    }
    std::vector<std::vector<Q>> polys{cheb};
    std::vector<Q> random_poly;
    for (int i = 0; i < n; ++i) random_poly.push_back(random_q(rng, 9, 4));
    polys.push_back(random_poly);
    for (const auto& coeffs : polys) {
      PLMap p = cropped_polynomial(coeffs, Q(-1), Q(1), 4 * n + 1);
      EntropyBounds b = entropy_bounds(p, 8);
      if (b.upper > std::log(n - 1) + 1e-9)
        return {false, "polynomial of degree " + std::to_string(n - 1) + " has upper " +
                           fmt(b.upper)};
    }
  }
  if (combos < 12) return {false, "too few independent families drawn: " + std::to_string(combos)};
  return {true, std::to_string(combos) + " combinations certified; polynomial uppers within log(n-1)"};
}

std::pair<bool, std::string> criterion5(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ScaleSchedule> schedules{geometric_schedule(Q(2, 3), 8),
                                       hoelder_schedule(Q(1, 2), 8)};
  for (int trial = 0; trial < 50; ++trial) {
    PLMap f = random_unit_map(rng);
    PLMap g = random_unit_map(rng);
    Q a = random_q(rng, 20, 7), b = random_q(rng, 20, 7);
    std::vector<Q> coeffs{a, b};
    std::vector<PLMap> fg{f, g};
    PLMap combo = linear_combination(coeffs, fg);
    for (const auto& s : schedules) {
      PLMap pf = psi(f, s);
      if (sup_norm(pf) != sup_norm(f)) return {false, "isometry fails at trial " + std::to_string(trial)};
      std::vector<PLMap> images{pf, psi(g, s)};
      if (!same_function(psi(combo, s), linear_combination(coeffs, images)))
        return {false, "linearity fails at trial " + std::to_string(trial)};
    }
  }
  return {true, "50 inputs x 2 schedules exact"};
}

std::pair<bool, std::string> criterion6(std::uint64_t) {
  PLMap tent({Q(0), Q(1, 2), Q(1)}, {Q(0), Q(1), Q(0)});
  ScaleSchedule s16 = geometric_schedule(Q(2, 3), 16);
  PLMap g = psi(tent, s16);
  std::string levels;
  for (int d = 2; d <= 6; ++d) {
    int n = psi_horseshoe_level(tent, s16, d);
    if (n < 0 || n > 16) return {false, "d = " + std::to_string(d) + " needs N = " + std::to_string(n)};
    HorseshoeCertificate c = psi_horseshoe(tent, geometric_schedule(Q(2, 3), n), d);
    if (c.d != d) return {false, "certificate size mismatch"};
    if (auto why = check_certificate(g, c); !why.empty()) return {false, why};
    if (std::abs(certified_lower_bound(g, c) - std::log(d)) > 1e-12)
      return {false, "lower bound differs from log d"};
    levels += (levels.empty() ? "" : ",") + std::to_string(n);
  }
  return {true, "minimal N for d=2..6: " + levels};
}

std::pair<bool, std::string> criterion7(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int N = 6;
  RademacherModel model = build_rademacher(N, pow2(-10));
  std::vector<PLMap> members;
  for (int i = 1; i <= N; ++i) members.push_back(model.member(i));
  std::uniform_int_distribution<int> len(1, N);
  for (int trial = 0; trial < 100; ++trial) {
    int k = len(rng);
    std::vector<Q> a;
    Q l1(0);
    for (int i = 0; i < k; ++i) {
      a.push_back(random_q(rng, 50, 9));
      l1 += abs_q(a.back());
    }
    PLMap f = linear_combination(a, std::span<const PLMap>(members.data(), static_cast<std::size_t>(k)));
    if (sup_norm(f) != l1) return {false, "isometry fails at trial " + std::to_string(trial)};
  }
  WitnessReport w = ell1_witness(std::nullopt, 3, gamma_schedule(3, Q(2)));
  if (w.steps.size() != 3) return {false, "expected three steps"};
  for (std::size_t i = 0; i < 3; ++i) {
    if (w.steps[i].certificate.d != static_cast<int>(i) + 3) return {false, "wrong horseshoe size"};
    if (i > 0 && !w.steps[i - 1].J.contains(w.steps[i].J)) return {false, "J(m) not nested"};
  }
  if (w.f(w.x0) != w.x0) return {false, "f(x0) != x0"};
  if (auto why = verify_witness(w); !why.empty()) return {false, why};
  return {true, "isometry on 100 vectors; horseshoes 3,4,5 on " + std::to_string(w.model.N) +
                    " levels"};
}

std::pair<bool, std::string> criterion8(std::uint64_t) {
  DialConfig cfg;
  cfg.d = 3;
  cfg.t = std::log(2.0);
  cfg.tolerance = 1e-2;
  cfg.N = 12;
  AStarResult a = find_a_star(cfg.t, cfg);
  std::ostringstream detail;
  detail << "a* = " << format_q(a.a) << ", |r - t| = " << fmt(a.residual);
  if (a.residual > cfg.tolerance) return {false, detail.str()};
  cfg.a_star = a.a;
  PLMap f = build_dial_map(cfg);
  for (int n = 0; n < cfg.N; ++n) {
    if (image_interval(f, dial_I(n + 1)).hi > image_interval(f, dial_I(n)).lo)
      return {false, "scale ordering fails at n = " + std::to_string(n)};
  }
  auto reps = dial_entropy_check(cfg, {Q(1, 2), Q(1), Q(2)}, a.r.lambda_star);
  for (const auto& r : reps) {
    double dist = r.bounds.distance_to(cfg.t);
    detail << "; lambda " << format_q(r.lambda) << " [" << fmt(r.bounds.lower) << ", "
           << fmt(r.bounds.upper) << "]";
    if (dist > 5e-2) return {false, detail.str()};
  }
  // lambda = 0.72: scales outside the window carry no entropy.
  const Q off = Q(8, 10) * Q(9, 10);
  auto terms = rational_enumeration(cfg.N + 1);
  double worst = 0.0;
  int inactive = 0;
  for (const auto& lam : terms) {
    Q mu = off * lam;
    if (mu >= Q(9, 10) && mu <= Q(10, 9)) continue;
    ++inactive;
    worst = std::max(worst, dial_scale_entropy(cfg, mu, 1000).upper);
  }
  detail << "; " << inactive << " inactive scales at 0.72, max upper " << fmt(worst);
  return {worst <= 1e-2, detail.str()};
}

std::pair<bool, std::string> criterion9(std::uint64_t) {
  std::string detail;
  for (int d : {2, 3, 5}) {
    PLMap f = sin_scaled(2 * std::numbers::pi * d, 64);
    int h = horseshoe_max(f).first;
    detail += (detail.empty() ? "" : ", ") + std::string("d=") + std::to_string(d) + ":" +
              std::to_string(h);
    if (h < d) return {false, detail};
  }
  return {true, "horseshoe sizes " + detail};
}

std::pair<bool, std::string> criterion10(std::uint64_t) {
  auto targets = calkin_wilf(100);
  int count = 128;
  std::vector<Q> terms;
  for (;; count *= 2) {
    terms = rational_enumeration(count);
    bool all = true;
    for (const auto& q : targets)
      if (std::find(terms.begin(), terms.end(), q) == terms.end()) {
        all = false;
        break;
      }
    if (all) break;
    if (count > (1 << 20)) return {false, "targets missing"};
  }
  if (terms.front() != 1) return {false, "lambda_1 != 1"};
  for (std::size_t i = 0; i + 1 < terms.size(); ++i)
    if (terms[i + 1] > 2 * terms[i]) return {false, "ratio bound fails at " + std::to_string(i)};
  return {true, "100 targets within " + std::to_string(terms.size()) + " terms"};
}

struct Criterion {
  int id;
  const char* name;
  double budget;
  Body body;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "A_n closed form vs elimination", 10, criterion1},
      {2, "A_8 printed matrix", 1, criterion2},
      {3, "full-branch entropy brackets", 5, criterion3},
      {4, "horseshoe combinations and polynomial sharpness", 30, criterion4},
      {5, "psi isometry and linearity", 10, criterion5},
      {6, "psi unbounded horseshoes", 60, criterion6},
      {7, "l1 model isometry and witness", 120, criterion7},
      {8, "entropy dial", 600, criterion8},
      {9, "sin horseshoes", 20, criterion9},
      {10, "rational enumeration", 1, criterion10},
  };
  return all;
}

}  // namespace

CriterionResult check_an_oracle(const AnSolver& solver, int n_max, int samples,
                                std::uint64_t seed) {
  CriterionResult res;
  res.id = 1;
  std::mt19937_64 rng(seed);
  for (int n = 2; n <= n_max; ++n) {
    std::vector<std::vector<Q>> a(static_cast<std::size_t>(n), std::vector<Q>(static_cast<std::size_t>(n)));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        bool odd_i = i % 2 == 1;
        int v = (j < i) ? (odd_i ? -1 : 1) : (odd_i ? 1 : -1);
        a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = v;
      }
    std::vector<std::vector<Q>> betas(static_cast<std::size_t>(samples));
    std::vector<std::vector<Q>> rhs(static_cast<std::size_t>(n), std::vector<Q>(static_cast<std::size_t>(samples)));
    for (int s = 0; s < samples; ++s) {
      for (int i = 0; i < n; ++i) {
        Q b = random_q(rng, 1000, 97);
        betas[static_cast<std::size_t>(s)].push_back(b);
        rhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] = b;
      }
    }
    auto solved = eliminate(a, rhs);
    for (int s = 0; s < samples; ++s) {
      const auto& beta = betas[static_cast<std::size_t>(s)];
      std::vector<Q> alpha = solver(n, beta);
      for (int i = 0; i < n; ++i) {
        if (alpha[static_cast<std::size_t>(i)] != solved[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]) {
          res.detail = "mismatch with elimination at n = " + std::to_string(n);
          return res;
        }
      }
      if (max_abs(alpha) > max_abs(beta)) {
        res.detail = "max|alpha| > max|beta| at n = " + std::to_string(n);
        return res;
      }
    }
  }
  res.passed = true;
  res.detail = std::to_string((n_max - 1) * samples) + " systems agree exactly";
  return res;
}

std::vector<CriterionResult> run_acceptance(
    const CheckOptions& opts, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!opts.only.empty() &&
        std::find(opts.only.begin(), opts.only.end(), c.id) == opts.only.end())
      continue;
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.budget_seconds = c.budget;
    auto start = Clock::now();
    try {
      auto [ok, detail] = c.body(opts.seed + static_cast<std::uint64_t>(c.id));
      r.passed = ok;
      r.detail = detail;
    } catch (const ResourceError& e) {
      r.detail = std::string("resource cap at depth ") + std::to_string(e.depth_reached()) +
                 ": " + e.what();
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (r.passed && r.seconds > r.budget_seconds) {
      r.passed = false;
      r.detail += "; over time budget";
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << fmt(r.seconds)
    << " s / " << r.budget_seconds << " s): " << r.detail;
  return s.str();
}

Json to_json(const CriterionResult& r) {
  return Json{{"id", r.id},         {"name", r.name},       {"passed", r.passed},
              {"detail", r.detail}, {"seconds", r.seconds}, {"budget_seconds", r.budget_seconds}};
}

Json to_json(const RunManifest& m) {
  return Json{{"subcommand", m.subcommand},
              {"parameters", m.parameters},
              {"outputs", m.outputs},
              {"wall_time", m.wall_time},
              {"library_version", m.library_version}};
}

RunManifest manifest_from_json(const Json& j) {
  RunManifest m;
  try {
    m.subcommand = j.at("subcommand").get<std::string>();
    m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.wall_time = j.at("wall_time").get<double>();
    m.library_version = j.at("library_version").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid manifest: ") + e.what());
  }
  return m;
}

}  // namespace eb
