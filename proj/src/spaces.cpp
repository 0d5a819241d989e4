#include "entropy_banach/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "entropy_banach/errors.hpp"

namespace eb {

std::vector<Q> solve_linear(QMatrix a, std::vector<Q> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DomainError("solve_linear: dimension mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) throw DomainError("solve_linear: singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(a[r][col]) == 0) continue;
      Q factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<Q> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Q s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

Q determinant(QMatrix a) {
  const std::size_t n = a.size();
  Q det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) return Q(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(a[r][col]) == 0) continue;
      Q factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  return det;
}

namespace {

QMatrix evaluation_matrix(const std::vector<PLMap>& fs, const std::vector<Q>& pts,
                          std::size_t count) {
  QMatrix m(pts.size(), std::vector<Q>(count));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < count; ++j) m[i][j] = fs[j](pts[i]);
  return m;
}

}  // namespace

IndependencePoints independent_points(const FunctionFamily& fs, const std::vector<Q>& grid) {
  if (grid.empty()) throw DomainError("independent_points needs a nonempty grid");
  if (fs.members.empty()) throw DomainError("independent_points needs a nonempty family");
  const auto& f = fs.members;
  std::vector<Q> chosen;
  for (std::size_t k = 0; k < f.size(); ++k) {
    // a: coefficients with f_k = sum_j a_j f_j on the chosen points.
    std::vector<Q> a;
    if (k > 0) {
      std::vector<Q> rhs(k);
      for (std::size_t i = 0; i < k; ++i) rhs[i] = f[k](chosen[i]);
      a = solve_linear(evaluation_matrix(f, chosen, k), rhs);
    }
    bool found = false;
    for (const auto& x : grid) {
      if (std::find(chosen.begin(), chosen.end(), x) != chosen.end()) continue;
      Q interp(0);
      for (std::size_t j = 0; j < k; ++j) interp += a[j] * f[j](x);
      if (f[k](x) != interp) {
        chosen.push_back(x);
        found = true;
        break;
      }
    }
    if (!found) {
      a.push_back(Q(-1));
      throw DependencyError("family is linearly dependent on the grid (member " +
                                std::to_string(k + 1) + ")",
                            std::move(a));
    }
  }
  std::sort(chosen.begin(), chosen.end());
  Q det = determinant(evaluation_matrix(f, chosen, f.size()));
  return {std::move(chosen), std::move(det)};
}

HorseshoeCombination horseshoe_combination(const FunctionFamily& fs,
                                           const IndependencePoints& pts) {
  const std::size_t n = fs.members.size();
  if (n < 3) throw DomainError("horseshoe_combination needs n >= 3");
  if (pts.points.size() != n) throw DomainError("point count differs from family size");
  const Q& first = pts.points.front();
  const Q& last = pts.points.back();
  std::vector<Q> target(n);
  for (std::size_t i = 0; i < n; ++i) target[i] = (i % 2 == 0) ? first : last;
  std::vector<Q> coeffs;
  try {
    coeffs = solve_linear(evaluation_matrix(fs.members, pts.points, n), target);
  } catch (const DomainError&) {
    throw Error("horseshoe_combination: evaluation matrix is singular");
  }
  PLMap f = linear_combination(coeffs, fs.members);
  HorseshoeCertificate cert;
  cert.d = static_cast<int>(n) - 1;
  cert.k = 1;
  for (std::size_t i = 0; i + 1 < n; ++i)
    cert.intervals.emplace_back(pts.points[i], pts.points[i + 1]);
  if (auto why = check_certificate(f, cert); !why.empty())
    throw Error("horseshoe_combination produced an invalid certificate: " + why);
  return {std::move(f), std::move(coeffs), std::move(cert)};
}

PLMap cropped_polynomial(const std::vector<Q>& coeffs, const Q& a, const Q& b,
                         int resolution) {
  if (coeffs.empty()) throw DomainError("cropped_polynomial needs coefficients");
  if (!(a < b)) throw DomainError("cropped_polynomial needs a < b");
  int degree = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (sgn(coeffs[i]) != 0) degree = static_cast<int>(i);
  if (resolution < degree + 2)
    throw DomainError("cropped_polynomial needs resolution >= degree + 2");
  auto horner = [&coeffs](const Q& x) {
    Q acc(0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
  };
  const int max_laps = std::max(1, degree);
  constexpr int kMaxNodes = 1 << 16;
  int n = resolution;
  PLMap current = sample_pl_exact(horner, {a, b}, n);
  int laps = lap_count(current);
  while (true) {
    int next_n = 2 * (n - 1) + 1;
    if (next_n > kMaxNodes)
      throw NumericError("cropped_polynomial: lap count did not stabilize");
    PLMap refined = sample_pl_exact(horner, {a, b}, next_n);
    int refined_laps = lap_count(refined);
    n = next_n;
    current = std::move(refined);
    if (refined_laps == laps && laps <= max_laps) break;
    laps = refined_laps;
  }
  return current;
}

PLMap bump_sum(const std::vector<std::pair<int, Q>>& params, int samples_per_bump) {
  if (samples_per_bump < 2) throw DomainError("bump_sum needs at least 2 samples per bump");
  std::vector<std::pair<int, Q>> sorted = params;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].first < 1) throw DomainError("bump_sum: n must be >= 1");
    if (i > 0 && sorted[i].first == sorted[i - 1].first)
      throw DomainError("bump_sum: duplicate n = " + std::to_string(sorted[i].first));
  }
  std::vector<Q> xs{Q(1)}, ys{Q(0)};
  std::size_t next = 0;
  const int top = sorted.empty() ? 0 : sorted.back().first;
  for (int n = 1; n <= top; ++n) {
    Q left = 2 - Q(1, n);
    Q right = 2 - Q(1, n + 1);
    if (next < sorted.size() && sorted[next].first == n) {
      const Q& amp = sorted[next].second;
      Q step = (right - left) / samples_per_bump;
      for (int k = 1; k < samples_per_bump; ++k) {
        Q x = left + step * k;
        xs.push_back(x);
        ys.push_back(amp * (x - left) * (right - x));
      }
      ++next;
    }
    xs.push_back(right);
    ys.push_back(Q(0));
  }
  xs.push_back(Q(2));
  ys.push_back(Q(0));
  return PLMap(std::move(xs), std::move(ys));
}

PLMap sin_scaled(double lambda, int resolution) {
  if (resolution < 64) throw DomainError("sin_scaled needs >= 64 nodes per period");
  Q half = ceil_dyadic(std::abs(lambda) + 1.0, 6);
  double width = 2.0 * to_double(half);
  int n = static_cast<int>(std::ceil(width / (2.0 * std::numbers::pi) * resolution)) + 1;
  return sample_pl([lambda](double x) { return lambda * std::sin(x); }, {-half, half}, n);
}

FunctionFamily random_pl_family(int n, const std::vector<Q>& nodes, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> lattice(-64, 64);
  FunctionFamily fam;
  fam.label = "random-pl-" + std::to_string(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Q> vals;
    vals.reserve(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) vals.emplace_back(lattice(rng), 64);
    for (auto& v : vals) v.canonicalize();
    fam.members.emplace_back(nodes, std::move(vals));
  }
  return fam;
}

}  // namespace eb
