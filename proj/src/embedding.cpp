#include "cmc/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <tuple>

#include <boost/math/tools/toms748_solve.hpp>

#include "cmc/errors.hpp"
#include "cmc/rotation.hpp"

namespace cmc {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kScanPoints = 512;
// Relative offset above c0 where the scan starts, and the closest approach
// used when probing the threshold side of the K-range.
constexpr double kScanStart = 1e-6;
constexpr double kThresholdProbe = 1e-9;
// Upper scan limits: the regular window, the extension for targets close
// to a1, and the hard ceiling of that extension.
constexpr double kScanUpper = 1e6;
constexpr double kExtendedUpper = 1e10;
constexpr double kCeiling = 1e14;
constexpr double kNearLargeLimit = 1e-3;

ProblemParams spherical(int n, double H, double C) {
  return {SpaceKind::Spherical, n, H, C};
}

double polish(const std::function<double(double)>& f, double lo, double hi) {
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) {
    return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(a), std::abs(b));
  };
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

// Geometric grid on [lo, hi] with `points` nodes, sign changes of K - target
// appended to `brackets`.
void scan(int n, double H, double target, double lo, double hi, int points,
          std::vector<std::pair<double, double>>& brackets) {
  const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
  double prev_c = lo;
  double prev_f = rotation_K(spherical(n, H, lo)) - target;
  for (int i = 1; i < points; ++i) {
    const double c = i + 1 == points ? hi : lo * std::pow(ratio, i);
    const double f = rotation_K(spherical(n, H, c)) - target;
    if (prev_f == 0.0) {
      brackets.emplace_back(prev_c, prev_c);
    } else if ((prev_f < 0.0) != (f < 0.0) && f != 0.0) {
      brackets.emplace_back(prev_c, c);
    }
    prev_c = c;
    prev_f = f;
  }
  if (prev_f == 0.0) brackets.emplace_back(prev_c, prev_c);
}

}  // namespace

double EmbeddingSolution::target() const { return 2.0 * pi * k / m; }

EmbeddingSolution make_solution(const ProblemParams& p, int m, int k) {
  EmbeddingSolution s;
  s.params = p;
  s.m = m;
  s.k = k;
  s.K_achieved = rotation_K(p);
  s.residual = std::abs(s.K_achieved - s.target());
  return s;
}

std::vector<EmbeddingSolution> solve_C(int n, double H, int m, int k) {
  if (n < 2) throw CmcError(ErrorCode::InvalidArgument, "n must be >= 2");
  if (m < 2) throw CmcError(ErrorCode::InvalidArgument, "m must be >= 2");
  if (k < 1) throw CmcError(ErrorCode::InvalidArgument, "k must be >= 1");
  if (std::gcd(k, m) != 1) {
    throw CmcError(ErrorCode::InvalidArgument, "k and m must be coprime");
  }
  validate_family(SpaceKind::Spherical, n, H);

  const double target = 2.0 * pi * k / m;
  const KBounds bounds = k_limits(n, H);
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * target;
  if (!(target > bounds.a1 + slack && target < bounds.a2n - slack)) {
    throw CmcError(ErrorCode::Infeasible,
                   "2k pi/m lies outside the range (a1(H), a2n(H)) swept by K");
  }

  const double c0 = critical_point(n, H).c0;
  const double lo = c0 * (1.0 + kScanStart);
  double hi = std::max(kScanUpper, c0 * kScanUpper);
  std::vector<std::pair<double, double>> brackets;
  scan(n, H, target, lo, hi, kScanPoints, brackets);

  // Targets just above a1 are only reached at very large C; keep extending
  // by the same density per decade.
  const double per_decade = (kScanPoints - 1) / std::log10(hi / lo);
  while (brackets.empty() && std::abs(bounds.a1 - target) < kNearLargeLimit &&
         hi < kCeiling) {
    const double next = hi < kExtendedUpper ? kExtendedUpper : hi * 1e2;
    const int points =
        std::max(2, static_cast<int>(std::ceil(per_decade * std::log10(next / hi))) + 1);
    scan(n, H, target, hi, next, points, brackets);
    hi = next;
  }
  if (brackets.empty()) {
    throw CmcError(ErrorCode::NoCrossing,
                   "K - 2k pi/m has no sign change on the scanned C-range");
  }

  auto f = [&](double c) { return rotation_K(spherical(n, H, c)) - target; };
  std::vector<EmbeddingSolution> out;
  for (const auto& [a, b] : brackets) {
    const double c = a == b ? a : polish(f, a, b);
    out.push_back(make_solution(spherical(n, H, c), m, k));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.params.C < y.params.C;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto& x, const auto& y) {
                          return x.params.C == y.params.C;
                        }),
            out.end());
  return out;
}

std::pair<double, double> norm_a_range(const ProblemParams& p) {
  const PolyRoots r = roots_general(p);
  const double n = p.n;
  const double base = n * p.H * p.H;
  // g^{-2n} is decreasing, so the extremes sit at the turning points.
  const double at_t1 = base + n * (n - 1.0) * std::pow(r.t1, -2.0 * n);
  const double at_t2 = base + n * (n - 1.0) * std::pow(r.t2, -2.0 * n);
  return {at_t2, at_t1};
}

std::pair<int, int> simplest_fraction(double lo, double hi, int max_den) {
  if (!(lo < hi) || !(lo >= 0.0)) return {0, 0};
  // Stern-Brocot descent between left = a/b and right = c/d.
  long a = 0, b = 1, c = 1, d = 0;
  while (true) {
    const long num = a + c;
    const long den = b + d;
    if (den > max_den) return {0, 0};
    const double value = static_cast<double>(num) / static_cast<double>(den);
    if (value <= lo) {
      a = num;
      b = den;
    } else if (value >= hi) {
      c = num;
      d = den;
    } else {
      return {static_cast<int>(num), static_cast<int>(den)};
    }
  }
}

NearIsoparametricResult near_isoparametric_minimal(int n, double eps) {
  if (n < 2) throw CmcError(ErrorCode::InvalidArgument, "n must be >= 2");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw CmcError(ErrorCode::InvalidArgument, "eps must lie in (0, 1)");
  }
  const double c0 = critical_point(n, 0.0).c0;
  const double nn = n;
  auto within = [&](double delta) {
    const auto [lo, hi] = norm_a_range(spherical(n, 0.0, c0 * (1.0 + delta)));
    return lo >= nn - eps && hi <= nn + eps;
  };

  // Largest relative offset above c0 meeting the curvature band, by
  // bisection in log(delta).
  double good = std::log(kThresholdProbe);
  double bad = std::log(1e3);
  if (!within(std::exp(good))) {
    throw CmcError(ErrorCode::Infeasible, "curvature band too narrow to resolve");
  }
  if (within(std::exp(bad))) {
    good = bad;
  } else {
    for (int i = 0; i < 100 && bad - good > 1e-12; ++i) {
      const double mid = 0.5 * (good + bad);
      (within(std::exp(mid)) ? good : bad) = mid;
    }
  }
  const double c_near = c0 * (1.0 + kThresholdProbe);
  const double c_far = c0 * (1.0 + std::exp(good));

  const double k_near = rotation_K(spherical(n, 0.0, c_near));
  const double k_far = rotation_K(spherical(n, 0.0, c_far));
  const double lo = std::min(k_near, k_far) / (2.0 * pi);
  const double hi = std::max(k_near, k_far) / (2.0 * pi);
  const auto [k, m] = simplest_fraction(lo, hi, 1000);
  if (m == 0) {
    throw CmcError(ErrorCode::Infeasible,
                   "no 2k pi/m with m <= 1000 inside the admissible K-window");
  }

  const double target = 2.0 * pi * k / m;
  auto f = [&](double c) { return rotation_K(spherical(n, 0.0, c)) - target; };
  const double c = polish(f, c_near, c_far);
  NearIsoparametricResult out;
  out.solution = make_solution(spherical(n, 0.0, c), m, k);
  std::tie(out.norm_a_min, out.norm_a_max) = norm_a_range(out.solution.params);
  return out;
}

std::string_view to_string(Stability s) {
  return s == Stability::Stable ? "Stable" : "Inconclusive";
}

StabilityVerdict cone_stability_check(const EmbeddingSolution& sol) {
  if (sol.params.H != 0.0) {
    throw CmcError(ErrorCode::NotMinimal, "cone stability needs H = 0");
  }
  const double n = sol.params.n;
  StabilityVerdict v;
  std::tie(v.inf_norm_a, v.sup_norm_a) = norm_a_range(sol.params);
  v.curvature_bound = v.sup_norm_a <= n + 0.125;
  v.dimension_bound = 0.25 * (n - 1.0) * (n - 1.0) >= n + 0.25;
  v.verdict = v.curvature_bound && v.dimension_bound ? Stability::Stable
                                                     : Stability::Inconclusive;
  return v;
}

}  // namespace cmc
