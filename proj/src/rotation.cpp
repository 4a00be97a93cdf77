#include "cmc/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "cmc/detail/quadrature.hpp"
#include "cmc/errors.hpp"
#include "profile_integrand.hpp"

namespace cmc {

namespace {

constexpr double pi = std::numbers::pi;

std::array<double, 2> period_and_angle(const ProblemParams& p) {
  const PolyRoots roots = roots_general(p);
  const detail::ProfileIntegrand integrand(p, roots);
  const auto halves = detail::profile_panels(integrand);
  const auto a = detail::panel_sum<2>(halves.forward);
  const auto b = detail::panel_sum<2>(halves.reflected);
  return {2.0 * (a[0] + b[0]), 2.0 * (a[1] + b[1])};
}

}  // namespace

double rotation_K(const ProblemParams& p) { return period_and_angle(p)[1]; }

double profile_period(const ProblemParams& p) { return period_and_angle(p)[0]; }

LemmaCoefficients lemma_coefficients(double H, double C) {
  const double kappa = 1.0 + H * H;
  LemmaCoefficients lc;
  lc.q1 = (2.0 * H - C) / (2.0 * C * kappa);
  lc.q2 = std::sqrt(C * C - 4.0 * C * H - 4.0) / (2.0 * C * kappa);
  return lc;
}

double rotation_K_n2_lemma(double H, double C) {
  if (H < 0.0) {
    throw CmcError(ErrorCode::InvalidArgument, "spherical family requires H >= 0");
  }
  const auto [t1, t2] = roots_n2(H, C);
  const double kappa = 1.0 + H * H;
  // u = r^2 = -q1 - q2 cos(t) runs from t1^2/C to t2^2/C.
  const double u1 = t1 * t1 / C;
  const double u2 = t2 * t2 / C;
  const double spread = u2 - u1;
  // 1 - u2 = t2^2 (H + t2^{-2})^2 / C since q(t2) = 0.
  const double lam2 = H + 1.0 / (t2 * t2);
  const double gap2 = t2 * t2 * lam2 * lam2 / C;
  const double root_kappa = std::sqrt(kappa);

  auto integrand = [&](double t) {
    const double s = std::sin(0.5 * t);
    const double c = std::cos(0.5 * t);
    const double u = u1 + spread * s * s;
    const double one_minus_u = gap2 + spread * c * c;
    return (1.0 / C + H * u) / (one_minus_u * std::sqrt(u) * root_kappa);
  };
  return detail::integrate(integrand, 0.0, pi);
}

double limit_large_C(double H) { return 2.0 * std::atan2(1.0, H); }

double limit_threshold(int n, double H) {
  const double nn = n;
  return pi * std::sqrt(2.0 - 2.0 * nn * H /
                                  std::sqrt(4.0 * (nn - 1.0) + H * H * nn * nn));
}

double threshold_bound_n2(double H) {
  const double root = std::sqrt(1.0 + H * H);
  return std::numbers::sqrt2 * pi * std::pow(H + root, 1.5) /
         (std::pow(1.0 + H * H, 0.25) * (1.0 + 2.0 * H * H + 2.0 * H * root));
}

KBounds k_limits(int n, double H) {
  if (n < 2) throw CmcError(ErrorCode::InvalidArgument, "n must be >= 2");
  if (H < 0.0) throw CmcError(ErrorCode::InvalidArgument, "H must be >= 0");
  return {limit_large_C(H), limit_threshold(n, H), threshold_bound_n2(H)};
}

std::pair<double, double> admissible_H_interval(int n, int m) {
  if (n < 2 || m < 2) {
    throw CmcError(ErrorCode::InvalidArgument, "need n >= 2 and m >= 2");
  }
  const double mm = m;
  const double lo = m == 2 ? 0.0 : 1.0 / std::tan(pi / mm);
  const double hi = (mm * mm - 2.0) * std::sqrt(n - 1.0) /
                    (n * std::sqrt(mm * mm - 1.0));
  if (!(lo < hi)) {
    throw CmcError(ErrorCode::EmptyInterval,
                   "cot(pi/m) is not below the upper bound for this (n, m)");
  }
  return {lo, hi};
}

double singular_limit_oracle(const std::function<double(double)>& f, double c,
                             double search_max) {
  if (!(c > 0.0)) throw CmcError(ErrorCode::InvalidArgument, "c must be > 0");
  auto shifted = [&](double t) { return f(t) + c; };

  // Walk outward geometrically; the first root can sit at O(sqrt(c)).
  double prev = 0.0;
  double t = 1e-12 * search_max;
  while (shifted(t) > 0.0) {
    prev = t;
    t *= 1.05;
    if (t > search_max) {
      throw CmcError(ErrorCode::NoRoot, "f + c has no root in the search window");
    }
  }
  std::uintmax_t iters = 300;
  auto tol = [](double a, double b) {
    return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(a), std::abs(b));
  };
  const auto [lo, hi] = boost::math::tools::toms748_solve(shifted, prev, t, tol, iters);
  const double root = 0.5 * (lo + hi);

  // t = root sin(phi) removes the inverse square root at the endpoint.
  auto integrand = [&](double phi) {
    const double value = shifted(root * std::sin(phi));
    if (value <= 0.0) return 0.0;
    return root * std::cos(phi) / std::sqrt(value);
  };
  // Near phi = pi/2, f + c is a difference of nearly equal values, so its
  // relative error grows like eps / (pi/2 - phi)^2. The integrand is smooth,
  // so a tolerance above that noise floor is met without endpoint refinement.
  detail::AdaptiveOptions opt;
  opt.rel_tol = 1e-11;
  return detail::integrate(integrand, 0.0, 0.5 * pi, opt);
}

}  // namespace cmc
