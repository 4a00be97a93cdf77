#include "cmc/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cmc/detail/quadrature.hpp"
#include "cmc/errors.hpp"
#include "profile_integrand.hpp"

namespace cmc {

ProfileSolution build_profile(const ProblemParams& p) {
  const CriticalPoint cp = critical_point(p.space, p.n, p.H);
  const double scale = std::max(std::abs(cp.c0), 1.0);
  if (!(p.C - cp.c0 >= kProfileThreshold * scale * (1.0 - 1e-3))) {
    throw CmcError(ErrorCode::NoPeriodicSolution,
                   "C is too close to the isoparametric threshold c0");
  }

  ProfileSolution sol;
  sol.params_ = p;
  sol.roots_ = roots_general(p);

  const detail::ProfileIntegrand integrand(p, sol.roots_);
  const auto halves = detail::profile_panels(integrand);
  const std::size_t count = halves.forward.size() + halves.reflected.size();
  constexpr double pi = std::numbers::pi;

  sol.segments_.reserve(count);
  sol.psi_.reserve(count + 1);
  sol.cum_u_.reserve(count + 1);
  sol.cum_theta_.reserve(count + 1);
  sol.psi_.push_back(0.0);
  sol.cum_u_.push_back(0.0);
  sol.cum_theta_.push_back(0.0);
  auto append = [&](const detail::Panel<2>& panel, bool reflected) {
    if (reflected) {
      sol.segments_.push_back({true, panel.b, panel.a});
      sol.psi_.push_back(pi - panel.a);
    } else {
      sol.segments_.push_back({false, panel.a, panel.b});
      sol.psi_.push_back(panel.b);
    }
    sol.cum_u_.push_back(sol.cum_u_.back() + panel.value[0]);
    sol.cum_theta_.push_back(sol.cum_theta_.back() + panel.value[1]);
  };
  for (const auto& panel : halves.forward) append(panel, false);
  for (auto it = halves.reflected.rbegin(); it != halves.reflected.rend(); ++it) {
    append(*it, true);
  }
  sol.psi_.back() = pi;
  sol.period_ = 2.0 * sol.cum_u_.back();
  sol.rotation_ = 2.0 * sol.cum_theta_.back();
  sol.guess_ = detail::MonotoneCubic(sol.cum_u_, sol.psi_);
  return sol;
}

ProfileSolution::Located ProfileSolution::locate(double u_half) const {
  using Integrand = detail::ProfileIntegrand;
  const Integrand integrand(params_, roots_);
  auto it = std::upper_bound(cum_u_.begin(), cum_u_.end(), u_half);
  std::size_t j = it == cum_u_.begin() ? 0 : static_cast<std::size_t>(it - cum_u_.begin()) - 1;
  j = std::min(j, segments_.size() - 1);
  const Segment& seg = segments_[j];

  // y = sigma * local increases with u on both halves.
  const double sigma = seg.reflected ? -1.0 : 1.0;
  auto angle = [&](double local) {
    return seg.reflected ? Integrand::reflected(local) : Integrand::forward(local);
  };
  auto partial = [&](double local) {
    if (local == seg.start) return std::array<double, 2>{0.0, 0.0};
    auto f = [&](double x) { return integrand.rates(angle(x)); };
    return seg.reflected ? detail::gauss_legendre<2>(f, local, seg.start)
                         : detail::gauss_legendre<2>(f, seg.start, local);
  };

  double lo = sigma * seg.start;
  double hi = sigma * seg.end;
  const double psi_guess = guess_(u_half);
  double y = std::clamp(seg.reflected ? -(std::numbers::pi - psi_guess) : psi_guess, lo, hi);

  for (int iter = 0; iter < 80; ++iter) {
    const double residual = cum_u_[j] + partial(sigma * y)[0] - u_half;
    if (residual == 0.0) break;
    if (residual > 0.0) {
      hi = y;
    } else {
      lo = y;
    }
    double next = y - residual * std::sqrt(integrand.h(angle(sigma * y)));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    constexpr double rel = 2.0 * std::numeric_limits<double>::epsilon();
    const bool done = std::abs(next - y) <= rel * std::abs(y);
    y = next;
    if (done || hi - lo <= rel * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return {seg.reflected, sigma * y, cum_theta_[j] + partial(sigma * y)[1]};
}

ProfileState ProfileSolution::eval(double u) const {
  const double turns = std::nearbyint(u / period_);
  ProfileState s = eval_offset(u - turns * period_);
  s.u = u;
  s.theta += turns * rotation_;
  return s;
}

ProfileState ProfileSolution::eval_offset(double offset) const {
  using Integrand = detail::ProfileIntegrand;
  const Integrand integrand(params_, roots_);
  const double half = 0.5 * period_;
  const double a = std::min(std::abs(offset), period_);
  // Past T/2 the point lies on the far side of the t2 turning point.
  const bool far = a > half;
  const double u_half = far ? period_ - a : a;
  const double side = offset < 0.0 ? -1.0 : 1.0;

  const Located loc = locate(u_half);
  const auto angle =
      loc.reflected ? Integrand::reflected(loc.local) : Integrand::forward(loc.local);
  const double hv = integrand.h(angle);

  ProfileState s;
  s.u = offset;
  s.g = integrand.g(angle);
  s.gprime = side * (far ? -1.0 : 1.0) * integrand.slope(angle, hv);
  const double sqrt_c = std::sqrt(params_.C);
  s.r = s.g / sqrt_c;
  s.rprime = s.gprime / sqrt_c;
  s.lambda = integrand.lambda(s.g);
  s.mu = params_.n * params_.H - (params_.n - 1) * s.lambda;
  s.theta = side * (far ? rotation_ - loc.theta : loc.theta);

  const double q = integrand.q(angle, hv);
  switch (params_.space) {
    case SpaceKind::Spherical:
      s.radius_sq = (s.g * s.g * s.lambda * s.lambda + q) / params_.C;
      break;
    case SpaceKind::Hyperbolic:
      s.radius_sq = 1.0 + s.r * s.r;
      break;
    case SpaceKind::Euclidean:
      s.radius_sq = 1.0;
      break;
  }
  return s;
}

double profile_closed_form_n2(double H, double C, double u) {
  const auto [t1, t2] = roots_n2(H, C);
  (void)t2;
  const double kappa = 1.0 + H * H;
  const double spread = std::sqrt(C * C - 4.0 * H * C - 4.0);
  const double s = std::sin(std::sqrt(kappa) * u);
  // (C - 2H - spread cos(2 sqrt(kappa) u)) / (2 kappa), rewritten about t1.
  return std::sqrt(t1 * t1 + spread * s * s / kappa);
}

}  // namespace cmc
