#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "cmc/detail/quadrature.hpp"

#include "cmc/detail/power_difference.hpp"
#include "cmc/scalar_core.hpp"

namespace cmc::detail {

/// Integrands of the period and angle integrals after the substitution
/// s = t1 + (t2 - t1) sin^2(psi/2), psi in [0, pi]. With
/// q(s) = (s - t1)(t2 - s) h(psi) the period element ds/sqrt(q) becomes
/// dpsi/sqrt(h), which is smooth up to both turning points.
class ProfileIntegrand {
 public:
  ProfileIntegrand(const ProblemParams& p, const PolyRoots& roots)
      : p_(p), t1_(roots.t1), t2_(roots.t2), width_(roots.t2 - roots.t1) {
    const double n = p.n;
    terms_ = {{{1.0, 2.0 - 2.0 * n},
               {space_coefficient(p.space, p.H), 2.0},
               {2.0 * p.H, 2.0 - n}}};
    sqrt_c_ = std::sqrt(p.C);
    v0_ = roots.v0;
    e1_ = (roots.t1 - roots.v0) / roots.v0;
    e2_ = (roots.t2 - roots.v0) / roots.v0;
    clustered_ = std::max(std::abs(e1_), std::abs(e2_)) <= kClusterRadius;
  }

  double t1() const { return t1_; }
  double t2() const { return t2_; }
  double width() const { return width_; }

  /// Half-angle sine/cosine pair. The second half of [0, pi] is addressed
  /// through phi = pi - psi so that both turning points keep full relative
  /// resolution.
  struct Angle {
    double s;
    double c;
  };
  static Angle forward(double psi) {
    return {std::sin(0.5 * psi), std::cos(0.5 * psi)};
  }
  static Angle reflected(double phi) {
    return {std::cos(0.5 * phi), std::sin(0.5 * phi)};
  }

  double g(Angle a) const { return t1_ + width_ * a.s * a.s; }
  double g(double psi) const { return g(forward(psi)); }

  /// h = P[t1, t2, g] > 0. Near the threshold the roots cluster about v0
  /// and h is summed as a series in the relative offsets; otherwise it is
  /// formed from first divided differences about the nearer root.
  double h(Angle a) const {
    const double s2 = a.s * a.s;
    const double c2 = a.c * a.c;
    if (clustered_) {
      const double e = s2 <= c2 ? e1_ + width_ * s2 / v0_ : e2_ - width_ * c2 / v0_;
      return clustered_h(e);
    }
    double slope = 0.0;
    if (s2 <= c2) {
      for (auto [coef, power] : terms_) {
        if (coef != 0.0) slope += coef * pow_ddiff(t1_, width_ * s2, power);
      }
      return -slope / (width_ * c2);
    }
    for (auto [coef, power] : terms_) {
      if (coef != 0.0) slope += coef * pow_ddiff(t2_, -width_ * c2, power);
    }
    return slope / (width_ * s2);
  }
  double h(double psi) const { return h(forward(psi)); }

  /// q(g) = (g')^2.
  double q(Angle a, double h_value) const {
    return width_ * width_ * a.s * a.s * a.c * a.c * h_value;
  }

  /// |g'| = (t2 - t1) s c sqrt(h).
  double slope(Angle a, double h_value) const {
    return width_ * a.s * a.c * std::sqrt(h_value);
  }

  double lambda(double g) const { return p_.H + std::pow(g, -p_.n); }

  /// Derivative of the accumulated angle (or height, in R^{n+1}) with
  /// respect to arc length u, as a function of g and q(g).
  double angle_rate(double g, double q_value) const {
    const double lam = lambda(g);
    switch (p_.space) {
      case SpaceKind::Spherical:
        // C - g^2 = g^2 lambda^2 + q(g); avoids cancellation near r = 1.
        return sqrt_c_ * g * lam / (g * g * lam * lam + q_value);
      case SpaceKind::Hyperbolic:
        return sqrt_c_ * g * lam / (p_.C + g * g);
      case SpaceKind::Euclidean:
        return g * lam / sqrt_c_;
    }
    return 0.0;
  }

  /// {du, dtheta} per unit half-angle.
  std::array<double, 2> rates(Angle a) const {
    const double hv = h(a);
    const double inv = 1.0 / std::sqrt(hv);
    return {inv, angle_rate(g(a), q(a, hv)) * inv};
  }
  std::array<double, 2> operator()(double psi) const { return rates(forward(psi)); }

 private:
  static constexpr double kClusterRadius = 0.1;

  /// Second divided difference of sum coef v^p at v0 (1 + e1), v0 (1 + e2),
  /// v0 (1 + e): v0^{p-2} sum_k binom(p, k) h_{k-2}(e1, e2, e), with h_j the
  /// complete homogeneous symmetric polynomials.
  double clustered_h(double e) const {
    constexpr int kTerms = 48;
    std::array<double, kTerms> hom{};
    // Build h_j(e1), then h_j(e1, e2), then h_j(e1, e2, e) in place.
    hom[0] = 1.0;
    for (int j = 1; j < kTerms; ++j) hom[j] = hom[j - 1] * e1_;
    for (double x : {e2_, e}) {
      for (int j = 1; j < kTerms; ++j) hom[j] += x * hom[j - 1];
    }
    double total = 0.0;
    for (auto [coef, power] : terms_) {
      if (coef == 0.0) continue;
      double binom = 0.5 * power * (power - 1.0);
      double sum = 0.0;
      for (int k = 2; k < kTerms + 2 && binom != 0.0; ++k) {
        sum += binom * hom[k - 2];
        binom *= (power - k) / (k + 1.0);
      }
      total += coef * std::pow(v0_, power - 2.0) * sum;
    }
    return total;
  }

  ProblemParams p_;
  double t1_, t2_, width_;
  double sqrt_c_ = 0.0;
  double v0_ = 0.0, e1_ = 0.0, e2_ = 0.0;
  bool clustered_ = false;
  std::array<std::pair<double, double>, 3> terms_{};
};

/// Adaptive panels for psi in [0, pi/2] (forward) and for phi = pi - psi in
/// [0, pi/2] (reflected). Panel values are positive in both.
struct HalfPanels {
  std::vector<Panel<2>> forward;
  std::vector<Panel<2>> reflected;
};

inline HalfPanels profile_panels(const ProfileIntegrand& f) {
  const double quarter = 0.5 * std::numbers::pi;
  HalfPanels out;
  out.forward = adaptive_panels<2>(
      [&](double psi) { return f.rates(ProfileIntegrand::forward(psi)); }, 0.0,
      quarter);
  out.reflected = adaptive_panels<2>(
      [&](double phi) { return f.rates(ProfileIntegrand::reflected(phi)); },
      0.0, quarter);
  return out;
}

}  // namespace cmc::detail
