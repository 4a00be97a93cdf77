#pragma once

#include <vector>

#include "cmc/detail/monotone_cubic.hpp"
#include "cmc/scalar_core.hpp"

namespace cmc {

/// Profiles closer than this (relative) to c0 are rejected.
inline constexpr double kProfileThreshold = 1e-10;

/// State of the profile at arc length u.
struct ProfileState {
  double u = 0.0;
  double g = 0.0;
  double gprime = 0.0;
  double r = 0.0;       // g / sqrt(C)
  double rprime = 0.0;
  double lambda = 0.0;  // H + g^{-n}, multiplicity n-1
  double mu = 0.0;      // nH - (n-1) lambda
  double theta = 0.0;   // angle (S, H) or height R (Euclidean)
  /// 1 - r^2 (sphere), 1 + r^2 (hyperbolic space), 1 (Euclidean), computed
  /// without cancellation.
  double radius_sq = 0.0;
};

/// Periodic solution g of (g')^2 + g^{2-2n} + kappa g^2 + 2H g^{2-n} = C,
/// normalised so that g(0) = t1 and g(T/2) = t2, together with the
/// accumulated angle theta. Immutable after construction.
class ProfileSolution {
 public:
  const ProblemParams& params() const { return params_; }
  const PolyRoots& roots() const { return roots_; }

  /// Period T of g.
  double period() const { return period_; }
  /// theta(T): rotation number K (angle advance, or height advance in R^{n+1}).
  double rotation() const { return rotation_; }

  ProfileState eval(double u) const;
  /// State at u = offset, offset in [-T, T], measured from the turning point
  /// g = t1 at u = 0. Small offsets keep full relative precision, which
  /// finite differences near the neck rely on.
  ProfileState eval_offset(double offset) const;
  double g(double u) const { return eval(u).g; }
  double theta(double u) const { return eval(u).theta; }

  std::size_t panel_count() const { return segments_.size(); }

 private:
  friend ProfileSolution build_profile(const ProblemParams& p);

  /// Quadrature panel in its local variable: psi on the first half,
  /// phi = pi - psi (running from start down to end) on the second.
  struct Segment {
    bool reflected = false;
    double start = 0.0;
    double end = 0.0;
  };
  struct Located {
    bool reflected;
    double local;
    double theta;
  };
  Located locate(double u_half) const;

  ProblemParams params_;
  PolyRoots roots_;
  double period_ = 0.0;
  double rotation_ = 0.0;
  std::vector<Segment> segments_;
  std::vector<double> psi_;  // approximate psi at segment boundaries
  std::vector<double> cum_u_;
  std::vector<double> cum_theta_;
  detail::MonotoneCubic guess_;
};

/// Inverse-integral construction of g. Throws NoPeriodicSolution when
/// C < c0 (1 + kProfileThreshold), QuadratureFailure if refinement stalls.
ProfileSolution build_profile(const ProblemParams& p);

/// Closed-form n = 2 spherical solution, shifted so that g(0) = t1.
double profile_closed_form_n2(double H, double C, double u);

}  // namespace cmc
