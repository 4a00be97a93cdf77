#pragma once

#include <string_view>
#include <vector>

#include "cmc/scalar_core.hpp"

namespace cmc {

/// Parameters with K(H, n, C) = 2 k pi / m.
struct EmbeddingSolution {
  ProblemParams params;
  int m = 2;
  int k = 1;
  double K_achieved = 0.0;
  double residual = 0.0;  // |K - 2 k pi / m|

  /// k = 1 gives an embedded hypersurface, k > 1 a compact immersed one.
  bool embedded() const { return k == 1; }
  double target() const;
};

/// Tolerance a polished solution must meet on |K - 2 k pi / m|.
inline constexpr double kEmbeddingResidual = 1e-8;

/// Every C at which the spherical rotation number crosses 2 k pi / m,
/// ascending. K is not known to be monotone in C, so the C-range is scanned
/// and each sign change is polished.
/// Throws InvalidArgument (bad n, m, k, or gcd(k, m) != 1), Infeasible when
/// 2 k pi / m lies outside (a1(H), a2n(H)), NoCrossing when the scan finds
/// no sign change.
std::vector<EmbeddingSolution> solve_C(int n, double H, int m, int k = 1);

/// Builds the solution record for given (n, H, C) and (m, k) without solving.
EmbeddingSolution make_solution(const ProblemParams& p, int m, int k);

struct NearIsoparametricResult {
  EmbeddingSolution solution;
  double norm_a_min = 0.0;  // inf of |A|^2 over the hypersurface
  double norm_a_max = 0.0;  // sup of |A|^2
};

/// Minimal (H = 0) example with n - eps <= |A|^2 <= n + eps whose rotation
/// number is a rational multiple 2 k pi / m of 2 pi, m <= 1000 and m as
/// small as possible.
/// Throws InvalidArgument unless n >= 2 and 0 < eps < 1, Infeasible when no
/// such fraction fits in the admissible K-window.
NearIsoparametricResult near_isoparametric_minimal(int n, double eps);

/// Range of |A|^2 = n H^2 + n (n-1) g^{-2n} over the profile of p.
std::pair<double, double> norm_a_range(const ProblemParams& p);

enum class Stability { Stable, Inconclusive };
std::string_view to_string(Stability s);

struct StabilityVerdict {
  Stability verdict = Stability::Inconclusive;
  double sup_norm_a = 0.0;
  double inf_norm_a = 0.0;
  bool curvature_bound = false;  // sup |A|^2 <= n + 1/8
  bool dimension_bound = false;  // ((n-1)/2)^2 >= n + 1/4
};

/// Sufficient test for area-stability of the cone over a minimal example.
/// Throws NotMinimal when H != 0.
StabilityVerdict cone_stability_check(const EmbeddingSolution& sol);

/// Simplest fraction k/m (smallest m, then smallest k) strictly inside
/// (lo, hi) with m <= max_den, found by Stern-Brocot descent.
/// Returns {0, 0} if there is none.
std::pair<int, int> simplest_fraction(double lo, double hi, int max_den);

}  // namespace cmc
