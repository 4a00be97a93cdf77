#pragma once

#include <functional>
#include <utility>

#include "cmc/scalar_core.hpp"

namespace cmc {

/// Angle advance K(H, n, C) = theta(T) of the profile curve over one period
/// of g. For hyperbolic space this is the hyperbolic angle, for Euclidean
/// space the height gained per period.
double rotation_K(const ProblemParams& p);

/// Period T of g.
double profile_period(const ProblemParams& p);

/// Coefficients of the n = 2 reduction
/// -u^2 (1+H^2) + (1 - 2H/C) u - C^{-2} = (1+H^2)(q2^2 - (u + q1)^2).
struct LemmaCoefficients {
  double q1 = 0.0;
  double q2 = 0.0;
};
LemmaCoefficients lemma_coefficients(double H, double C);

/// Alternative n = 2 evaluation of K through the cosine-substituted
/// integral in r^2. Throws BelowThreshold when C <= 2(H + sqrt(1+H^2)).
double rotation_K_n2_lemma(double H, double C);

/// 2 arccot(H): limit of K as C -> infinity.
double limit_large_C(double H);
/// pi sqrt(2 - 2nH / sqrt(4(n-1) + H^2 n^2)): limit of K as C -> c0+.
double limit_threshold(int n, double H);
/// n = 2 threshold limit written in closed form in H.
double threshold_bound_n2(double H);

struct KBounds {
  double a1 = 0.0;
  double a2n = 0.0;
  double b2 = 0.0;
};
KBounds k_limits(int n, double H);

/// Open interval of H guaranteeing an O(n) x Z_m invariant embedded example.
/// Throws EmptyInterval if the bounds cross.
std::pair<double, double> admissible_H_interval(int n, int m);

/// Integral of dt / sqrt(f(t) + c) from 0 to the first positive root of
/// f + c, for f(0) = f'(0) = 0, f''(0) < 0. Throws NoRoot if f + c does
/// not vanish on (0, search_max].
double singular_limit_oracle(const std::function<double(double)>& f, double c,
                             double search_max = 1.0);

}  // namespace cmc
