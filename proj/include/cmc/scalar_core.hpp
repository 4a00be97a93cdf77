#pragma once

#include <string_view>
#include <utility>

namespace cmc {

enum class SpaceKind { Spherical, Hyperbolic, Euclidean };

std::string_view to_string(SpaceKind space);
SpaceKind parse_space(std::string_view name);

struct ProblemParams {
  SpaceKind space = SpaceKind::Spherical;
  int n = 2;
  double H = 0.0;
  double C = 0.0;
};

/// Coefficient of g^2 in the first integral: 1+H^2, H^2-1 or H^2.
double space_coefficient(SpaceKind space, double H);

/// Throws InvalidArgument / HyperbolicUnbounded when (space, n, H) has no
/// periodic profile family. C is not inspected.
void validate_family(SpaceKind space, int n, double H);

/// xi(s) = C s^{2n-2} - 1 - kappa s^{2n} - 2H s^n.
double xi(double s, const ProblemParams& p);

/// q(v) = C - v^{2-2n} - kappa v^2 - 2H v^{2-n}, so that (g')^2 = q(g).
double q_energy(double v, const ProblemParams& p);

/// The C-independent part P(v) = C - q(v).
double potential(double v, SpaceKind space, int n, double H);

/// P(v) - P(base) evaluated without cancellation from the large common terms.
double potential_difference(double v, double base, SpaceKind space, int n,
                            double H);

/// Rescaled polynomial q~(t) with q(v) = C q~(v / sqrt(C)).
double q_rescaled(double t, const ProblemParams& p);

struct CriticalPoint {
  double v0 = 0.0;  // unique positive critical point of q
  double c0 = 0.0;  // periodic solutions exist iff C > c0
  double a = 0.0;   // q''(v0) = -2a
};

/// Spherical closed forms.
CriticalPoint critical_point(int n, double H);
CriticalPoint critical_point(SpaceKind space, int n, double H);

struct PolyRoots {
  double t1 = 0.0;
  double t2 = 0.0;
  double v0 = 0.0;
  double c0 = 0.0;
  double a = 0.0;
};

/// Closed-form roots of xi for n = 2 in the sphere. Throws BelowThreshold
/// when C^2 - 4HC - 4 < 0.
std::pair<double, double> roots_n2(double H, double C);

/// Relative distance to c0 below which a C is treated as isoparametric.
inline constexpr double kRootThreshold = 1e-12;

/// Bracketed isolation of t1 in (0, v0) and t2 in (v0, inf).
/// Throws NoPeriodicSolution when C < c0 (1 + kRootThreshold).
PolyRoots roots_general(const ProblemParams& p);

}  // namespace cmc
