#include "cmc/scalar_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "cmc/detail/power_difference.hpp"
#include "cmc/errors.hpp"

namespace cmc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BelowThreshold: return "BelowThreshold";
    case ErrorCode::NoPeriodicSolution: return "NoPeriodicSolution";
    case ErrorCode::HyperbolicUnbounded: return "HyperbolicUnbounded";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::PoleCollision: return "PoleCollision";
    case ErrorCode::NotMinimal: return "NotMinimal";
  }
  return "Unknown";
}

std::string_view to_string(SpaceKind space) {
  switch (space) {
    case SpaceKind::Spherical: return "spherical";
    case SpaceKind::Hyperbolic: return "hyperbolic";
    case SpaceKind::Euclidean: return "euclidean";
  }
  return "unknown";
}

SpaceKind parse_space(std::string_view name) {
  if (name == "spherical") return SpaceKind::Spherical;
  if (name == "hyperbolic") return SpaceKind::Hyperbolic;
  if (name == "euclidean") return SpaceKind::Euclidean;
  throw CmcError(ErrorCode::InvalidArgument,
                 "unknown space '" + std::string(name) + "'");
}

double space_coefficient(SpaceKind space, double H) {
  switch (space) {
    case SpaceKind::Spherical: return 1.0 + H * H;
    case SpaceKind::Hyperbolic: return H * H - 1.0;
    case SpaceKind::Euclidean: return H * H;
  }
  return 0.0;
}

void validate_family(SpaceKind space, int n, double H) {
  if (n < 2) {
    throw CmcError(ErrorCode::InvalidArgument, "dimension n must be >= 2");
  }
  if (!std::isfinite(H)) {
    throw CmcError(ErrorCode::InvalidArgument, "H must be finite");
  }
  switch (space) {
    case SpaceKind::Spherical:
      if (H < 0.0) {
        throw CmcError(ErrorCode::InvalidArgument,
                       "spherical family requires H >= 0");
      }
      break;
    case SpaceKind::Hyperbolic:
      if (H <= 1.0) {
        throw CmcError(ErrorCode::HyperbolicUnbounded,
                       "hyperbolic profiles are periodic only for H > 1");
      }
      break;
    case SpaceKind::Euclidean:
      if (H == 0.0) {
        throw CmcError(ErrorCode::InvalidArgument,
                       "euclidean family requires H != 0");
      }
      break;
  }
}

namespace {

// P(v) = sum coef * v^power.
std::array<std::pair<double, double>, 3> potential_terms(SpaceKind space, int n,
                                                         double H) {
  const double nn = n;
  return {{{1.0, 2.0 - 2.0 * nn},
           {space_coefficient(space, H), 2.0},
           {2.0 * H, 2.0 - nn}}};
}

}  // namespace

double xi(double s, const ProblemParams& p) {
  const double kappa = space_coefficient(p.space, p.H);
  const double sn = std::pow(s, p.n);
  return p.C * std::pow(s, 2 * p.n - 2) - 1.0 - kappa * sn * sn -
         2.0 * p.H * sn;
}

double potential(double v, SpaceKind space, int n, double H) {
  double sum = 0.0;
  for (auto [coef, power] : potential_terms(space, n, H)) {
    if (coef != 0.0) sum += coef * std::pow(v, power);
  }
  return sum;
}

double q_energy(double v, const ProblemParams& p) {
  return p.C - potential(v, p.space, p.n, p.H);
}

double potential_difference(double v, double base, SpaceKind space, int n,
                            double H) {
  double sum = 0.0;
  for (auto [coef, power] : potential_terms(space, n, H)) {
    if (coef != 0.0) sum += coef * detail::pow_diff(base, v - base, power);
  }
  return sum;
}

double q_rescaled(double t, const ProblemParams& p) {
  const double kappa = space_coefficient(p.space, p.H);
  const double n = p.n;
  return 1.0 - kappa * t * t - std::pow(p.C, -n) * std::pow(t, 2.0 - 2.0 * n) -
         2.0 * p.H * std::pow(p.C, -n / 2.0) * std::pow(t, 2.0 - n);
}

CriticalPoint critical_point(int n, double H) {
  if (n < 2) throw CmcError(ErrorCode::InvalidArgument, "n must be >= 2");
  if (H < 0.0) {
    throw CmcError(ErrorCode::InvalidArgument, "spherical family requires H >= 0");
  }
  const double nn = n;
  const double s = std::sqrt(H * H * nn * nn + 4.0 * (nn - 1.0));
  const double base = (nn - 2.0) * H + s;
  CriticalPoint cp;
  cp.v0 = std::pow(base / (2.0 + 2.0 * H * H), 1.0 / nn);
  cp.c0 = nn * std::pow(2.0 + 2.0 * H * H, (nn - 2.0) / nn) *
          (2.0 + nn * H * H + H * s) / std::pow(base, (2.0 * nn - 2.0) / nn);
  cp.a = 2.0 * nn * (1.0 + H * H) *
         (4.0 * (nn - 1.0) + H * H * nn * nn + H * (nn - 2.0) * s) /
         (base * base);
  return cp;
}

CriticalPoint critical_point(SpaceKind space, int n, double H) {
  validate_family(space, n, H);
  if (space == SpaceKind::Spherical) return critical_point(n, H);

  // x = v0^n solves kappa x^2 + H (2-n) x - (n-1) = 0.
  const double nn = n;
  const double kappa = space_coefficient(space, H);
  const double b = H * (2.0 - nn);
  const double c = nn - 1.0;
  const double disc = std::sqrt(b * b + 4.0 * kappa * c);
  const double x = b <= 0.0 ? (-b + disc) / (2.0 * kappa) : 2.0 * c / (b + disc);

  CriticalPoint cp;
  cp.v0 = std::pow(x, 1.0 / nn);
  cp.c0 = potential(cp.v0, space, n, H);
  const double second = (2.0 - 2.0 * nn) * (1.0 - 2.0 * nn) / (x * x) +
                        2.0 * kappa +
                        2.0 * H * (2.0 - nn) * (1.0 - nn) / x;
  cp.a = 0.5 * second;
  return cp;
}

std::pair<double, double> roots_n2(double H, double C) {
  const double kappa = 1.0 + H * H;
  const double disc = C * C - 4.0 * H * C - 4.0;
  if (!(disc >= 0.0) || C <= 0.0) {
    throw CmcError(ErrorCode::BelowThreshold,
                   "C must exceed 2(H + sqrt(1 + H^2))");
  }
  // Vieta form for t1 avoids cancellation at large C.
  const double big = C - 2.0 * H + std::sqrt(disc);
  return {std::sqrt(2.0 / big), std::sqrt(big / (2.0 * kappa))};
}

namespace {

template <class F>
double bracketed_root(F&& f, double lo, double hi) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  std::uintmax_t max_iter = 300;
  auto tol = [](double a, double b) {
    return std::abs(b - a) <=
           4.0 * std::numeric_limits<double>::epsilon() *
               std::max(std::abs(a), std::abs(b));
  };
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol,
                                                  max_iter);
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

}  // namespace

PolyRoots roots_general(const ProblemParams& p) {
  const CriticalPoint cp = critical_point(p.space, p.n, p.H);
  const double gap = p.C - cp.c0;
  const double scale = std::max(std::abs(cp.c0), 1.0);
  if (!(gap >= kRootThreshold * scale * (1.0 - 1e-3))) {
    throw CmcError(ErrorCode::NoPeriodicSolution,
                   "C must exceed c0 = " + std::to_string(cp.c0) +
                       " for a periodic profile");
  }

  // f(v) = q(v0) - q(v) - gap = P(v) - P(v0) - (C - c0)
  auto f = [&](double v) {
    return potential_difference(v, cp.v0, p.space, p.n, p.H) - gap;
  };

  double lo = 1e-6 * cp.v0;
  for (int i = 0; f(lo) <= 0.0; ++i) {
    if (i > 60) throw CmcError(ErrorCode::NoRoot, "left root not bracketed");
    lo *= 1e-3;
  }
  const double kappa = space_coefficient(p.space, p.H);
  double hi = std::max(2.0 * cp.v0,
                       p.C > 0.0 ? 1.01 * std::sqrt(p.C / kappa) : 0.0);
  for (int i = 0; f(hi) <= 0.0; ++i) {
    if (i > 200) throw CmcError(ErrorCode::NoRoot, "right root not bracketed");
    hi *= 2.0;
  }

  PolyRoots roots;
  roots.v0 = cp.v0;
  roots.c0 = cp.c0;
  roots.a = cp.a;
  roots.t1 = bracketed_root(f, lo, cp.v0);
  roots.t2 = bracketed_root(f, cp.v0, hi);
  return roots;
}

}  // namespace cmc
