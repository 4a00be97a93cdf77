#pragma once

#include <map>
#include <string>
#include <vector>

#include "cmc/embedding.hpp"

namespace cmc {

struct CheckResult {
  std::string name;  // "a" ... "i", or a limit check name
  std::string description;
  double max = 0.0;
  double mean = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  ProblemParams params;
  int m = 0;
  int k = 0;
  std::vector<CheckResult> checks;
  std::map<std::string, double> extras;

  bool all_pass() const;
  const CheckResult& check(const std::string& name) const;
};

/// Negative controls: the checker evaluates its model with these
/// deliberate perturbations while the profile itself stays exact.
struct Corruption {
  double c_scale = 1.0;      // C used in derived quantities is C * c_scale
  double theta_scale = 1.0;  // theta is replaced by theta * theta_scale
  bool flip_lambda = false;  // lambda -> -lambda in the mean-curvature check
};

struct VerifyOptions {
  int samples = 1000;
  Corruption corruption;
};

/// Pointwise structure-equation checks on the surface of `embedding`:
///  (a) first integral of g,         relative to C,            1e-8
///  (b) r-identity of the space,                               1e-8
///  (c) ambient norm and closure after m periods,              1e-7
///  (d) unit speed of u-curves (finite differences),           1e-8
///  (e) Weingarten relation d nu/du = -mu d phi/du,            1e-5
///  (f) nu along a y-great circle, principal curvature lambda, 1e-5
///  (g) frame B1, B2, B3 rebuilt from phi and its derivatives, 1e-6
///  (h) ((n-1) lambda + mu)/n = H,                             1e-12
///  (i) |A|^2 = n H^2 + n(n-1) g^{-2n},                        1e-10
/// Samples cover [0, m T). For non-spherical spaces there is no closure.
VerificationReport verify_surface(const EmbeddingSolution& embedding,
                                  const VerifyOptions& options = {});

/// Confirms K -> a1 as C -> infinity (probes C = 1e3, 1e5, 1e7) and
/// K -> a2n as C -> c0 (probes c0 (1 + 1e-2, 1e-4, 1e-6)) within 1e-3 with
/// monotonically shrinking error on each side.
VerificationReport verify_limits(int n, double H);

}  // namespace cmc
