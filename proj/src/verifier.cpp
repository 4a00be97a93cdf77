#include "cmc/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "cmc/errors.hpp"
#include "cmc/profile.hpp"
#include "cmc/rotation.hpp"
#include "cmc/surface.hpp"

namespace cmc {

namespace {

using Vec = std::vector<double>;

struct Accumulator {
  double max = 0.0;
  double sum = 0.0;
  int count = 0;
  void add(double v) {
    v = std::abs(v);
    if (!(v <= max)) max = v;  // NaN propagates into max
    sum += v;
    ++count;
  }
  CheckResult result(std::string name, std::string description, double tol) const {
    CheckResult c;
    c.name = std::move(name);
    c.description = std::move(description);
    c.max = max;
    c.mean = count ? sum / count : 0.0;
    c.tolerance = tol;
    c.pass = count > 0 && max <= tol;
    return c;
  }
};

double norm(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Fourth-order central difference from values at x-2h, x-h, x+h, x+2h.
Vec central_difference(const std::array<Vec, 4>& v, double h) {
  Vec d(v[0].size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = (v[0][i] - 8.0 * v[1][i] + 8.0 * v[2][i] - v[3][i]) / (12.0 * h);
  }
  return d;
}

Vec combine(const Vec& a, double s, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
  return out;
}

class Model {
 public:
  Model(const ProfileSolution& sol, const Corruption& corruption)
      : sol_(sol), corruption_(corruption) {}

  /// Profile state with the configured perturbations applied.
  ProfileState apply(ProfileState s) const {
    const ProblemParams& p = sol_.params();
    if (corruption_.c_scale != 1.0) {
      const double root = std::sqrt(p.C * corruption_.c_scale);
      s.r = s.g / root;
      s.rprime = s.gprime / root;
      switch (p.space) {
        case SpaceKind::Spherical: s.radius_sq = 1.0 - s.r * s.r; break;
        case SpaceKind::Hyperbolic: s.radius_sq = 1.0 + s.r * s.r; break;
        case SpaceKind::Euclidean: s.radius_sq = 1.0; break;
      }
    }
    s.theta *= corruption_.theta_scale;
    return s;
  }
  ProfileState at_offset(double offset) const { return apply(sol_.eval_offset(offset)); }
  ProfileState at(double u) const { return apply(sol_.eval(u)); }
  double effective_C() const { return sol_.params().C * corruption_.c_scale; }

 private:
  const ProfileSolution& sol_;
  Corruption corruption_;
};

// Rotation rate of the profile plane: d theta / du.
double theta_rate(const ProfileState& s, SpaceKind space) {
  const double rl = s.r * s.lambda;
  return space == SpaceKind::Euclidean ? rl : rl / s.radius_sq;
}

}  // namespace

bool VerificationReport::all_pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const CheckResult& VerificationReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw CmcError(ErrorCode::InvalidArgument, "no check named " + name);
}

VerificationReport verify_surface(const EmbeddingSolution& embedding,
                                  const VerifyOptions& options) {
  const ProblemParams& p = embedding.params;
  const SpaceKind space = p.space;
  const int n = p.n;
  const double nn = n;
  const ProfileSolution sol = build_profile(p);
  const Model model(sol, options.corruption);
  const double T = sol.period();
  const int periods = std::max(1, embedding.m);
  const int samples = std::max(8, options.samples);

  Accumulator a, b, c, d, e, f, g, h, i;
  double norm_a_min = 1e300, norm_a_max = 0.0;

  for (int j = 0; j < samples; ++j) {
    const double u = periods * T * j / samples;
    const double turns = std::nearbyint(u / T);
    double offset = u - turns * T;

    // y on a great circle of S^{n-1}, w orthogonal to it.
    const double v = 2.0 * std::numbers::pi * std::fmod(0.6180339887498949 * j, 1.0);
    Vec y(n, 0.0), w(n, 0.0);
    y[0] = std::cos(v);
    y[1 % n] += std::sin(v);
    w[0] = -std::sin(v);
    w[1 % n] += std::cos(v);

    const ProfileState s0 = model.at_offset(offset);
    const double scale = 1.0 + std::abs(s0.lambda) + std::abs(s0.mu) +
                         std::abs(s0.rprime / s0.r) + std::abs(theta_rate(s0, space));
    // Power-of-two step on a grid-aligned offset keeps the stencil exact.
    const double h_raw = std::min(1e-4 * T, 1e-3 / scale);
    const double step = std::exp2(std::floor(std::log2(h_raw)));
    offset = std::nearbyint(offset / step) * step;
    const ProfileState s = model.at_offset(offset);
    const double rate = theta_rate(s, space);

    // (a) first integral of g.
    {
      const double kappa = space_coefficient(space, p.H);
      const double lhs = s.gprime * s.gprime + std::pow(s.g, 2.0 - 2.0 * nn) +
                         kappa * s.g * s.g + 2.0 * p.H * std::pow(s.g, 2.0 - nn);
      const double C = model.effective_C();
      a.add((lhs - C) / C);
    }
    // (b) r-identity.
    {
      const double rr = s.r * s.r;
      const double base = s.rprime * s.rprime + rr * s.lambda * s.lambda;
      switch (space) {
        case SpaceKind::Spherical: b.add(base + rr - 1.0); break;
        case SpaceKind::Hyperbolic: b.add(base - 1.0 - rr); break;
        case SpaceKind::Euclidean: b.add(base - 1.0); break;
      }
    }
    // (c) ambient norm at the true parameter value u.
    {
      const auto sample = immerse(model.at(u), space, y);
      switch (space) {
        case SpaceKind::Spherical:
          c.add(ambient_dot(space, sample.point, sample.point) - 1.0);
          break;
        case SpaceKind::Hyperbolic:
          c.add(ambient_dot(space, sample.point, sample.point) + 1.0);
          break;
        case SpaceKind::Euclidean:
          c.add(ambient_dot(space, sample.normal, sample.normal) - 1.0);
          break;
      }
    }

    // Stencil along u.
    std::array<ImmersionSample, 4> st;
    const std::array<double, 4> shifts{-2.0, -1.0, 1.0, 2.0};
    for (int k = 0; k < 4; ++k) {
      st[k] = immerse(model.at_offset(offset + shifts[k] * step), space, y);
    }
    auto derivative = [&](auto field) {
      std::array<Vec, 4> vals;
      for (int k = 0; k < 4; ++k) vals[k] = field(st[k]);
      return central_difference(vals, step);
    };
    const Vec phi_u = derivative([](const ImmersionSample& x) { return x.point; });
    const Vec nu_u = derivative([](const ImmersionSample& x) { return x.normal; });

    // (d) unit speed.
    d.add(ambient_dot(space, phi_u, phi_u) - 1.0);
    // (e) Weingarten relation along u.
    e.add(norm(combine(nu_u, s.mu, phi_u)) / std::max(1.0, std::abs(s.mu)));

    // (f) principal curvature lambda along the y great circle.
    {
      constexpr double ds = 1e-3;
      std::array<Vec, 4> nus, phis;
      for (int k = 0; k < 4; ++k) {
        const double t = shifts[k] * ds;
        Vec yt(n);
        for (int q = 0; q < n; ++q) yt[q] = std::cos(t) * y[q] + std::sin(t) * w[q];
        const auto x = immerse(s, space, yt);
        nus[k] = x.normal;
        phis[k] = x.point;
      }
      const Vec nu_s = central_difference(nus, ds);
      const Vec phi_s = central_difference(phis, ds);
      f.add(norm(combine(nu_s, s.lambda, phi_s)) / std::max(1.0, std::abs(s.lambda)));
    }

    // (g) frame rebuilt from the immersion.
    {
      auto frame = [&](const ImmersionSample& x, const ProfileState& ps) {
        // B1 = (1/r) y from the first n coordinates; B2, B3 span the
        // rotating plane.
        std::array<Vec, 3> B;
        B[0].assign(x.point.begin(), x.point.begin() + n);
        for (double& z : B[0]) z /= ps.r * ps.r;
        if (space == SpaceKind::Euclidean) return B;
        const double rho = std::sqrt(ps.radius_sq);
        const double p1 = x.point[n] / rho;
        const double p2 = x.point[n + 1] / rho;
        B[1] = {p1, p2};
        B[2] = space == SpaceKind::Spherical ? Vec{-p2, p1} : Vec{p2, p1};
        return B;
      };
      std::array<std::array<Vec, 3>, 4> fr;
      for (int k = 0; k < 4; ++k) {
        fr[k] = frame(st[k], model.at_offset(offset + shifts[k] * step));
      }
      const auto B = frame(immerse(s, space, y), s);
      auto d_frame = [&](int idx) {
        std::array<Vec, 4> vals;
        for (int k = 0; k < 4; ++k) vals[k] = fr[k][idx];
        return central_difference(vals, step);
      };
      const double log_rate = s.rprime / s.r;
      double worst = norm(combine(d_frame(0), log_rate, B[0])) /
                     (norm(B[0]) * std::max(1.0, std::abs(log_rate)));
      if (space != SpaceKind::Euclidean) {
        const double sign = space == SpaceKind::Spherical ? -1.0 : 1.0;
        const double scale_t = std::max(1.0, std::abs(rate));
        worst = std::max(worst, norm(combine(d_frame(1), -rate, B[2])) / scale_t);
        worst = std::max(worst, norm(combine(d_frame(2), -sign * rate, B[1])) / scale_t);
        // <B2,B2> = -1 in the Minkowski plane, +1 otherwise; <B3,B3> = 1.
        const double b2 = space == SpaceKind::Spherical
                              ? B[1][0] * B[1][0] + B[1][1] * B[1][1] - 1.0
                              : B[1][0] * B[1][0] - B[1][1] * B[1][1] + 1.0;
        worst = std::max(worst, std::abs(b2));
      }
      g.add(worst);
    }

    // (h) mean curvature.
    {
      const double lam = options.corruption.flip_lambda ? -s.lambda : s.lambda;
      h.add((((nn - 1.0) * lam + s.mu) / nn - p.H) / std::max(1.0, std::abs(s.lambda)));
    }
    // (i) squared norm of the second fundamental form.
    {
      const double lhs = (nn - 1.0) * s.lambda * s.lambda + s.mu * s.mu;
      const double rhs = nn * p.H * p.H + nn * (nn - 1.0) * std::pow(s.g, -2.0 * nn);
      i.add((lhs - rhs) / std::max(1.0, std::abs(rhs)));
      norm_a_min = std::min(norm_a_min, lhs);
      norm_a_max = std::max(norm_a_max, lhs);
    }
  }

  VerificationReport report;
  report.params = p;
  report.m = embedding.m;
  report.k = embedding.k;
  report.extras["norm_a_min"] = norm_a_min;
  report.extras["norm_a_max"] = norm_a_max;
  report.extras["period"] = T;
  report.extras["K"] = sol.rotation() * options.corruption.theta_scale;

  // Closure after m periods, folded into (c).
  if (space == SpaceKind::Spherical) {
    Vec y(n, 0.0);
    y[0] = 1.0;
    const auto start = immerse(model.at(0.0), space, y).point;
    const auto end = immerse(model.at(periods * T), space, y).point;
    const double closure = norm(combine(end, -1.0, start));
    report.extras["closure"] = closure;
    c.add(closure);
  }

  report.checks.push_back(a.result("a", "first integral of g, relative to C", 1e-8));
  report.checks.push_back(b.result("b", "r-identity of the ambient space", 1e-8));
  report.checks.push_back(c.result("c", "ambient norm and closure", 1e-7));
  report.checks.push_back(d.result("d", "unit speed along u", 1e-8));
  report.checks.push_back(e.result("e", "Weingarten relation along u", 1e-5));
  report.checks.push_back(f.result("f", "principal curvature along y", 1e-5));
  report.checks.push_back(g.result("g", "frame derivative relations", 1e-6));
  report.checks.push_back(h.result("h", "mean of principal curvatures equals H", 1e-12));
  report.checks.push_back(i.result("i", "squared norm of the shape operator", 1e-10));
  return report;
}

VerificationReport verify_limits(int n, double H) {
  validate_family(SpaceKind::Spherical, n, H);
  const KBounds bounds = k_limits(n, H);
  const double c0 = critical_point(n, H).c0;
  VerificationReport report;
  report.params = {SpaceKind::Spherical, n, H, 0.0};

  auto side = [&](const std::string& name, const std::array<double, 3>& cs,
                  double limit) {
    std::array<double, 3> err{};
    for (int j = 0; j < 3; ++j) {
      err[j] = std::abs(rotation_K({SpaceKind::Spherical, n, H, cs[j]}) - limit);
      report.extras[name + "_err" + std::to_string(j)] = err[j];
    }
    CheckResult limit_check;
    limit_check.name = name;
    limit_check.description = "K at the last probe within 1e-3 of the limit";
    limit_check.max = err[2];
    limit_check.mean = (err[0] + err[1] + err[2]) / 3.0;
    limit_check.tolerance = 1e-3;
    limit_check.pass = err[2] <= 1e-3;
    report.checks.push_back(limit_check);

    // Errors must shrink, and the contraction ratio extrapolates the
    // remaining distance to the limit (Richardson-style).
    CheckResult trend;
    trend.name = name + "_trend";
    trend.description = "monotonically decreasing error over the probes";
    const double ratio = err[1] > 0.0 ? err[2] / err[1] : 0.0;
    report.extras[name + "_ratio"] = ratio;
    report.extras[name + "_extrapolated_tail"] =
        ratio < 1.0 ? err[2] * ratio / (1.0 - ratio) : INFINITY;
    trend.max = ratio;
    trend.mean = err[0] > 0.0 ? err[1] / err[0] : 0.0;
    trend.tolerance = 1.0;
    trend.pass = err[0] > err[1] && err[1] > err[2];
    report.checks.push_back(trend);
  };
  side("large_C", {1e3, 1e5, 1e7}, bounds.a1);
  side("threshold", {c0 * (1.0 + 1e-2), c0 * (1.0 + 1e-4), c0 * (1.0 + 1e-6)},
       bounds.a2n);
  report.extras["a1"] = bounds.a1;
  report.extras["a2n"] = bounds.a2n;
  return report;
}

}  // namespace cmc
