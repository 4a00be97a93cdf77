// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cmc/embedding.hpp"
#include "cmc/errors.hpp"
#include "cmc/figures.hpp"
#include "cmc/rotation.hpp"
#include "cmc/scalar_core.hpp"
#include "cmc/surface.hpp"
#include "cmc/verifier.hpp"

namespace {

using cmc::SpaceKind;
using Clock = std::chrono::steady_clock;
constexpr double pi = std::numbers::pi;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<cmc::EmbeddingSolution> g_solved;

Outcome golden_c() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst_c = 0.0, worst_k = 0.0;
  for (const auto& f : cmc::figure_registry()) {
    if (f.kind != cmc::FigureKind::SphericalEmbedding) continue;
    try {
      const auto sols = cmc::solve_C(2, f.H, f.m);
      const cmc::EmbeddingSolution* best = &sols.front();
      for (const auto& s : sols) {
        if (std::abs(s.params.C - f.C) < std::abs(best->params.C - f.C)) best = &s;
      }
      g_solved.push_back(*best);
      const double rel = std::abs(best->params.C - f.C) / f.C;
      worst_c = std::max(worst_c, rel);
      if (rel > 1e-6) o.fail(fmt("%s: solved C=%.17g, rel diff %.3g", f.id.c_str(), best->params.C, rel));
    } catch (const cmc::CmcError& e) {
      o.fail(f.id + ": " + e.what());
    }
    const double dk = std::abs(cmc::rotation_K({SpaceKind::Spherical, 2, f.H, f.C}) - 2 * pi / f.m);
    worst_k = std::max(worst_k, dk);
    if (dk > 1e-6) o.fail(fmt("%s: |K - 2pi/m| = %.3g at published C", f.id.c_str(), dk));
  }
  const double elapsed = seconds_since(t0);
  if (elapsed > 10.0) o.fail(fmt("runtime %.2f s", elapsed));
  o.detail = fmt("worst C rel diff %.3g, worst K diff %.3g, %.2f s", worst_c, worst_k, elapsed) +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome closed_form_limits() {
  Outcome o;
  const double k_inf = cmc::rotation_K({SpaceKind::Spherical, 2, 0.0, 1e8});
  const double k_thr = cmc::rotation_K({SpaceKind::Spherical, 2, 0.0, 2 * (1 + 1e-8)});
  if (std::abs(k_inf - pi) > 1e-3) o.fail(fmt("K(C=1e8) = %.12g", k_inf));
  if (std::abs(k_thr - std::sqrt(2.0) * pi) > 1e-3) o.fail(fmt("K(C=2(1+1e-8)) = %.12g", k_thr));
  int families = 0;
  for (double H : {0.2, 0.5, 1.0}) {
    for (int n : {2, 3, 5}) {
      const auto r = cmc::verify_limits(n, H);
      ++families;
      for (const auto& c : r.checks) {
        if (!c.pass) o.fail(fmt("n=%d H=%g %s max %.3g", n, H, c.name.c_str(), c.max));
      }
    }
  }
  o.detail = fmt("K(1e8)-pi = %.3g, K(2(1+1e-8))-sqrt2 pi = %.3g, %d families", k_inf - pi,
                 k_thr - std::sqrt(2.0) * pi, families) +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome boundary_identities() {
  Outcome o;
  const double s3 = 1 / std::sqrt(3.0);
  const double h3 = 7 / (4 * std::sqrt(2.0));
  const double b1 = cmc::limit_large_C(s3);
  // Machine precision: a few ulps of 2 pi / 3.
  if (std::abs(b1 - 2 * pi / 3) > 4 * std::numeric_limits<double>::epsilon() * (2 * pi / 3)) {
    o.fail(fmt("b1(1/sqrt3) - 2pi/3 = %.3g", b1 - 2 * pi / 3));
  }
  const double b2a = cmc::threshold_bound_n2(s3), b2b = cmc::threshold_bound_n2(h3);
  if (std::abs(b2a - pi) > 1e-10) o.fail(fmt("b2(1/sqrt3) - pi = %.3g", b2a - pi));
  if (std::abs(b2b - pi / 2) > 1e-10) o.fail(fmt("b2(7/(4 sqrt2)) - pi/2 = %.3g", b2b - pi / 2));
  const auto [lo2, hi2] = cmc::admissible_H_interval(2, 2);
  const auto [lo3, hi3] = cmc::admissible_H_interval(2, 3);
  if (std::abs(lo2) > 1e-12 || std::abs(hi2 - s3) > 1e-12) o.fail("interval (2,2)");
  if (std::abs(lo3 - s3) > 1e-12 || std::abs(hi3 - h3) > 1e-12) o.fail("interval (2,3)");
  o.detail = fmt("b1 err %.3g, b2 errs %.3g %.3g", b1 - 2 * pi / 3, b2a - pi, b2b - pi / 2) +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome period_inequality() {
  Outcome o;
  double margin = INFINITY;
  for (int m = 3; m <= 50; ++m) {
    const double gap = cmc::threshold_bound_n2(1 / std::tan(pi / (m + 1))) - 2 * pi / m;
    margin = std::min(margin, gap);
    if (!(gap > 0)) o.fail(fmt("m=%d gap %.3g", m, gap));
  }
  o.detail = fmt("m=3..50, smallest gap %.3g", margin) + (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome identity_residuals() {
  Outcome o;
  double slowest = 0.0;
  for (const auto& s : g_solved) {
    const auto t0 = Clock::now();
    const auto r = cmc::verify_surface(s);
    slowest = std::max(slowest, seconds_since(t0));
    for (const auto& c : r.checks) {
      if (!c.pass) o.fail(fmt("H=%g check %s max %.3g", s.params.H, c.name.c_str(), c.max));
    }
  }
  if (g_solved.size() != 9) o.fail(fmt("only %zu solved surfaces", g_solved.size()));
  if (slowest > 5.0) o.fail(fmt("slowest surface %.2f s", slowest));

  const auto base = cmc::make_solution({SpaceKind::Spherical, 2, 0.8, 22.320379289179478}, 3, 1);
  cmc::VerifyOptions bad_c, bad_theta, bad_lambda;
  bad_c.corruption.c_scale = 1.01;
  bad_theta.corruption.theta_scale = 1.001;
  bad_lambda.corruption.flip_lambda = true;
  if (cmc::verify_surface(base, bad_c).all_pass()) o.fail("corrupted C not detected");
  if (cmc::verify_surface(base, bad_theta).all_pass()) o.fail("corrupted theta not detected");
  if (cmc::verify_surface(base, bad_lambda).all_pass()) o.fail("flipped lambda not detected");
  o.detail = fmt("%zu surfaces, slowest %.2f s, 3 negative controls", g_solved.size(), slowest) +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome singular_limit() {
  Outcome o;
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    const std::vector<std::function<double(double)>> fs{
        [a](double t) { return -a * t * t - t * t * t * t; },
        [a](double t) { return -a * std::sin(t) * std::sin(t); },
        [a](double t) { return -a * t * t / (1 + t * t); }};
    for (std::size_t i = 0; i < fs.size(); ++i) {
      double prev = INFINITY;
      for (double c : {1e-2, 1e-4, 1e-6}) {
        const double err = std::abs(cmc::singular_limit_oracle(fs[i], c) - pi / (2 * std::sqrt(a)));
        if (!(err < prev)) o.fail(fmt("a=%g f%zu error not decreasing at c=%g", a, i, c));
        prev = err;
      }
      worst = std::max(worst, prev);
      if (prev > 1e-3) o.fail(fmt("a=%g f%zu error %.3g", a, i, prev));
    }
  }
  o.detail = fmt("worst error at c=1e-6: %.3g", worst) + (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome stability() {
  Outcome o;
  const auto r6 = cmc::near_isoparametric_minimal(6, 0.125);
  const auto v6 = cmc::cone_stability_check(r6.solution);
  const auto r2 = cmc::near_isoparametric_minimal(2, 0.5);
  const auto v2 = cmc::cone_stability_check(r2.solution);
  if (v6.verdict != cmc::Stability::Stable) o.fail("n=6 not Stable");
  if (v2.verdict != cmc::Stability::Inconclusive) o.fail("n=2 not Inconclusive");
  o.detail = fmt("n=6: K=2pi*%d/%d, |A|^2 in [%.4f, %.4f] -> %s; n=2 -> %s", r6.solution.k,
                 r6.solution.m, r6.norm_a_min, r6.norm_a_max,
                 std::string(cmc::to_string(v6.verdict)).c_str(),
                 std::string(cmc::to_string(v2.verdict)).c_str()) +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome embedding_property() {
  Outcome o;
  std::mt19937 rng(20240917);
  int curves = 0;
  double worst_close = 0.0, worst_sym = 0.0;
  for (auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{4, 3}}) {
    const auto [lo, hi] = cmc::admissible_H_interval(n, m);
    std::uniform_real_distribution<double> h_dist(lo, hi);
    for (int i = 0; i < 20; ++i) {
      const double H = h_dist(rng);
      try {
        for (const auto& s : cmc::solve_C(n, H, m)) {
          const auto sol = cmc::build_profile(s.params);
          const auto curve = cmc::profile_curve(sol, m, 1, 256);
          const auto& a = curve.points.front();
          const auto& b = curve.points.back();
          const double gap = std::hypot(a[0] - b[0], a[1] - b[1]);
          const std::vector<std::array<double, 2>> pts(curve.points.begin(), curve.points.end() - 1);
          const double sym = cmc::hausdorff_distance(pts, cmc::rotate(pts, 2 * pi / m));
          const auto crossings = cmc::count_self_intersections(curve.points, true);
          ++curves;
          worst_close = std::max(worst_close, gap);
          worst_sym = std::max(worst_sym, sym);
          if (gap > 1e-6 || sym > 1e-6 || crossings != 0) {
            o.fail(fmt("n=%d m=%d H=%.10g: gap %.3g sym %.3g crossings %zu", n, m, H, gap, sym, crossings));
          }
        }
      } catch (const cmc::CmcError& e) {
        o.fail(fmt("n=%d m=%d H=%.10g: %s", n, m, H, e.what()));
      }
    }
  }
  o.detail = fmt("%d curves, worst closure %.3g, worst symmetry %.3g", curves, worst_close, worst_sym) +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome delaunay() {
  Outcome o;
  double residual = 0.0;
  for (const auto& s : cmc::delaunay_n2(1.0, 5.0, 2000, 2.0)) {
    residual = std::max(residual, std::abs(cmc::delaunay_ode_residual(1.0, 5.0, s)));
  }
  if (!(residual < 1e-9)) o.fail(fmt("residual %.3g", residual));
  const auto nod = cmc::delaunay_n2(-1.0, 2.0, 2000, 2.0);
  bool up = false, down = false;
  for (std::size_t j = 1; j < nod.size(); ++j) {
    up |= nod[j].R > nod[j - 1].R;
    down |= nod[j].R < nod[j - 1].R;
  }
  if (!(up && down)) o.fail("R monotone for H=-1, C=2");
  o.detail = fmt("ODE residual %.3g, nodoid R non-monotone: %s", residual, up && down ? "yes" : "no") +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"golden C values", golden_c},
      {"closed-form limits", closed_form_limits},
      {"boundary identities", boundary_identities},
      {"period inequality", period_inequality},
      {"identity residuals", identity_residuals},
      {"singular limit oracle", singular_limit},
      {"cone stability", stability},
      {"embedding property", embedding_property},
      {"Delaunay profiles", delaunay},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
