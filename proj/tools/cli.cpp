#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "cmc/embedding.hpp"
#include "cmc/errors.hpp"
#include "cmc/figures.hpp"
#include "cmc/profile.hpp"
#include "cmc/rotation.hpp"
#include "cmc/surface.hpp"
#include "cmc/verifier.hpp"

namespace cmc::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

// Numbers are rounded to 15 significant digits before serialisation.
json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_number(x, 15).c_str(), nullptr);
}

std::string csv(double x) { return format_number(x, 15); }

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// Evaluates fn(0), ..., fn(count - 1) on worker threads; results keep index
// order and the first failing index rethrows its exception.
template <class F>
auto parallel_map(int count, F fn) -> std::vector<decltype(fn(0))> {
  using R = decltype(fn(0));
  const int workers = std::max(1, std::min<int>(count, std::thread::hardware_concurrency()));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::vector<R> results;
  results.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    results.push_back(std::move(*slots[i]));
  }
  return results;
}

// Writes through `write` into `path`, or into `out` when path is empty.
void with_output(const std::string& path, std::ostream& out,
                 const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw CmcError(ErrorCode::InvalidArgument, "cannot open " + path);
  write(file);
}

json solution_json(const EmbeddingSolution& s) {
  return {{"C", num(s.params.C)},
          {"K", num(s.K_achieved)},
          {"residual", num(s.residual)},
          {"m", s.m},
          {"k", s.k},
          {"embedded", s.embedded()}};
}

json report_json(const VerificationReport& r) {
  json checks = json::object();
  for (const auto& c : r.checks) {
    checks[c.name] = {{"description", c.description},
                      {"max", num(c.max)},
                      {"mean", num(c.mean)},
                      {"tolerance", num(c.tolerance)},
                      {"pass", c.pass}};
  }
  json extras = json::object();
  for (const auto& [k, v] : r.extras) extras[k] = num(v);
  return {{"space", std::string(to_string(r.params.space))},
          {"n", r.params.n},
          {"H", num(r.params.H)},
          {"C", num(r.params.C)},
          {"m", r.m},
          {"k", r.k},
          {"checks", checks},
          {"extras", extras},
          {"pass", r.all_pass()}};
}

struct Options {
  std::string space = "spherical";
  int n = 2;
  double H = 0.0;
  double C = 0.0;
  int m = 2;
  int k = 1;
  int profile_samples = 2000, delaunay_samples = 512, hyperbolic_samples = 256;
  int verify_samples = 1000;
  double profile_periods = 1.0, delaunay_periods = 2.0, hyperbolic_periods = 2.0;
  double c_min = 0.0, c_max = 0.0;
  int points = 64;
  double eps = 0.0;
  int res_u = 0, res_v = 128;
  bool no_project = false;
  double pole_angle = 0.0;
  std::string mesh_format = "obj", delaunay_format = "csv";
  std::string output;
  std::string figure;
  bool all = false;
  std::string output_dir = "figures";
};

ProblemParams params_of(const Options& o) {
  return {parse_space(o.space), o.n, o.H, o.C};
}

void write_profile_table(std::ostream& os, const ProfileSolution& sol, int samples,
                         double periods) {
  os << "u,g,gprime,r,lambda,mu,theta\n";
  const int count = std::max(1, static_cast<int>(std::lround(samples * periods)));
  const double length = periods * sol.period();
  for (int j = 0; j <= count; ++j) {
    const ProfileState s = sol.eval(length * j / count);
    os << csv(s.u) << ',' << csv(s.g) << ',' << csv(s.gprime) << ',' << csv(s.r)
       << ',' << csv(s.lambda) << ',' << csv(s.mu) << ',' << csv(s.theta) << '\n';
  }
}

json reproduce_spherical(const FigureSpec& fig, const fs::path& dir, int res_u,
                         int res_v) {
  const ProblemParams published{SpaceKind::Spherical, 2, fig.H, fig.C};
  const double target = 2.0 * pi / fig.m;
  const double k_published = rotation_K(published);

  const auto solutions = solve_C(2, fig.H, fig.m);
  const EmbeddingSolution* best = &solutions.front();
  for (const auto& s : solutions) {
    if (std::abs(s.params.C - fig.C) < std::abs(best->params.C - fig.C)) best = &s;
  }
  const double rel = std::abs(best->params.C - fig.C) / fig.C;

  const ProfileSolution sol = build_profile(best->params);
  const ProfileCurve curve = profile_curve(sol, fig.m, 1, 512);
  std::vector<double> radii;
  for (std::size_t j = 0; j + 1 < curve.u.size(); ++j) radii.push_back(sol.eval(curve.u[j]).r);

  {
    std::ofstream f(dir / "profile.csv", std::ios::binary);
    write_profile_csv(f, curve);
  }
  {
    std::ofstream f(dir / "profile.svg", std::ios::binary);
    write_profile_svg(f, std::span<const ProfileCurve>(&curve, 1));
  }
  MeshOptions mo;
  mo.res_u = res_u;
  mo.res_v = res_v;
  const SurfaceMesh mesh = build_mesh_n2(*best, mo);
  {
    std::ofstream f(dir / "mesh.obj", std::ios::binary);
    write_obj(f, mesh);
  }
  const VerificationReport report = verify_surface(*best);

  const auto& first = curve.points.front();
  const auto& last = curve.points.back();
  json manifest = {
      {"id", fig.id},
      {"kind", "spherical"},
      {"n", 2},
      {"H", num(fig.H)},
      {"m", fig.m},
      {"k", 1},
      {"C_published", num(fig.C)},
      {"C_solved", num(best->params.C)},
      {"C_relative_difference", num(rel)},
      {"golden_tolerance", 1e-6},
      {"golden_match", rel <= 1e-6},
      {"K_target", num(target)},
      {"K_at_published_C", num(k_published)},
      {"K_at_published_C_residual", num(std::abs(k_published - target))},
      {"K_solved_residual", num(best->residual)},
      {"profile_closure", num(std::hypot(last[0] - first[0], last[1] - first[1]))},
      {"necks", count_local_minima(radii)},
      {"self_intersections", count_self_intersections(curve.points, true)},
      {"mesh_vertices", mesh.vertices.size()},
      {"mesh_faces", mesh.faces.size()},
      {"verification", report_json(report)},
      {"files", {"profile.csv", "profile.svg", "mesh.obj"}}};
  return manifest;
}

json reproduce_delaunay(const FigureSpec& fig, const fs::path& dir) {
  const auto samples = delaunay_n2(fig.H, fig.C, 1025, 2.0);
  double residual = 0.0;
  bool monotone = true;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    residual = std::max(residual, std::abs(delaunay_ode_residual(fig.H, fig.C, samples[j])));
    if (j > 0 && samples[j].R < samples[j - 1].R) monotone = false;
  }
  {
    std::ofstream f(dir / "profile.csv", std::ios::binary);
    f << "u,r,R\n";
    for (const auto& s : samples) f << csv(s.u) << ',' << csv(s.r) << ',' << csv(s.R) << '\n';
  }
  std::vector<std::array<double, 2>> pts;
  for (const auto& s : samples) pts.push_back({s.r, s.R});
  return {{"id", fig.id},
          {"kind", "delaunay"},
          {"n", 2},
          {"H", num(fig.H)},
          {"C", num(fig.C)},
          {"periods", 2},
          {"ode_residual_max", num(residual)},
          {"R_monotone", monotone},
          {"self_intersections", count_self_intersections(pts, false)},
          {"files", {"profile.csv"}}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotational constant-mean-curvature hypersurfaces: solve, build, verify"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");
  Options o;

  auto add_space = [&](CLI::App* sub) {
    sub->add_option("--space", o.space, "spherical | hyperbolic | euclidean")
        ->check(CLI::IsMember({"spherical", "hyperbolic", "euclidean"}));
  };
  auto add_nhc = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "dimension n >= 2")->required();
    sub->add_option("--H", o.H, "mean curvature")->required();
    sub->add_option("--C", o.C, "energy constant")->required();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", o.output, "output file (default stdout)");
  };

  auto* roots = app.add_subcommand("roots", "turning points and critical data");
  add_nhc(roots);
  add_space(roots);
  add_output(roots);

  auto* profile = app.add_subcommand("profile", "sampled profile g, r, lambda, mu, theta (CSV)");
  add_nhc(profile);
  add_space(profile);
  profile->add_option("--samples", o.profile_samples, "samples per period")->capture_default_str();
  profile->add_option("--periods", o.profile_periods, "number of periods")->capture_default_str();
  add_output(profile);

  auto* rotation = app.add_subcommand("rotation", "rotation number K and period T");
  add_nhc(rotation);
  add_space(rotation);
  add_output(rotation);

  auto* limits = app.add_subcommand("limits", "limits a1 (C -> inf) and a2n (C -> c0)");
  limits->add_option("--n", o.n)->required();
  limits->add_option("--H", o.H)->required();
  add_output(limits);

  auto* bounds = app.add_subcommand("bounds", "admissible H interval for (n, m)");
  bounds->add_option("--n", o.n)->required();
  bounds->add_option("--m", o.m)->required();
  add_output(bounds);

  auto* sweep = app.add_subcommand("sweep", "K on a geometric C grid (CSV)");
  sweep->add_option("--n", o.n)->required();
  sweep->add_option("--H", o.H)->required();
  sweep->add_option("--c-min", o.c_min)->required();
  sweep->add_option("--c-max", o.c_max)->required();
  sweep->add_option("--points", o.points)->default_val(64);
  add_space(sweep);
  add_output(sweep);

  auto* solve = app.add_subcommand("solve", "solve K(H, n, C) = 2k pi/m for C");
  solve->add_option("--n", o.n)->required();
  solve->add_option("--H", o.H)->required();
  solve->add_option("--m", o.m)->required();
  solve->add_option("--k", o.k)->default_val(1);
  add_output(solve);

  auto* mesh = app.add_subcommand("mesh", "torus mesh of an n = 2 example (OBJ)");
  mesh->add_option("--H", o.H)->required();
  mesh->add_option("--m", o.m)->required();
  mesh->add_option("--k", o.k)->default_val(1);
  mesh->add_option("--C", o.C, "energy constant (default: first solution of solve)");
  mesh->add_option("--res-u", o.res_u, "rings along u (default 256 m)");
  mesh->add_option("--res-v", o.res_v)->default_val(128);
  mesh->add_flag("--no-project", o.no_project, "keep R^4 vertices (JSON only)");
  mesh->add_option("--pole-angle", o.pole_angle, "rotation of the projection pole");
  mesh->add_option("--format", o.mesh_format, "obj | json")->capture_default_str()
      ->check(CLI::IsMember({"obj", "json"}));
  add_output(mesh);

  auto* delaunay = app.add_subcommand("delaunay", "closed-form n = 2 Euclidean profile");
  delaunay->add_option("--H", o.H)->required();
  delaunay->add_option("--C", o.C)->required();
  delaunay->add_option("--samples", o.delaunay_samples, "number of points")->capture_default_str();
  delaunay->add_option("--periods", o.delaunay_periods, "number of periods")->capture_default_str();
  delaunay->add_option("--format", o.delaunay_format, "csv | json")->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  add_output(delaunay);

  auto* hyperbolic = app.add_subcommand("hyperbolic", "profile curve in hyperbolic space (CSV)");
  hyperbolic->add_option("--n", o.n)->required();
  hyperbolic->add_option("--H", o.H)->required();
  hyperbolic->add_option("--C", o.C)->required();
  hyperbolic->add_option("--samples", o.hyperbolic_samples, "samples per period")->capture_default_str();
  hyperbolic->add_option("--periods", o.hyperbolic_periods, "number of periods")->capture_default_str();
  add_output(hyperbolic);

  auto* verify = app.add_subcommand("verify", "structure-equation checks (exit 0 iff all pass)");
  add_nhc(verify);
  verify->add_option("--m", o.m)->default_val(2);
  verify->add_option("--k", o.k)->default_val(1);
  verify->add_option("--samples", o.verify_samples, "sample count")->capture_default_str();
  add_space(verify);
  add_output(verify);

  auto* stability = app.add_subcommand("stability", "near-isoparametric minimal example and cone test");
  stability->add_option("--n", o.n)->required();
  stability->add_option("--eps", o.eps)->required();
  add_output(stability);

  auto* reproduce = app.add_subcommand("reproduce", "regenerate published figure data");
  auto* fig_opt = reproduce->add_option("--figure", o.figure, "figure id");
  auto* all_opt = reproduce->add_flag("--all", o.all, "every registered figure");
  fig_opt->excludes(all_opt);
  reproduce->add_option("--output-dir", o.output_dir)->default_val("figures");
  reproduce->add_option("--res-u", o.res_u, "mesh rings along u (default 256 m)");
  reproduce->add_option("--res-v", o.res_v)->default_val(128);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*roots) {
      const PolyRoots r = roots_general(params_of(o));
      with_output(o.output, out, [&](std::ostream& os) {
        emit(os, {{"t1", num(r.t1)}, {"t2", num(r.t2)}, {"v0", num(r.v0)},
                  {"c0", num(r.c0)}, {"a", num(r.a)}});
      });
    } else if (*profile) {
      const ProfileSolution sol = build_profile(params_of(o));
      with_output(o.output, out, [&](std::ostream& os) {
        write_profile_table(os, sol, o.profile_samples, o.profile_periods);
      });
    } else if (*rotation) {
      const ProblemParams p = params_of(o);
      const ProfileSolution sol = build_profile(p);
      with_output(o.output, out, [&](std::ostream& os) {
        emit(os, {{"K", num(sol.rotation())}, {"K_over_pi", num(sol.rotation() / pi)},
                  {"T", num(sol.period())}});
      });
    } else if (*limits) {
      const KBounds b = k_limits(o.n, o.H);
      with_output(o.output, out, [&](std::ostream& os) {
        emit(os, {{"a1", num(b.a1)}, {"a2n", num(b.a2n)}, {"b2", num(b.b2)}});
      });
    } else if (*bounds) {
      const auto [lo, hi] = admissible_H_interval(o.n, o.m);
      with_output(o.output, out, [&](std::ostream& os) {
        emit(os, {{"H_lo", num(lo)}, {"H_hi", num(hi)}});
      });
    } else if (*sweep) {
      if (!(o.c_min > 0.0 && o.c_max > o.c_min) || o.points < 2) {
        throw CmcError(ErrorCode::InvalidArgument, "need 0 < c-min < c-max and points >= 2");
      }
      const SpaceKind space = parse_space(o.space);
      auto c_at = [&](int j) {
        return o.c_min * std::pow(o.c_max / o.c_min, j / (o.points - 1.0));
      };
      const auto ks = parallel_map(o.points, [&](int j) {
        return rotation_K({space, o.n, o.H, c_at(j)});
      });
      with_output(o.output, out, [&](std::ostream& os) {
        os << "C,K\n";
        for (int j = 0; j < o.points; ++j) os << csv(c_at(j)) << ',' << csv(ks[j]) << '\n';
      });
    } else if (*solve) {
      json arr = json::array();
      for (const auto& s : solve_C(o.n, o.H, o.m, o.k)) arr.push_back(solution_json(s));
      with_output(o.output, out, [&](std::ostream& os) { emit(os, arr); });
    } else if (*mesh) {
      const EmbeddingSolution sol =
          o.C > 0.0 ? make_solution({SpaceKind::Spherical, 2, o.H, o.C}, o.m, o.k)
                    : solve_C(2, o.H, o.m, o.k).front();
      MeshOptions mo;
      mo.res_u = o.res_u;
      mo.res_v = o.res_v;
      mo.project = !o.no_project;
      mo.pole_angle = o.pole_angle;
      if (o.no_project && o.mesh_format == "obj") {
        throw CmcError(ErrorCode::InvalidArgument, "OBJ output needs projected vertices");
      }
      const SurfaceMesh m = build_mesh_n2(sol, mo);
      with_output(o.output, out, [&](std::ostream& os) {
        if (o.mesh_format == "obj") {
          write_obj(os, m);
          return;
        }
        json verts = json::array();
        for (const auto& v : m.vertices) {
          json row = json::array();
          for (double x : v) row.push_back(num(x));
          verts.push_back(row);
        }
        emit(os, {{"solution", solution_json(sol)}, {"projected", m.projected},
                  {"vertices", verts}, {"faces", m.faces}});
      });
    } else if (*delaunay) {
      const auto samples = delaunay_n2(o.H, o.C, o.delaunay_samples, o.delaunay_periods);
      with_output(o.output, out, [&](std::ostream& os) {
        if (o.delaunay_format == "csv") {
          os << "u,r,R\n";
          for (const auto& s : samples) os << csv(s.u) << ',' << csv(s.r) << ',' << csv(s.R) << '\n';
          return;
        }
        json rows = json::array();
        double residual = 0.0;
        for (const auto& s : samples) {
          rows.push_back({num(s.u), num(s.r), num(s.R)});
          residual = std::max(residual, std::abs(delaunay_ode_residual(o.H, o.C, s)));
        }
        emit(os, {{"H", num(o.H)}, {"C", num(o.C)}, {"ode_residual_max", num(residual)},
                  {"samples", rows}});
      });
    } else if (*hyperbolic) {
      const ProfileSolution sol = build_profile({SpaceKind::Hyperbolic, o.n, o.H, o.C});
      const ProfileCurve curve = profile_curve_open(sol, o.hyperbolic_periods, o.hyperbolic_samples);
      with_output(o.output, out, [&](std::ostream& os) { write_profile_csv(os, curve); });
    } else if (*verify) {
      VerifyOptions vo;
      vo.samples = o.verify_samples;
      const EmbeddingSolution sol = make_solution(params_of(o), o.m, o.k);
      const VerificationReport report = verify_surface(sol, vo);
      json j = report_json(report);
      j["solution"] = solution_json(sol);
      with_output(o.output, out, [&](std::ostream& os) { emit(os, j); });
      return report.all_pass() ? 0 : 1;
    } else if (*stability) {
      const NearIsoparametricResult r = near_isoparametric_minimal(o.n, o.eps);
      const StabilityVerdict v = cone_stability_check(r.solution);
      with_output(o.output, out, [&](std::ostream& os) {
        emit(os, {{"n", o.n}, {"eps", num(o.eps)}, {"solution", solution_json(r.solution)},
                  {"norm_a_min", num(r.norm_a_min)}, {"norm_a_max", num(r.norm_a_max)},
                  {"verdict", std::string(to_string(v.verdict))},
                  {"curvature_bound", v.curvature_bound},
                  {"dimension_bound", v.dimension_bound}});
      });
    } else if (*reproduce) {
      if (o.figure.empty() && !o.all) {
        throw CLI::RequiredError("--figure or --all");
      }
      std::vector<const FigureSpec*> figs;
      if (o.all) {
        for (const auto& f : figure_registry()) figs.push_back(&f);
      } else {
        figs.push_back(&find_figure(o.figure));
      }
      const auto manifests = parallel_map(static_cast<int>(figs.size()), [&](int i) {
        const FigureSpec* f = figs[i];
        const fs::path dir = fs::path(o.output_dir) / f->id;
        fs::create_directories(dir);
        json manifest = f->kind == FigureKind::Delaunay
                            ? reproduce_delaunay(*f, dir)
                            : reproduce_spherical(*f, dir, o.res_u, o.res_v);
        std::ofstream mf(dir / "manifest.json", std::ios::binary);
        emit(mf, manifest);
        return manifest;
      });
      json summary = json::array();
      for (std::size_t i = 0; i < figs.size(); ++i) {
        const FigureSpec* f = figs[i];
        const json& manifest = manifests[i];
        const fs::path dir = fs::path(o.output_dir) / f->id;
        json entry = {{"id", f->id}, {"directory", dir.generic_string()}};
        if (manifest.contains("golden_match")) entry["golden_match"] = manifest["golden_match"];
        summary.push_back(entry);
      }
      emit(out, summary);
    }
  } catch (const CLI::Error& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const CmcError& e) {
    emit(err, {{"error", std::string(to_string(e.code()))}, {"message", e.what()}});
    return 1;
  } catch (const std::exception& e) {
    emit(err, {{"error", "Exception"}, {"message", e.what()}});
    return 1;
  }
  return 0;
}

}  // namespace cmc::cli
