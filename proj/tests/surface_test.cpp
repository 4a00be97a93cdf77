#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

#include "cmc/embedding.hpp"
#include "cmc/errors.hpp"
#include "cmc/profile.hpp"
#include "cmc/surface.hpp"

namespace {

using cmc::SpaceKind;
using Point = std::array<double, 2>;
constexpr double pi = std::numbers::pi;

cmc::EmbeddingSolution figure(double H, int m, double C) {
  return cmc::make_solution({SpaceKind::Spherical, 2, H, C}, m, 1);
}

TEST(Surface, ImmersionNormsSpherical) {
  const auto sol = cmc::build_profile({SpaceKind::Spherical, 3, 0.8, 12.0});
  const std::vector<double> y{0.6, 0.0, -0.8};
  for (double u : {0.0, 0.4, 1.3}) {
    const auto s = cmc::immerse(sol, y, u);
    EXPECT_NEAR(cmc::ambient_dot(SpaceKind::Spherical, s.point, s.point), 1.0, 1e-14);
    EXPECT_NEAR(cmc::ambient_dot(SpaceKind::Spherical, s.normal, s.normal), 1.0, 1e-13);
    EXPECT_NEAR(cmc::ambient_dot(SpaceKind::Spherical, s.point, s.normal), 0.0, 1e-13);
    EXPECT_NEAR(cmc::ambient_dot(SpaceKind::Spherical, s.tangent_u, s.tangent_u), 1.0, 1e-12);
  }
}

TEST(Surface, ImmersionNormsHyperbolic) {
  const auto sol = cmc::build_profile({SpaceKind::Hyperbolic, 2, 1.5, 8.0});
  const std::vector<double> y{0.0, 1.0};
  for (double u : {0.0, 0.7, 2.0}) {
    const auto s = cmc::immerse(sol, y, u);
    EXPECT_NEAR(cmc::ambient_dot(SpaceKind::Hyperbolic, s.point, s.point), -1.0, 1e-12);
    EXPECT_NEAR(cmc::ambient_dot(SpaceKind::Hyperbolic, s.normal, s.normal), 1.0, 1e-12);
    EXPECT_NEAR(cmc::ambient_dot(SpaceKind::Hyperbolic, s.point, s.normal), 0.0, 1e-12);
  }
}

TEST(Surface, ProfileCurveCloses) {
  const auto sol = cmc::build_profile({SpaceKind::Spherical, 2, 1.0, 9.908469426660892});
  const auto curve = cmc::profile_curve(sol, 3, 1, 128);
  ASSERT_EQ(curve.points.size(), 3u * 128 + 1);
  const auto& a = curve.points.front();
  const auto& b = curve.points.back();
  EXPECT_LT(std::hypot(a[0] - b[0], a[1] - b[1]), cmc::kClosureTolerance);
  for (const auto& p : curve.points) EXPECT_LT(std::hypot(p[0], p[1]), 1.0);
  EXPECT_EQ(cmc::count_self_intersections(curve.points, true), 0u);
}

TEST(Surface, ProfileCurveSymmetry) {
  const auto sol = cmc::build_profile({SpaceKind::Spherical, 2, 0.3, 9.129645968138256});
  const auto curve = cmc::profile_curve(sol, 2, 1, 200);
  const std::vector<Point> pts(curve.points.begin(), curve.points.end() - 1);
  EXPECT_LT(cmc::hausdorff_distance(pts, cmc::rotate(pts, pi)), 1e-6);
  // Without the symmetry a quarter turn moves the curve visibly.
  EXPECT_GT(cmc::hausdorff_distance(pts, cmc::rotate(pts, pi / 2)), 1e-2);
}

TEST(Surface, ProfileCurveRejectsOpenCurve) {
  const auto sol = cmc::build_profile({SpaceKind::Spherical, 2, 1.0, 12.0});
  EXPECT_THROW(cmc::profile_curve(sol, 3, 1, 64), cmc::CmcError);
  const auto open = cmc::profile_curve_open(sol, 2.5, 64);
  EXPECT_EQ(open.points.size(), 161u);
}

TEST(Surface, NeckCount) {
  const auto sols = cmc::solve_C(2, 1.5, 4);
  ASSERT_FALSE(sols.empty());
  const auto sol = cmc::build_profile(sols[0].params);
  std::vector<double> r;
  for (int j = 0; j < 4 * 64; ++j) r.push_back(sol.eval(sol.period() * j / 64.0).r);
  EXPECT_EQ(cmc::count_local_minima(r), 4u);
}

TEST(Surface, MeshTopology) {
  cmc::MeshOptions opt;
  opt.res_u = 96;
  opt.res_v = 24;
  const auto mesh = cmc::build_mesh_n2(figure(0.8, 3, 22.320379289179478), opt);
  ASSERT_TRUE(mesh.projected);
  EXPECT_EQ(mesh.vertices.size(), 96u * 24);
  EXPECT_EQ(mesh.faces.size(), 96u * 24);
  // A closed quad torus: V - E + F = 0 and every edge is shared by two faces.
  std::set<std::pair<int, int>> edges;
  for (const auto& f : mesh.faces) {
    std::set<int> distinct(f.begin(), f.end());
    EXPECT_EQ(distinct.size(), 4u);
    for (int j = 0; j < 4; ++j) {
      const int a = f[j], b = f[(j + 1) % 4];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  EXPECT_EQ(edges.size(), 2 * mesh.faces.size());
  for (const auto& f : mesh.faces) {
    const auto& p = mesh.vertices[f[0]];
    const auto& q = mesh.vertices[f[2]];
    const double d = std::hypot(p[0] - q[0], p[1] - q[1], p[2] - q[2]);
    EXPECT_GT(d, 1e-9);
  }
}

TEST(Surface, MeshUnprojectedOnSphere) {
  cmc::MeshOptions opt;
  opt.res_u = 32;
  opt.res_v = 8;
  opt.project = false;
  const auto mesh = cmc::build_mesh_n2(figure(0.1, 2, 41.28796038772471), opt);
  for (const auto& v : mesh.vertices) {
    ASSERT_EQ(v.size(), 4u);
    EXPECT_NEAR(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3], 1.0, 1e-13);
  }
  std::ostringstream os;
  EXPECT_THROW(cmc::write_obj(os, mesh), cmc::CmcError);
}

TEST(Surface, ObjIsDeterministic) {
  cmc::MeshOptions opt;
  opt.res_u = 16;
  opt.res_v = 6;
  const auto sol = figure(0.3, 2, 9.129645968138256);
  std::ostringstream a, b;
  cmc::write_obj(a, cmc::build_mesh_n2(sol, opt));
  cmc::write_obj(b, cmc::build_mesh_n2(sol, opt));
  EXPECT_EQ(a.str(), b.str());
  const std::string s = a.str();
  EXPECT_NE(s.find("\nv "), std::string::npos);
  EXPECT_NE(s.find("\nf 1 "), std::string::npos);
  EXPECT_EQ(s.find('\r'), std::string::npos);
}

TEST(Surface, MeshRequiresSphericalN2) {
  const auto s = cmc::make_solution({SpaceKind::Spherical, 3, 0.8, 12.0}, 3, 1);
  EXPECT_THROW(cmc::build_mesh_n2(s), cmc::CmcError);
}

TEST(Surface, DelaunayUnduloid) {
  const auto samples = cmc::delaunay_n2(1.0, 5.0, 401, 2.0);
  ASSERT_EQ(samples.size(), 401u);
  EXPECT_NEAR(samples.back().u, 2 * pi, 1e-12);
  for (const auto& s : samples) {
    EXPECT_LT(std::abs(cmc::delaunay_ode_residual(1.0, 5.0, s)), 1e-9);
    EXPECT_GT(s.r, 0.0);
  }
  for (std::size_t j = 1; j < samples.size(); ++j) EXPECT_GT(samples[j].R, samples[j - 1].R);
}

TEST(Surface, DelaunayNodoid) {
  const auto samples = cmc::delaunay_n2(-1.0, 2.0, 400, 1.0);
  bool decreasing = false;
  for (std::size_t j = 1; j < samples.size(); ++j) {
    if (samples[j].R < samples[j - 1].R) decreasing = true;
    EXPECT_LT(std::abs(cmc::delaunay_ode_residual(-1.0, 2.0, samples[j])), 1e-9);
  }
  EXPECT_TRUE(decreasing);
}

TEST(Surface, DelaunayGuards) {
  EXPECT_THROW(cmc::delaunay_n2(0.0, 5.0, 10), cmc::CmcError);
  EXPECT_THROW(cmc::delaunay_n2(1.0, 3.0, 10), cmc::CmcError);
  EXPECT_THROW(cmc::delaunay_n2(-1.0, 0.0, 10), cmc::CmcError);
}

TEST(Surface, PlanarHelpers) {
  const std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}};
  EXPECT_EQ(cmc::count_self_intersections(square, true), 0u);
  const std::vector<Point> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}, {0, 0}};
  EXPECT_EQ(cmc::count_self_intersections(bowtie, true), 1u);
  EXPECT_EQ(cmc::count_self_intersections(bowtie, false), 1u);
  const std::vector<Point> hook{{0, 0}, {1, 1}, {1, 0}};
  EXPECT_EQ(cmc::count_self_intersections(hook, false), 0u);
  EXPECT_NEAR(cmc::hausdorff_distance(square, cmc::rotate(square, 0.0)), 0.0, 1e-15);
  const auto r = cmc::rotate(std::vector<Point>{{1, 0}}, pi / 2);
  EXPECT_NEAR(r[0][0], 0.0, 1e-15);
  EXPECT_NEAR(r[0][1], 1.0, 1e-15);
  EXPECT_EQ(cmc::count_local_minima(std::vector<double>{3, 1, 2, 0, 5}), 2u);
}

TEST(Surface, FormatNumber) {
  EXPECT_EQ(cmc::format_number(0.1), "0.1");
  EXPECT_EQ(cmc::format_number(1.0 / 3.0), "0.333333333333333");
  EXPECT_EQ(cmc::format_number(2.0), "2");
}

TEST(Surface, SvgContainsCurve) {
  const auto sol = cmc::build_profile({SpaceKind::Spherical, 2, 0.1, 41.28796038772471});
  const auto curve = cmc::profile_curve(sol, 2, 1, 32);
  std::ostringstream os;
  cmc::write_profile_svg(os, std::span<const cmc::ProfileCurve>(&curve, 1));
  EXPECT_NE(os.str().find("<polyline"), std::string::npos);
  EXPECT_NE(os.str().find("<circle"), std::string::npos);
}

}  // namespace
