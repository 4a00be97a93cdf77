#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cmc/embedding.hpp"
#include "cmc/profile.hpp"

namespace cmc {

/// One point of the immersion phi(y, u) with its Gauss map. Vectors live in
/// R^{n+2} (sphere, hyperboloid model with Minkowski last coordinate) or
/// R^{n+1} (Euclidean space).
struct ImmersionSample {
  double u = 0.0;
  std::vector<double> y;
  std::vector<double> point;
  std::vector<double> normal;
  std::vector<double> tangent_u;  // d phi / du
};

/// Ambient inner product: Euclidean, or Minkowski (last sign negative) for
/// hyperbolic space.
double ambient_dot(SpaceKind space, std::span<const double> a,
                   std::span<const double> b);

ImmersionSample immerse(const ProfileState& state, SpaceKind space,
                        std::span<const double> y);
ImmersionSample immerse(const ProfileSolution& sol, std::span<const double> y,
                        double u);

/// Profile-plane coordinates (x_{n+1}, x_{n+2}) of a state: the rotating
/// pair in S^{n+1} and H^{n+1}, or (r, R) in R^{n+1}.
std::array<double, 2> profile_point(const ProfileState& state, SpaceKind space);

struct ProfileCurve {
  std::vector<double> u;
  std::vector<std::array<double, 2>> points;
};

/// Closed profile curve over u in [0, m T], `samples_per_period` segments per
/// period; the last point repeats the first. Spherical only.
/// Throws NotClosed when |m K - 2 k pi| > 1e-6.
ProfileCurve profile_curve(const ProfileSolution& sol, int m, int k,
                           int samples_per_period);

/// Same sampling without the closure requirement (any space).
ProfileCurve profile_curve_open(const ProfileSolution& sol, double periods,
                                int samples_per_period);

inline constexpr double kClosureTolerance = 1e-6;
inline constexpr double kPoleTolerance = 1e-6;

struct MeshOptions {
  int res_u = 0;  // rings along u; 0 selects 256 m
  int res_v = 128;
  bool project = true;
  /// Rotation of the (x3, x4) plane applied before projecting from
  /// (0, 0, 0, 1).
  double pole_angle = 0.0;
};

struct SurfaceMesh {
  ProblemParams params;
  int m = 0;
  int k = 0;
  bool projected = false;
  std::vector<std::vector<double>> vertices;  // R^3 if projected, else R^4
  std::vector<std::array<int, 4>> faces;      // 0-based quads
  ProfileCurve profile;
};

/// Torus mesh of an n = 2 example over [0, 2 pi) x [0, m T) with both seams
/// identified. Throws InvalidArgument unless n = 2 and spherical,
/// NotClosed when the example does not close, PoleCollision when a vertex
/// comes within 1e-6 of the projection pole.
SurfaceMesh build_mesh_n2(const EmbeddingSolution& embedding,
                          const MeshOptions& options = {});

struct DelaunaySample {
  double u = 0.0;
  double r = 0.0;  // signed: negative when H < 0
  double rprime = 0.0;
  double R = 0.0;
  double Rprime = 0.0;
};

/// Closed-form n = 2 Euclidean profile over `periods` periods pi/|H|.
/// Throws InvalidArgument for H = 0, BelowThreshold for C <= 4H (H > 0,
/// with relative guard 1e-10) or C <= 0 (H < 0).
std::vector<DelaunaySample> delaunay_n2(double H, double C, int samples,
                                        double periods = 1.0);

/// Residual of the Euclidean first integral (g')^2 + g^{-2} + H^2 g^2 + 2H - C
/// at a Delaunay sample, with g = sqrt(C) |r|.
double delaunay_ode_residual(double H, double C, const DelaunaySample& s);

// Planar geometry helpers.

/// Proper crossings between non-adjacent segments of a polyline; with
/// `closed`, the last point is taken to coincide with the first.
std::size_t count_self_intersections(std::span<const std::array<double, 2>> pts,
                                     bool closed);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff_distance(std::span<const std::array<double, 2>> a,
                          std::span<const std::array<double, 2>> b);

std::vector<std::array<double, 2>> rotate(std::span<const std::array<double, 2>> pts,
                                          double angle);

/// Number of strict local minima of a periodic sequence.
std::size_t count_local_minima(std::span<const double> values);

// Writers. Output is LF-terminated and byte-deterministic.

/// OBJ with `v x y z` (9 significant digits) and 1-based `f` quads.
/// Throws InvalidArgument if the mesh is not projected to R^3.
void write_obj(std::ostream& out, const SurfaceMesh& mesh);
void write_profile_csv(std::ostream& out, const ProfileCurve& curve);
/// SVG of profile curves in the square [-1.1, 1.1]^2 with the unit circle.
void write_profile_svg(std::ostream& out, std::span<const ProfileCurve> curves);

/// Shortest round-trip-safe %.{digits}g rendering.
std::string format_number(double x, int digits = 15);

}  // namespace cmc
