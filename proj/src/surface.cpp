#include "cmc/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "cmc/detail/quadrature.hpp"
#include "cmc/errors.hpp"

namespace cmc {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> with_tail(std::span<const double> y, double a, double b) {
  std::vector<double> v(y.begin(), y.end());
  v.push_back(a);
  v.push_back(b);
  return v;
}

std::vector<double> scaled(std::span<const double> y, double s) {
  std::vector<double> v(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) v[i] = s * y[i];
  return v;
}

}  // namespace

double ambient_dot(SpaceKind space, std::span<const double> a,
                   std::span<const double> b) {
  double sum = 0.0;
  const std::size_t last = a.size() - 1;
  for (std::size_t i = 0; i < last; ++i) sum += a[i] * b[i];
  const double tail = a[last] * b[last];
  return space == SpaceKind::Hyperbolic ? sum - tail : sum + tail;
}

ImmersionSample immerse(const ProfileState& s, SpaceKind space,
                        std::span<const double> y) {
  ImmersionSample out;
  out.u = s.u;
  out.y.assign(y.begin(), y.end());
  const double r = s.r;
  const double rp = s.rprime;
  const double rl = r * s.lambda;

  switch (space) {
    case SpaceKind::Spherical: {
      // B2 = (cos, sin), B3 = (-sin, cos) in the last two coordinates.
      const double rho = std::sqrt(s.radius_sq);
      const double c = std::cos(s.theta);
      const double sn = std::sin(s.theta);
      const double dtheta = rl / s.radius_sq;
      const double b2 = -r * rp / rho;
      const double b3 = rho * dtheta;
      out.point = with_tail(scaled(y, r), rho * c, rho * sn);
      out.tangent_u = with_tail(scaled(y, rp), b2 * c - b3 * sn, b2 * sn + b3 * c);
      const double n2 = r * rl / rho;
      const double n3 = rp / rho;
      out.normal = with_tail(scaled(y, -rl), n2 * c - n3 * sn, n2 * sn + n3 * c);
      break;
    }
    case SpaceKind::Hyperbolic: {
      // B2 = (sinh, cosh), B3 = (cosh, sinh); <B2,B2> = -1, <B3,B3> = 1.
      const double rho = std::sqrt(s.radius_sq);
      const double sh = std::sinh(s.theta);
      const double ch = std::cosh(s.theta);
      const double dtheta = rl / s.radius_sq;
      const double b2 = r * rp / rho;
      const double b3 = rho * dtheta;
      out.point = with_tail(scaled(y, r), rho * sh, rho * ch);
      out.tangent_u = with_tail(scaled(y, rp), b2 * sh + b3 * ch, b2 * ch + b3 * sh);
      const double n2 = -r * rl / rho;
      const double n3 = rp / rho;
      out.normal = with_tail(scaled(y, -rl), n2 * sh + n3 * ch, n2 * ch + n3 * sh);
      break;
    }
    case SpaceKind::Euclidean: {
      out.point = scaled(y, r);
      out.point.push_back(s.theta);
      out.tangent_u = scaled(y, rp);
      out.tangent_u.push_back(rl);
      out.normal = scaled(y, -rl);
      out.normal.push_back(rp);
      break;
    }
  }
  return out;
}

ImmersionSample immerse(const ProfileSolution& sol, std::span<const double> y,
                        double u) {
  return immerse(sol.eval(u), sol.params().space, y);
}

std::array<double, 2> profile_point(const ProfileState& s, SpaceKind space) {
  switch (space) {
    case SpaceKind::Spherical: {
      const double rho = std::sqrt(s.radius_sq);
      return {rho * std::cos(s.theta), rho * std::sin(s.theta)};
    }
    case SpaceKind::Hyperbolic: {
      const double rho = std::sqrt(s.radius_sq);
      return {rho * std::sinh(s.theta), rho * std::cosh(s.theta)};
    }
    case SpaceKind::Euclidean:
      return {s.r, s.theta};
  }
  return {0.0, 0.0};
}

ProfileCurve profile_curve_open(const ProfileSolution& sol, double periods,
                                int samples_per_period) {
  if (samples_per_period < 1 || !(periods > 0.0)) {
    throw CmcError(ErrorCode::InvalidArgument,
                   "need positive periods and samples per period");
  }
  const int count = std::max(1, static_cast<int>(std::lround(periods * samples_per_period)));
  const double length = periods * sol.period();
  ProfileCurve curve;
  curve.u.reserve(count + 1);
  curve.points.reserve(count + 1);
  for (int j = 0; j <= count; ++j) {
    const double u = length * j / count;
    curve.u.push_back(u);
    curve.points.push_back(profile_point(sol.eval(u), sol.params().space));
  }
  return curve;
}

ProfileCurve profile_curve(const ProfileSolution& sol, int m, int k,
                           int samples_per_period) {
  if (sol.params().space != SpaceKind::Spherical) {
    throw CmcError(ErrorCode::InvalidArgument,
                   "closed profile curves exist only in the sphere");
  }
  if (m < 1 || k < 1) throw CmcError(ErrorCode::InvalidArgument, "need m, k >= 1");
  if (samples_per_period < 16) {
    throw CmcError(ErrorCode::InvalidArgument, "need at least 16 samples per period");
  }
  const double gap = std::abs(m * sol.rotation() - 2.0 * pi * k);
  if (gap > kClosureTolerance) {
    throw CmcError(ErrorCode::NotClosed,
                   "m K differs from 2k pi by " + format_number(gap, 3));
  }
  return profile_curve_open(sol, m, samples_per_period);
}

SurfaceMesh build_mesh_n2(const EmbeddingSolution& embedding,
                          const MeshOptions& options) {
  const ProblemParams& p = embedding.params;
  if (p.n != 2 || p.space != SpaceKind::Spherical) {
    throw CmcError(ErrorCode::InvalidArgument, "meshes are built for n = 2 in S^3 only");
  }
  const int m = embedding.m;
  const int res_u = options.res_u > 0 ? options.res_u : 256 * m;
  const int res_v = options.res_v;
  if (res_u < 3 || res_v < 3) {
    throw CmcError(ErrorCode::InvalidArgument, "mesh resolution must be >= 3");
  }

  const ProfileSolution sol = build_profile(p);
  SurfaceMesh mesh;
  mesh.params = p;
  mesh.m = m;
  mesh.k = embedding.k;
  mesh.projected = options.project;
  mesh.profile = profile_curve(sol, m, embedding.k, std::max(16, res_u / m));

  const double length = m * sol.period();
  const double ca = std::cos(options.pole_angle);
  const double sa = std::sin(options.pole_angle);
  mesh.vertices.reserve(static_cast<std::size_t>(res_u) * res_v);
  for (int i = 0; i < res_u; ++i) {
    const ProfileState state = sol.eval(length * i / res_u);
    for (int j = 0; j < res_v; ++j) {
      const double v = 2.0 * pi * j / res_v;
      const std::array<double, 2> y{std::cos(v), std::sin(v)};
      auto x = immerse(state, SpaceKind::Spherical, y).point;
      const double x3 = ca * x[2] - sa * x[3];
      const double x4 = sa * x[2] + ca * x[3];
      x[2] = x3;
      x[3] = x4;
      const double pole_dist =
          std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + (1.0 - x4) * (1.0 - x4));
      if (pole_dist < kPoleTolerance) {
        throw CmcError(ErrorCode::PoleCollision,
                       "a vertex lies on the projection pole; rotate the pole");
      }
      if (options.project) {
        const double inv = 1.0 / (1.0 - x4);
        mesh.vertices.push_back({x[0] * inv, x[1] * inv, x[2] * inv});
      } else {
        mesh.vertices.push_back(std::move(x));
      }
    }
  }

  mesh.faces.reserve(mesh.vertices.size());
  for (int i = 0; i < res_u; ++i) {
    const int i1 = (i + 1) % res_u;
    for (int j = 0; j < res_v; ++j) {
      const int j1 = (j + 1) % res_v;
      mesh.faces.push_back({i * res_v + j, i1 * res_v + j, i1 * res_v + j1, i * res_v + j1});
    }
  }
  return mesh;
}

std::vector<DelaunaySample> delaunay_n2(double H, double C, int samples,
                                        double periods) {
  if (H == 0.0) throw CmcError(ErrorCode::InvalidArgument, "H must be nonzero");
  if (samples < 2 || !(periods > 0.0)) {
    throw CmcError(ErrorCode::InvalidArgument, "need >= 2 samples and periods > 0");
  }
  if (H > 0.0 && !(C - 4.0 * H > 1e-10 * 4.0 * H)) {
    throw CmcError(ErrorCode::BelowThreshold, "Delaunay profiles need C > 4H");
  }
  if (H < 0.0 && !(C > 0.0)) {
    throw CmcError(ErrorCode::BelowThreshold, "Delaunay profiles need C > 0");
  }
  const double A = C - 2.0 * H;
  const double B = std::sqrt(C * (C - 4.0 * H));
  const double root_2c = std::sqrt(2.0 * C);
  auto radicand = [&](double u) { return A + B * std::cos(2.0 * H * u); };
  auto height_rate = [&](double u) {
    return (C + B * std::cos(2.0 * H * u)) / (root_2c * std::sqrt(radicand(u)));
  };

  const double length = periods * pi / std::abs(H);
  std::vector<DelaunaySample> out;
  out.reserve(samples);
  double R = 0.0;
  double prev_u = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double u = length * j / (samples - 1);
    if (j > 0) {
      R += detail::gauss_legendre<1>(
          [&](double x) { return detail::Values<1>{height_rate(x)}; }, prev_u, u)[0];
    }
    DelaunaySample s;
    s.u = u;
    s.r = std::sqrt(radicand(u)) / (std::numbers::sqrt2 * std::sqrt(C) * H);
    s.rprime = -B * std::sin(2.0 * H * u) / (2.0 * C * H * s.r);
    s.R = R;
    s.Rprime = height_rate(u);
    out.push_back(s);
    prev_u = u;
  }
  return out;
}

double delaunay_ode_residual(double H, double C, const DelaunaySample& s) {
  const double root_c = std::sqrt(C);
  const double g = root_c * std::abs(s.r);
  const double gp = root_c * std::abs(s.rprime);
  return gp * gp + 1.0 / (g * g) + H * H * g * g + 2.0 * H - C;
}

std::size_t count_self_intersections(std::span<const std::array<double, 2>> pts,
                                     bool closed) {
  const std::size_t segs = pts.size() < 2 ? 0 : pts.size() - 1;
  auto orient = [](const std::array<double, 2>& a, const std::array<double, 2>& b,
                   const std::array<double, 2>& c) {
    const double v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    return (v > 0.0) - (v < 0.0);
  };
  std::size_t crossings = 0;
  for (std::size_t i = 0; i < segs; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[i + 1];
    const double ax0 = std::min(a[0], b[0]), ax1 = std::max(a[0], b[0]);
    const double ay0 = std::min(a[1], b[1]), ay1 = std::max(a[1], b[1]);
    for (std::size_t j = i + 2; j < segs; ++j) {
      if (closed && i == 0 && j + 1 == segs) continue;
      const auto& c = pts[j];
      const auto& d = pts[j + 1];
      if (std::max(c[0], d[0]) < ax0 || std::min(c[0], d[0]) > ax1 ||
          std::max(c[1], d[1]) < ay0 || std::min(c[1], d[1]) > ay1) {
        continue;
      }
      const int o1 = orient(a, b, c), o2 = orient(a, b, d);
      const int o3 = orient(c, d, a), o4 = orient(c, d, b);
      if (o1 * o2 < 0 && o3 * o4 < 0) ++crossings;
    }
  }
  return crossings;
}

double hausdorff_distance(std::span<const std::array<double, 2>> a,
                          std::span<const std::array<double, 2>> b) {
  auto directed = [](std::span<const std::array<double, 2>> from,
                     std::span<const std::array<double, 2>> to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) {
        best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1]));
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

std::vector<std::array<double, 2>> rotate(std::span<const std::array<double, 2>> pts,
                                          double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<std::array<double, 2>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({c * p[0] - s * p[1], s * p[0] + c * p[1]});
  return out;
}

std::size_t count_local_minima(std::span<const double> values) {
  const std::size_t n = values.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < n && n >= 3; ++i) {
    const double prev = values[(i + n - 1) % n];
    const double next = values[(i + 1) % n];
    if (values[i] < prev && values[i] < next) ++count;
  }
  return count;
}

std::string format_number(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void write_obj(std::ostream& out, const SurfaceMesh& mesh) {
  if (!mesh.projected) {
    throw CmcError(ErrorCode::InvalidArgument, "OBJ export needs a projected mesh");
  }
  out << "# n=2 H=" << format_number(mesh.params.H) << " C="
      << format_number(mesh.params.C) << " m=" << mesh.m << " k=" << mesh.k << '\n';
  for (const auto& v : mesh.vertices) {
    out << "v " << format_number(v[0], 9) << ' ' << format_number(v[1], 9) << ' '
        << format_number(v[2], 9) << '\n';
  }
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' ' << f[3] + 1
        << '\n';
  }
}

void write_profile_csv(std::ostream& out, const ProfileCurve& curve) {
  out << "u,x_a,x_b\n";
  for (std::size_t i = 0; i < curve.u.size(); ++i) {
    out << format_number(curve.u[i]) << ',' << format_number(curve.points[i][0]) << ','
        << format_number(curve.points[i][1]) << '\n';
  }
}

void write_profile_svg(std::ostream& out, std::span<const ProfileCurve> curves) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.1 -1.1 2.2 2.2\" "
         "width=\"600\" height=\"600\">\n"
      << "<g transform=\"scale(1,-1)\">\n"
      << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#999\" "
         "stroke-width=\"0.004\"/>\n";
  for (const auto& curve : curves) {
    out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.006\" points=\"";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      if (i) out << ' ';
      out << format_number(curve.points[i][0], 7) << ','
          << format_number(curve.points[i][1], 7);
    }
    out << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
}

}  // namespace cmc
