#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cmc/embedding.hpp"
#include "cmc/errors.hpp"
#include "cmc/rotation.hpp"
#include "cmc/scalar_core.hpp"

namespace {

using cmc::ProblemParams;
using cmc::SpaceKind;
constexpr double pi = std::numbers::pi;

cmc::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const cmc::CmcError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no CmcError thrown";
  return cmc::ErrorCode::InvalidArgument;
}

struct Golden {
  int m;
  double H;
  double C;
};

// Published figure parameters whose C is reproduced to 1e-6.
const Golden kGolden[] = {
    {2, 0.1, 41.28796038772471},  {2, 0.3, 9.129645968138256},
    {2, 0.57, 3.5313222039296357}, {3, 0.6, 365.3705636110441},
    {3, 0.8, 22.320379289179478},  {3, 1.0, 9.908469426660892},
    {3, 1.2, 6.084010495710457},   {3, 1.237, 5.6615177218839605},
};

TEST(Embedding, SolveRecoversGoldenC) {
  for (const auto& g : kGolden) {
    const auto sols = cmc::solve_C(2, g.H, g.m);
    ASSERT_FALSE(sols.empty());
    double best = INFINITY;
    for (const auto& s : sols) {
      best = std::min(best, std::abs(s.params.C - g.C) / g.C);
      EXPECT_LT(s.residual, cmc::kEmbeddingResidual);
      EXPECT_TRUE(s.embedded());
    }
    EXPECT_LT(best, 1e-6) << g.H;
  }
}

// The true root for H = 0.5774, m = 3 differs from the published value by
// about 5e-3 relative; the rotation number there is still 2 pi / 3 to 4e-7.
TEST(Embedding, NearLowerEdgeOfM3) {
  const auto sols = cmc::solve_C(2, 0.5774, 3);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_NEAR(sols[0].params.C, 348666.83977280118, 1e-8 * 348666.84);
  EXPECT_NEAR(cmc::rotation_K({SpaceKind::Spherical, 2, 0.5774, 346879.6632142387}),
              2 * pi / 3, 1e-6);
}

TEST(Embedding, VeryLargeC) {
  const double H = 1 / std::sqrt(3.0) + 1e-9;
  const auto sols = cmc::solve_C(2, H, 3);
  ASSERT_FALSE(sols.empty());
  EXPECT_GT(sols[0].params.C, 1e9);
  EXPECT_LT(sols[0].residual, cmc::kEmbeddingResidual);
}

TEST(Embedding, RandomAdmissibleH) {
  std::mt19937 rng(99);
  for (auto [n, m] : {std::pair{2, 3}, std::pair{3, 4}}) {
    auto [lo, hi] = cmc::admissible_H_interval(n, m);
    std::uniform_real_distribution<double> h_dist(lo, hi);
    for (int i = 0; i < 10; ++i) {
      const double H = h_dist(rng);
      const auto sols = cmc::solve_C(n, H, m);
      ASSERT_FALSE(sols.empty()) << H;
      for (const auto& s : sols) {
        EXPECT_NEAR(cmc::rotation_K(s.params), 2 * pi / m, 1e-8);
        EXPECT_GT(s.params.C, cmc::critical_point(n, H).c0);
      }
    }
  }
}

// Neighbouring admissible intervals overlap: there H carries examples for
// both m and m + 1.
TEST(Embedding, OverlappingIntervals) {
  auto [lo3, hi3] = cmc::admissible_H_interval(2, 3);
  auto [lo4, hi4] = cmc::admissible_H_interval(2, 4);
  ASSERT_LT(lo4, hi3);
  const double H = 0.5 * (lo4 + hi3);
  (void)lo3;
  (void)hi4;
  EXPECT_FALSE(cmc::solve_C(2, H, 3).empty());
  EXPECT_FALSE(cmc::solve_C(2, H, 4).empty());
}

TEST(Embedding, ImmersedWithK) {
  const auto sols = cmc::solve_C(2, 0.9, 5, 2);
  ASSERT_FALSE(sols.empty());
  EXPECT_FALSE(sols[0].embedded());
  EXPECT_NEAR(sols[0].K_achieved, 4 * pi / 5, 1e-8);
}

TEST(Embedding, Errors) {
  EXPECT_EQ(code_of([] { cmc::solve_C(2, 1.5, 3); }), cmc::ErrorCode::Infeasible);
  EXPECT_EQ(code_of([] { cmc::solve_C(2, 1 / std::sqrt(3.0), 3); }),
            cmc::ErrorCode::Infeasible);
  EXPECT_EQ(code_of([] { cmc::solve_C(2, 0.5, 4, 2); }), cmc::ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { cmc::solve_C(1, 0.5, 3); }), cmc::ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { cmc::solve_C(2, 0.5, 1); }), cmc::ErrorCode::InvalidArgument);
}

TEST(Embedding, MakeSolution) {
  const auto s = cmc::make_solution({SpaceKind::Spherical, 2, 1.0, 9.908469426660892}, 3, 1);
  EXPECT_NEAR(s.target(), 2 * pi / 3, 1e-15);
  EXPECT_LT(s.residual, 1e-8);
}

TEST(Embedding, SimplestFraction) {
  EXPECT_EQ(cmc::simplest_fraction(0.3, 0.4, 100), std::make_pair(1, 3));
  EXPECT_EQ(cmc::simplest_fraction(0.70, 0.71, 1000), std::make_pair(12, 17));
  EXPECT_EQ(cmc::simplest_fraction(0.5, 0.5 + 1e-9, 1000), std::make_pair(0, 0));
  EXPECT_EQ(cmc::simplest_fraction(1.2, 1.3, 100), std::make_pair(5, 4));
}

TEST(Embedding, NormARangeClosedForm) {
  const ProblemParams p{SpaceKind::Spherical, 3, 0.0, 10.0};
  const auto r = cmc::roots_general(p);
  const auto [lo, hi] = cmc::norm_a_range(p);
  EXPECT_NEAR(hi, 6 * std::pow(r.t1, -6), 1e-12 * hi);
  EXPECT_NEAR(lo, 6 * std::pow(r.t2, -6), 1e-12 * hi);
}

TEST(Embedding, NearIsoparametricN6) {
  const auto res = cmc::near_isoparametric_minimal(6, 0.125);
  EXPECT_GE(res.norm_a_min, 6 - 0.125);
  EXPECT_LE(res.norm_a_max, 6 + 0.125);
  EXPECT_EQ(res.solution.params.H, 0.0);
  EXPECT_LT(res.solution.residual, cmc::kEmbeddingResidual);
  const auto v = cmc::cone_stability_check(res.solution);
  EXPECT_EQ(v.verdict, cmc::Stability::Stable);
  EXPECT_TRUE(v.curvature_bound);
  EXPECT_TRUE(v.dimension_bound);
}

TEST(Embedding, NearIsoparametricN2) {
  const auto res = cmc::near_isoparametric_minimal(2, 0.5);
  EXPECT_LT(res.solution.residual, cmc::kEmbeddingResidual);
  const auto v = cmc::cone_stability_check(res.solution);
  EXPECT_EQ(v.verdict, cmc::Stability::Inconclusive);
  EXPECT_FALSE(v.dimension_bound);
}

TEST(Embedding, StabilityNeedsCurvatureBound) {
  // n = 6 with sup |A|^2 well above n + 1/8.
  const double c0 = cmc::critical_point(6, 0.0).c0;
  const auto s = cmc::make_solution({SpaceKind::Spherical, 6, 0.0, 1.5 * c0}, 2, 1);
  const auto v = cmc::cone_stability_check(s);
  EXPECT_GT(v.sup_norm_a, 6.2);
  EXPECT_FALSE(v.curvature_bound);
  EXPECT_EQ(v.verdict, cmc::Stability::Inconclusive);
}

TEST(Embedding, StabilityRejectsNonMinimal) {
  const auto s = cmc::make_solution({SpaceKind::Spherical, 2, 0.3, 9.129645968138256}, 2, 1);
  EXPECT_EQ(code_of([&] { cmc::cone_stability_check(s); }), cmc::ErrorCode::NotMinimal);
}

TEST(Embedding, NearIsoparametricArguments) {
  EXPECT_EQ(code_of([] { cmc::near_isoparametric_minimal(6, 1.5); }),
            cmc::ErrorCode::InvalidArgument);
}

}  // namespace
