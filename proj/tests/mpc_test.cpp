#include "illusion/mpc.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace illusion;

namespace {

MpcParams<double> paper_params(double half_width = 1.0, int horizon = 10) {
  MpcParams<double> p;
  p.sys = build_system(0.3);
  p.horizon = horizon;
  p.bounds = {Point2::Constant(-half_width), Point2::Constant(half_width)};
  return p;
}

const ExtendedState<double> kPaperStart{Point2{20, 30}, Point2{20, 10}};

ExtendedState<double> random_state(std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0, 20);
  return {Point2{n(rng), n(rng)}, Point2{n(rng), n(rng)}};
}

} // namespace

TEST(CondenseCopt, OriginHasZeroLinearTerm) {
  const auto prog = condense_copt(paper_params(), ExtendedState<double>{});
  EXPECT_EQ(prog.qp.g, VecX<double>::Zero(22));
  EXPECT_EQ(prog.constant, 0.0);
  EXPECT_EQ(prog.qp.size(), 22);
}

TEST(CondenseCopt, SingleStageByHand) {
  const auto params = paper_params(1.0, 0);
  const auto &sys = params.sys;
  const ExtendedState<double> x{Point2{3, -1}, Point2{2, 5}};
  const auto prog = condense_copt(params, x);
  const Mat2<double> H = sys.B.transpose() * params.Q * sys.B + params.R;
  const Vec2<double> g = sys.B.transpose() * params.Q * sys.A * x.stacked();
  EXPECT_LT((prog.qp.H - H).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((prog.qp.g - g).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CondenseCopt, HessianIsPositiveDefinite) {
  std::mt19937_64 rng(8);
  for (int horizon = 0; horizon <= 20; ++horizon) {
    const auto prog = condense_copt(paper_params(1.0, horizon), random_state(rng));
    Eigen::LLT<MatX<double>> llt(prog.qp.H);
    EXPECT_EQ(llt.info(), Eigen::Success) << "N=" << horizon;
  }
}

TEST(CondenseCopt, AgreesWithSimulatedCost) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto params = paper_params(1.0, trial % 12);
    const auto x = random_state(rng);
    VecX<double> z(2 * (params.horizon + 1));
    for (Eigen::Index i = 0; i < z.size(); ++i)
      z[i] = n(rng);
    const auto prog = condense_copt(params, x);
    const double simulated = simulated_copt_cost(params, x, z);
    EXPECT_NEAR(prog.objective(z), simulated, 1e-8 * std::abs(simulated));
  }
}

TEST(SolveCopt, OriginGivesZeroControls) {
  for (int horizon : {1, 5, 10, 20})
    for (const auto &u : solve_copt(paper_params(1.0, horizon), ExtendedState<double>{}))
      EXPECT_EQ(u, Vec2<double>::Zero());
}

TEST(SolveCopt, ControlsStayInBox) {
  const auto controls = solve_copt(paper_params(), kPaperStart);
  ASSERT_EQ(controls.size(), 11u);
  for (const auto &u : controls)
    EXPECT_TRUE((u.array().abs() <= 1.0).all()) << u.transpose();
}

TEST(MpcPolicy, SaturatesInEarlyTransient) {
  const Vec2<double> u = mpc_policy(paper_params(), kPaperStart);
  EXPECT_EQ(u.cwiseAbs().maxCoeff(), 1.0);
}

TEST(MpcPolicy, OriginIsFixedPoint) {
  EXPECT_EQ(mpc_policy(paper_params(), ExtendedState<double>{}), Vec2<double>::Zero());
}

TEST(MpcPolicy, WideBoxReducesToLqr) {
  const auto params = paper_params(1e6);
  const auto lqr = lqr_gain(params.sys, params.Q, params.R);

  const Vec2<double> u_mpc = mpc_policy(params, kPaperStart);
  const Vec2<double> u_lqr = lqr_policy(lqr, kPaperStart);
  const double angle = std::acos(std::clamp(u_mpc.normalized().dot(u_lqr.normalized()), -1.0, 1.0));
  EXPECT_LT(angle, 15.0 * std::numbers::pi / 180.0);

  Vec4<double> x_mpc = kPaperStart.stacked(), x_lqr = x_mpc;
  for (int stage = 0; stage < 10; ++stage) {
    x_mpc = params.sys.A * x_mpc + params.sys.B * mpc_policy(params, ExtendedState<double>::from_stacked(x_mpc));
    x_lqr = params.sys.A * x_lqr + params.sys.B * lqr_policy(lqr, ExtendedState<double>::from_stacked(x_lqr));
    EXPECT_LT((x_mpc - x_lqr).norm(), 0.05 * x_lqr.norm()) << "stage " << stage;
  }
}
