#include "illusion/simulator.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace illusion;
using illusion::testing::random_point;
using illusion::testing::random_towers;

TEST(StepUniverse, Values) {
  const UniverseState s{Point2{20, 30}, Vec3<double>(1, 2, 3)};
  const auto same = step_universe(s, Point2{0, 0}, s.intensities);
  EXPECT_EQ(same.position, s.position);
  EXPECT_EQ(same.intensities, s.intensities);
  EXPECT_EQ(step_universe(s, Point2{6, 3}, s.intensities).position, Point2(26, 33));
  const auto two = step_universe(step_universe(s, Point2{1, -2}, s.intensities), Point2{0.5, 4}, s.intensities);
  EXPECT_EQ(two.position, Point2(21.5, 32));
  EXPECT_THROW(step_universe(s, Point2{0, 0}, Vec3<double>(1, 0, 1)), Error);
}

TEST(AuditStage, Values) {
  const auto truthful = audit_stage(Point2{20, 30}, Point2{20, 30});
  EXPECT_TRUE(truthful.plausible);
  EXPECT_FALSE(truthful.illusion);
  const auto spoofed = audit_stage(Point2{10, 10}, Point2{20, 30});
  EXPECT_TRUE(spoofed.plausible);
  EXPECT_TRUE(spoofed.illusion);
  const auto empty = audit_stage(std::nullopt, Point2{20, 30});
  EXPECT_FALSE(empty.plausible);
  EXPECT_FALSE(empty.illusion);
}

TEST(RunClosedLoop, StartAtJointFixedPoint) {
  Scenario s = default_scenario();
  s.producer.goal = s.receiver.goal;
  s.initial_position = s.receiver.goal;
  s.initial_estimate = s.receiver.goal;
  const auto log = run_closed_loop(validate_scenario(s));
  ASSERT_EQ(log.records.size(), 1u);
  EXPECT_EQ(log.terminated_at, 1);
  EXPECT_EQ(log.reason, TerminationReason::GoalReached);
  EXPECT_FALSE(log.records[0].illusion);
}

TEST(RunClosedLoop, DefaultLqrRun) {
  const auto log = run_closed_loop(validate_scenario(default_scenario()));
  EXPECT_EQ(log.reason, TerminationReason::GoalReached);
  ASSERT_TRUE(log.terminated_at);
  EXPECT_NEAR(static_cast<double>(*log.terminated_at), 31.0, 3.0);
  const auto &last = log.records.back();
  ASSERT_TRUE(last.estimate);
  EXPECT_LT((*last.estimate - Point2{40, 40}).norm(), 0.005);
}

TEST(RunClosedLoop, RecordInvariants) {
  const auto log = run_closed_loop(validate_scenario(default_scenario()));
  const Scenario s = default_scenario();
  std::int64_t expected_stage = 1;
  bool gap_opened = false;
  for (const auto &r : log.records) {
    EXPECT_EQ(r.stage, expected_stage++);
    EXPECT_EQ(r.plausible, r.estimate.has_value());
    if (r.illusion) {
      EXPECT_TRUE(r.plausible);
    }
    if (r.estimate) {
      EXPECT_EQ(r.error, s.receiver.goal - *r.estimate);
    }
    if (gap_opened) {
      EXPECT_TRUE(r.illusion) << "stage " << r.stage;
    }
    gap_opened = gap_opened || r.illusion;
  }
  EXPECT_TRUE(gap_opened);
}

TEST(RunClosedLoop, MaxStagesStopsTheRun) {
  Scenario s = default_scenario();
  s.max_stages = 5;
  const auto log = run_closed_loop(validate_scenario(s));
  EXPECT_EQ(log.records.size(), 5u);
  EXPECT_EQ(log.reason, TerminationReason::MaxStages);
  EXPECT_FALSE(log.terminated_at);
}

TEST(RunClosedLoop, LargeStepKillsAdvancedReceiver) {
  // An unconstrained producer paired with the advanced receiver: the first
  // LQR action leaves the unit box and the estimate becomes empty.
  const Scenario s = with_mode(default_scenario(), ProducerMode::Mpc);
  const auto params = mpc_params(s);
  const auto lqr = lqr_gain(params.sys, params.Q, params.R);
  const auto log = run_closed_loop(validate_scenario(s), [&](const ExtendedState<double> &x) {
    return lqr_policy(lqr, x);
  });
  EXPECT_EQ(log.reason, TerminationReason::ImplausibleIState);
  EXPECT_EQ(log.terminated_at, 2);
  EXPECT_FALSE(log.records.back().plausible);
  EXPECT_FALSE(log.records.back().illusion);
}

TEST(RunClosedLoop, RandomCalibrationGivesSameTrajectory) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> cal(0.01, 100.0);
  const auto reference = run_closed_loop(validate_scenario(default_scenario()));
  for (int trial = 0; trial < 5; ++trial) {
    Scenario s = default_scenario();
    s.towers.calibration = Vec3<double>(cal(rng), cal(rng), cal(rng));
    const auto log = run_closed_loop(validate_scenario(s));
    ASSERT_EQ(log.records.size(), reference.records.size());
    for (std::size_t k = 0; k < log.records.size(); ++k) {
      EXPECT_LT((log.records[k].position - reference.records[k].position).norm(), 1e-6);
      EXPECT_LT((*log.records[k].estimate - *reference.records[k].estimate).norm(), 1e-6);
    }
  }
}

TEST(RunClosedLoop, LqrLyapunovDecrease) {
  const Scenario s = default_scenario();
  const auto log = run_closed_loop(validate_scenario(s));
  const auto sol = lqr_gain(build_system(s.receiver.gain), s.producer.Q, s.producer.R);
  double previous = INFINITY;
  for (const auto &r : log.records) {
    const Vec4<double> x = extended_state(s, r.position, *r.estimate).stacked();
    const double v = x.dot(sol.P * x);
    EXPECT_LT(v, previous) << "stage " << r.stage;
    previous = v;
  }
}

TEST(RunClosedLoop, RandomScenariosMatchLinearModel) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> gain(0.05, 0.9);
  for (int trial = 0; trial < 10; ++trial) {
    Scenario s = default_scenario();
    s.towers = random_towers(rng);
    s.receiver.gain = gain(rng);
    s.receiver.goal = random_point(rng, 60);
    s.producer.goal = random_point(rng, 60);
    s.initial_position = random_point(rng, 60);
    s.initial_estimate = random_point(rng, 60);
    s.max_stages = 30;
    s.termination_epsilon = 1e-12;
    const auto log = run_closed_loop(validate_scenario(s));
    const auto sys = build_system(s.receiver.gain);
    Vec4<double> x = extended_state(s, s.initial_position, s.initial_estimate).stacked();
    for (const auto &r : log.records) {
      ASSERT_TRUE(r.estimate);
      const Vec4<double> logged = extended_state(s, r.position, *r.estimate).stacked();
      EXPECT_LT((logged - x).cwiseAbs().maxCoeff(), 1e-6) << "trial " << trial << " stage " << r.stage;
      x = sys.A * x + sys.B * r.producer_action;
    }
  }
}
