#include "illusion/signal_model.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace illusion;
using illusion::testing::honest_observation;
using illusion::testing::paper_towers;
using illusion::testing::random_point;
using illusion::testing::random_towers;

TEST(MeasureIntensities, AtTowerEqualsSource) {
  const auto towers = paper_towers();
  const auto obs = measure_intensities(towers, towers.positions[0], Vec3<double>::Ones().eval());
  EXPECT_DOUBLE_EQ(obs.intensity[0], 1.0);
}

TEST(MeasureIntensities, PaperLayoutFromStart) {
  // Squared distances from (20,30) to the towers are 1850, 1300 and 900.
  const auto obs = measure_intensities(paper_towers(), Point2{20, 30}, Vec3<double>::Ones().eval());
  EXPECT_DOUBLE_EQ(obs.intensity[0], 1.0 / 1851.0);
  EXPECT_DOUBLE_EQ(obs.intensity[1], 1.0 / 1301.0);
  EXPECT_DOUBLE_EQ(obs.intensity[2], 1.0 / 901.0);
}

TEST(MeasureIntensities, LinearInSource) {
  const auto towers = paper_towers();
  const Vec3<double> s(0.7, 2.0, 3.5);
  const auto a = measure_intensities(towers, Point2{3, -8}, s);
  const auto b = measure_intensities(towers, Point2{3, -8}, (2.0 * s).eval());
  EXPECT_TRUE(b.intensity.isApprox(2.0 * a.intensity, 1e-15));
}

TEST(MeasureIntensities, RejectsNonPositiveSource) {
  EXPECT_THROW(measure_intensities(paper_towers(), Point2{0, 0}, Vec3<double>(1, 0, 1)), Error);
  EXPECT_THROW(measure_intensities(paper_towers(), Point2{0, 0}, Vec3<double>(1, 1, -2)), Error);
}

TEST(PerceivedRadius, Values) {
  EXPECT_EQ(perceived_radius(1.0, 1.0), 0.0);
  EXPECT_EQ(perceived_radius(1.0, 0.5), 1.0);
  EXPECT_FALSE(perceived_radius(1.0, 2.0).has_value());
  EXPECT_FALSE(perceived_radius(1.0, 0.0).has_value());
}

TEST(PerceivedRadius, RecoversDistance) {
  for (double d = 0; d <= 1000.0; d += 0.37) {
    const double r = 1.0 / (1.0 + d * d);
    const auto got = perceived_radius(1.0, r);
    ASSERT_TRUE(got.has_value());
    EXPECT_LE(std::abs(*got - d), 1e-12 * std::max(1.0, d)) << "d=" << d;
  }
}

TEST(Trilaterate, RecoversHonestPosition) {
  const auto towers = paper_towers();
  const auto est = trilaterate(towers, honest_observation(towers, Point2{20, 30}));
  ASSERT_TRUE(est.has_value());
  EXPECT_LT((*est - Point2{20, 30}).norm(), 1e-9);
}

TEST(Trilaterate, ZeroRadiusAtEveryTowerIsEmpty) {
  const auto towers = paper_towers();
  EXPECT_FALSE(trilaterate(towers, Observation<double>{towers.calibration}).has_value());
}

TEST(Trilaterate, IntensityAboveCalibrationIsEmpty) {
  const auto towers = paper_towers();
  auto obs = honest_observation(towers, Point2{20, 30});
  obs.intensity[0] = 1.5;
  EXPECT_FALSE(trilaterate(towers, obs).has_value());
}

TEST(Trilaterate, ZeroIntensityIsEmpty) {
  const auto towers = paper_towers();
  auto obs = honest_observation(towers, Point2{20, 30});
  obs.intensity[2] = 0.0;
  EXPECT_FALSE(trilaterate(towers, obs).has_value());
}

TEST(Trilaterate, InconsistentCirclesAreEmpty) {
  const auto towers = paper_towers();
  auto obs = honest_observation(towers, Point2{20, 30});
  obs.intensity[1] *= 1.01;
  EXPECT_FALSE(trilaterate(towers, obs).has_value());
}

TEST(Trilaterate, TranslationEquivariant) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto towers = random_towers(rng);
    const Point2 p = random_point(rng, 100);
    const Point2 shift = random_point(rng, 50);
    const auto base = trilaterate(towers, honest_observation(towers, p));
    for (auto &t : towers.positions)
      t += shift;
    const auto moved = trilaterate(towers, honest_observation(towers, (p + shift).eval()));
    ASSERT_TRUE(base && moved);
    EXPECT_LT((*moved - (*base + shift)).norm(), 1e-9);
  }
}

TEST(SynthesizeIntensities, IdentitySpoofReturnsCalibration) {
  auto towers = paper_towers();
  towers.calibration = Vec3<double>(0.5, 2.0, 7.0);
  const Point2 p{12.5, -3.0};
  EXPECT_EQ(synthesize_intensities(towers, p, p), towers.calibration);
}

TEST(SynthesizeIntensities, PaperValue) {
  const auto s = synthesize_intensities(paper_towers(), Point2{20, 30}, Point2{10, 10});
  EXPECT_NEAR(s[0], 1851.0 / 451.0, 1e-14);
  EXPECT_NEAR(s[0], 4.10421, 1e-5);
}

TEST(SynthesizeIntensities, RoundTripRecoversTarget) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto towers = random_towers(rng);
    const Point2 p = random_point(rng, 100);
    const Point2 q = random_point(rng, 100);
    const auto s = synthesize_intensities(towers, p, q);
    const auto obs = measure_intensities(towers, p, s);
    EXPECT_TRUE((obs.intensity.array() <= towers.calibration.array()).all());
    const auto est = trilaterate(towers, obs);
    ASSERT_TRUE(est.has_value()) << "trial " << trial;
    EXPECT_LT((*est - q).norm(), 1e-9) << "trial " << trial;
  }
}
