#pragma once

#include "illusion/error.hpp"
#include "illusion/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace illusion {

// Signal intensity drop-off, position recovery by trilateration and the
// inverse map that picks source intensities for a desired estimate.
//
// A tower i transmitting with source intensity s is measured at distance d as
//
//     r = s / (1 + d^2).
//
// A receiver calibrated to s_c therefore perceives the distance
// sqrt(s_c / r - 1), which exists only for 0 < r <= s_c.

template <typename Scalar> struct TowerArray {
  std::array<Vec2<Scalar>, 3> positions;
  Vec3<Scalar> calibration = Vec3<Scalar>::Ones();
};

// Receiver position estimate. std::nullopt is the empty (implausible) state.
template <typename Scalar> using IState = std::optional<Vec2<Scalar>>;

template <typename Scalar> struct Observation {
  Vec3<Scalar> intensity;
};

// Consistency tolerance for the three-circle intersection.
inline constexpr double kTrilaterationTolerance = 1e-6;

/// Twice the area of the tower triangle divided by its squared longest
/// edge. Zero for duplicate or collinear towers.
template <typename Scalar> Scalar normalized_tower_area(const TowerArray<Scalar> &towers) {
  const auto &t = towers.positions;
  const Vec2<Scalar> a = t[1] - t[0];
  const Vec2<Scalar> b = t[2] - t[0];
  const Vec2<Scalar> c = t[2] - t[1];
  const Scalar scale2 = std::max({a.squaredNorm(), b.squaredNorm(), c.squaredNorm()});
  if (!(scale2 > Scalar(0)))
    return Scalar(0);
  return std::abs(a.x() * b.y() - a.y() * b.x()) / scale2;
}

template <typename Scalar> bool in_general_position(const TowerArray<Scalar> &towers) {
  return normalized_tower_area(towers) > Scalar(1e-9);
}

template <typename Scalar>
Observation<Scalar> measure_intensities(const TowerArray<Scalar> &towers, const Vec2<Scalar> &position,
                                        const Vec3<Scalar> &source) {
  if (!(source.array() > Scalar(0)).all())
    throw Error(ErrorCode::NonPositiveIntensity, "source intensities must be strictly positive");
  Observation<Scalar> obs;
  for (int i = 0; i < 3; ++i)
    obs.intensity[i] = source[i] / (Scalar(1) + (towers.positions[i] - position).squaredNorm());
  return obs;
}

/// Squared perceived distance s_c/r - 1, or nullopt when r is zero or exceeds
/// the calibration intensity.
template <typename Scalar> std::optional<Scalar> perceived_radius_squared(Scalar calibration, Scalar measured) {
  if (!(measured > Scalar(0)) || measured > calibration)
    return std::nullopt;
  return std::max(Scalar(0), calibration / measured - Scalar(1));
}

template <typename Scalar> std::optional<Scalar> perceived_radius(Scalar calibration, Scalar measured) {
  const auto d2 = perceived_radius_squared(calibration, measured);
  if (!d2)
    return std::nullopt;
  return std::sqrt(*d2);
}

/// Preimage of an observation under the calibrated sensor map.
///
/// Pairs (1,2) and (1,3) of the circle equations are subtracted, giving a 2x2
/// linear system for the candidate point relative to tower 1. The candidate
/// is accepted only if it lies on all three circles within
/// kTrilaterationTolerance.
template <typename Scalar>
IState<Scalar> trilaterate(const TowerArray<Scalar> &towers, const Observation<Scalar> &obs) {
  std::array<Scalar, 3> d2;
  for (int i = 0; i < 3; ++i) {
    const auto r2 = perceived_radius_squared(towers.calibration[i], obs.intensity[i]);
    if (!r2)
      return std::nullopt;
    d2[i] = *r2;
  }

  const auto &t = towers.positions;
  Mat2<Scalar> m;
  Vec2<Scalar> rhs;
  for (int row = 0; row < 2; ++row) {
    const Vec2<Scalar> edge = t[row + 1] - t[0];
    m.row(row) = Scalar(2) * edge.transpose();
    rhs[row] = edge.squaredNorm() - d2[row + 1] + d2[0];
  }
  if (std::abs(m.determinant()) <= Scalar(0))
    return std::nullopt;
  const Vec2<Scalar> p = t[0] + m.partialPivLu().solve(rhs);
  if (!p.allFinite())
    return std::nullopt;

  for (int i = 0; i < 3; ++i) {
    const Scalar residual = std::abs((t[i] - p).norm() - std::sqrt(d2[i]));
    if (!(residual < Scalar(kTrilaterationTolerance)))
      return std::nullopt;
  }
  return p;
}

/// Source intensities that make a receiver standing at `position` trilaterate
/// to `target`.
template <typename Scalar>
Vec3<Scalar> synthesize_intensities(const TowerArray<Scalar> &towers, const Vec2<Scalar> &position,
                                    const Vec2<Scalar> &target) {
  Vec3<Scalar> s;
  for (int i = 0; i < 3; ++i) {
    const Scalar true_gain = Scalar(1) + (towers.positions[i] - position).squaredNorm();
    const Scalar spoof_gain = Scalar(1) + (towers.positions[i] - target).squaredNorm();
    s[i] = towers.calibration[i] * true_gain / spoof_gain;
  }
  return s;
}

} // namespace illusion
