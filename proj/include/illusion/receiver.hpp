#pragma once

#include "illusion/signal_model.hpp"

namespace illusion {

// Per-stage displacement box Theta = [lower, upper], applied around the
// previous estimate by the advanced receiver.
template <typename Scalar> struct MotionBox {
  Vec2<Scalar> lower = Vec2<Scalar>::Constant(-1);
  Vec2<Scalar> upper = Vec2<Scalar>::Constant(1);

  bool contains_zero() const { return (lower.array() < Scalar(0)).all() && (upper.array() > Scalar(0)).all(); }
};

inline constexpr double kBoxBoundaryTolerance = 1e-9;

/// Memoryless receiver: the estimate is the trilateration of the current
/// observation, whatever the previous estimate was.
template <typename Scalar>
IState<Scalar> itf_simple(const IState<Scalar> & /*prev*/, const Observation<Scalar> &obs,
                          const TowerArray<Scalar> &towers) {
  return trilaterate(towers, obs);
}

/// Receiver with a motion model: the trilaterated point must also lie in
/// prev + Theta. Emptiness is absorbing.
template <typename Scalar>
IState<Scalar> itf_advanced(const IState<Scalar> &prev, const Observation<Scalar> &obs,
                            const TowerArray<Scalar> &towers, const MotionBox<Scalar> &theta) {
  if (!prev)
    return std::nullopt;
  const auto p = trilaterate(towers, obs);
  if (!p)
    return std::nullopt;
  const Vec2<Scalar> step = *p - *prev;
  const Scalar tol(kBoxBoundaryTolerance);
  if ((step.array() < theta.lower.array() - tol).any() || (step.array() > theta.upper.array() + tol).any())
    return std::nullopt;
  return p;
}

/// Proportional goal seeking, u = gain * (goal - estimate).
template <typename Scalar>
Vec2<Scalar> receiver_policy(const IState<Scalar> &estimate, const Vec2<Scalar> &goal, Scalar gain) {
  if (!estimate)
    throw Error(ErrorCode::EmptyIState, "receiver policy is undefined on an empty I-state");
  return gain * (goal - *estimate);
}

} // namespace illusion
