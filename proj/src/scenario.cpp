#include "illusion/scenario.hpp"

#include <Eigen/Cholesky>

namespace illusion {

namespace {

template <typename Mat> bool symmetric_positive_definite(const Mat &m) {
  if (!m.allFinite())
    return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    return false;
  // Pivoted LDL' factorization: positive definite iff every pivot is positive.
  const Eigen::LDLT<Mat> ldlt(m);
  return ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > 0).all();
}

bool finite(const Point2 &p) { return p.allFinite(); }

} // namespace

const char *to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::DegenerateTowers: return "degenerate-towers";
  case ErrorCode::NonPositiveCalibration: return "nonpositive-calibration";
  case ErrorCode::ZeroReceiverGain: return "zero-receiver-gain";
  case ErrorCode::NonPositiveDefiniteWeight: return "non-pd-weight";
  case ErrorCode::BoxExcludesZero: return "box-excludes-zero";
  case ErrorCode::NonPositiveEpsilon: return "nonpositive-epsilon";
  case ErrorCode::InvalidStageLimit: return "invalid-stage-limit";
  case ErrorCode::InvalidHorizon: return "invalid-horizon";
  case ErrorCode::ModeVariantMismatch: return "mode-variant-mismatch";
  case ErrorCode::NonPositiveIntensity: return "nonpositive-intensity";
  case ErrorCode::EmptyIState: return "empty-istate";
  case ErrorCode::NotConverged: return "not-converged";
  case ErrorCode::IllConditioned: return "ill-conditioned";
  case ErrorCode::InfeasiblePoint: return "infeasible-point";
  case ErrorCode::ClosedLoopMismatch: return "closed-loop-mismatch";
  case ErrorCode::Parse: return "parse";
  case ErrorCode::Io: return "io";
  }
  return "unknown";
}

const char *to_string(ReceiverVariant v) { return v == ReceiverVariant::Simple ? "simple" : "advanced"; }
const char *to_string(ProducerMode m) { return m == ProducerMode::Lqr ? "lqr" : "mpc"; }

ReceiverVariant paired_variant(ProducerMode mode) {
  return mode == ProducerMode::Lqr ? ReceiverVariant::Simple : ReceiverVariant::Advanced;
}

ValidatedScenario validate_scenario(const Scenario &raw) {
  const auto &t = raw.towers;
  for (const auto &p : t.positions)
    if (!finite(p))
      throw Error(ErrorCode::DegenerateTowers, "tower positions must be finite");
  if (!in_general_position(t))
    throw Error(ErrorCode::DegenerateTowers, "towers must be distinct and not collinear");
  if (!(t.calibration.array() > 0).all() || !t.calibration.allFinite())
    throw Error(ErrorCode::NonPositiveCalibration, "calibration intensities must be strictly positive");

  if (raw.receiver.gain == 0.0 || !std::isfinite(raw.receiver.gain))
    throw Error(ErrorCode::ZeroReceiverGain, "receiver gain K_r must be finite and nonzero");

  if (!symmetric_positive_definite(raw.producer.Q))
    throw Error(ErrorCode::NonPositiveDefiniteWeight, "Q must be symmetric positive-definite");
  if (!symmetric_positive_definite(raw.producer.R))
    throw Error(ErrorCode::NonPositiveDefiniteWeight, "R must be symmetric positive-definite");

  const bool uses_box =
      raw.receiver.variant == ReceiverVariant::Advanced || raw.producer.mode == ProducerMode::Mpc;
  if (uses_box && !raw.receiver.theta.contains_zero())
    throw Error(ErrorCode::BoxExcludesZero, "theta box must satisfy theta_min < 0 < theta_max");

  if (!(raw.termination_epsilon > 0) || !std::isfinite(raw.termination_epsilon))
    throw Error(ErrorCode::NonPositiveEpsilon, "termination epsilon must be positive");
  if (raw.max_stages < 1)
    throw Error(ErrorCode::InvalidStageLimit, "max_stages must be at least 1");
  if (raw.producer.mode == ProducerMode::Mpc && raw.producer.horizon < 1)
    throw Error(ErrorCode::InvalidHorizon, "MPC horizon must be a positive integer");
  if (raw.receiver.variant != paired_variant(raw.producer.mode))
    throw Error(ErrorCode::ModeVariantMismatch, "lqr requires the simple receiver and mpc the advanced one");

  if (!finite(raw.receiver.goal) || !finite(raw.producer.goal) || !finite(raw.initial_position) ||
      !finite(raw.initial_estimate))
    throw Error(ErrorCode::Parse, "goals and initial conditions must be finite");
  return ValidatedScenario(raw);
}

Scenario default_scenario() {
  Scenario s;
  s.towers.positions = {Point2{-5, -5}, Point2{50, 10}, Point2{20, 60}};
  s.towers.calibration = Vec3<double>::Ones();
  return s;
}

Scenario with_mode(Scenario s, ProducerMode mode) {
  s.producer.mode = mode;
  s.receiver.variant = paired_variant(mode);
  return s;
}

bool operator==(const Scenario &a, const Scenario &b) {
  for (int i = 0; i < 3; ++i)
    if (a.towers.positions[i] != b.towers.positions[i])
      return false;
  return a.towers.calibration == b.towers.calibration && a.receiver.goal == b.receiver.goal &&
         a.receiver.gain == b.receiver.gain && a.receiver.variant == b.receiver.variant &&
         a.receiver.theta.lower == b.receiver.theta.lower && a.receiver.theta.upper == b.receiver.theta.upper &&
         a.producer.goal == b.producer.goal && a.producer.Q == b.producer.Q && a.producer.R == b.producer.R &&
         a.producer.mode == b.producer.mode && a.producer.horizon == b.producer.horizon &&
         a.initial_position == b.initial_position && a.initial_estimate == b.initial_estimate &&
         a.termination_epsilon == b.termination_epsilon && a.max_stages == b.max_stages;
}

} // namespace illusion
