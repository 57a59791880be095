#include "illusion/simulator.hpp"

#include <sstream>

namespace illusion {

const char *to_string(TerminationReason r) {
  switch (r) {
  case TerminationReason::GoalReached: return "goal-reached";
  case TerminationReason::ImplausibleIState: return "implausible-istate";
  case TerminationReason::MaxStages: return "max-stages";
  }
  return "unknown";
}

UniverseState step_universe(const UniverseState &state, const Vec2<double> &receiver_action,
                            const Vec3<double> &new_intensities) {
  if (!(new_intensities.array() > 0).all())
    throw Error(ErrorCode::NonPositiveIntensity, "tower intensities must stay strictly positive");
  return {state.position + receiver_action, new_intensities};
}

Audit audit_stage(const IState<double> &estimate, const Point2 &position, double tolerance) {
  if (!estimate)
    return {false, false};
  return {true, (*estimate - position).norm() > tolerance};
}

ExtendedState<double> extended_state(const Scenario &s, const Point2 &position, const Point2 &estimate) {
  return {position - s.producer.goal, s.receiver.goal - estimate};
}

MpcParams<double> mpc_params(const Scenario &s) {
  MpcParams<double> p;
  p.sys = build_system(s.receiver.gain);
  p.Q = s.producer.Q;
  p.R = s.producer.R;
  p.horizon = s.producer.horizon;
  p.bounds = s.receiver.theta;
  return p;
}

ProducerPolicy make_producer(const ValidatedScenario &scenario) {
  const Scenario &s = scenario.get();
  if (s.producer.mode == ProducerMode::Lqr) {
    const auto sol = lqr_gain(build_system(s.receiver.gain), s.producer.Q, s.producer.R);
    return [sol](const ExtendedState<double> &x) { return lqr_policy(sol, x); };
  }
  return [params = mpc_params(s)](const ExtendedState<double> &x) { return mpc_policy(params, x); };
}

TrajectoryLog run_closed_loop(const ValidatedScenario &scenario) {
  return run_closed_loop(scenario, make_producer(scenario));
}

TrajectoryLog run_closed_loop(const ValidatedScenario &scenario, const ProducerPolicy &producer) {
  const Scenario &s = scenario.get();
  const auto &towers = s.towers;

  auto itf = [&](const IState<double> &prev, const Observation<double> &obs) {
    return s.receiver.variant == ReceiverVariant::Simple ? itf_simple(prev, obs, towers)
                                                         : itf_advanced(prev, obs, towers, s.receiver.theta);
  };

  UniverseState universe{s.initial_position, synthesize_intensities(towers, s.initial_position, s.initial_estimate)};
  IState<double> estimate = s.initial_estimate;
  Observation<double> obs = measure_intensities(towers, universe.position, universe.intensities);

  TrajectoryLog log;
  for (std::int64_t stage = 1;; ++stage) {
    StageRecord rec;
    rec.stage = stage;
    rec.position = universe.position;
    rec.estimate = estimate;
    rec.intensities = universe.intensities;
    rec.observation = obs.intensity;
    const Audit audit = audit_stage(estimate, universe.position);
    rec.plausible = audit.plausible;
    rec.illusion = audit.illusion;

    if (!estimate) {
      log.records.push_back(rec);
      log.terminated_at = stage;
      log.reason = TerminationReason::ImplausibleIState;
      return log;
    }
    rec.error = s.receiver.goal - *estimate;
    if (rec.error.norm() < s.termination_epsilon) {
      log.records.push_back(rec);
      log.terminated_at = stage;
      log.reason = TerminationReason::GoalReached;
      return log;
    }
    if (stage >= s.max_stages) {
      log.records.push_back(rec);
      log.reason = TerminationReason::MaxStages;
      return log;
    }

    rec.producer_action = producer(extended_state(s, universe.position, *estimate));
    rec.receiver_action = receiver_policy(estimate, s.receiver.goal, s.receiver.gain);

    // The producer knows the receiver policy, so it can target the position
    // the receiver is about to move to.
    const Point2 next_position = universe.position + rec.receiver_action;
    const Point2 intended = *estimate + rec.producer_action;
    const Vec3<double> intensities = synthesize_intensities(towers, next_position, intended);
    log.records.push_back(rec);

    universe = step_universe(universe, rec.receiver_action, intensities);
    obs = measure_intensities(towers, universe.position, universe.intensities);
    estimate = itf(estimate, obs);

    if (estimate && (*estimate - intended).norm() > kClosedLoopTolerance) {
      std::ostringstream msg;
      msg << "stage " << stage + 1 << ": receiver estimate deviates from the intended estimate by "
          << (*estimate - intended).norm();
      throw Error(ErrorCode::ClosedLoopMismatch, msg.str());
    }
  }
}

} // namespace illusion
