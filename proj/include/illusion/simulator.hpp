#pragma once

#include "illusion/lqr.hpp"
#include "illusion/mpc.hpp"
#include "illusion/scenario.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace illusion {

struct UniverseState {
  Point2 position;
  Vec3<double> intensities;
};

struct StageRecord {
  std::int64_t stage = 0;
  Point2 position;
  IState<double> estimate;
  Vec2<double> error = Vec2<double>::Zero();
  // Actions applied at this stage; zero on the terminal stage.
  Vec2<double> receiver_action = Vec2<double>::Zero();
  Vec2<double> producer_action = Vec2<double>::Zero();
  // Source intensities and measurement that produced `estimate`.
  Vec3<double> intensities = Vec3<double>::Zero();
  Vec3<double> observation = Vec3<double>::Zero();
  bool plausible = false;
  bool illusion = false;
};

enum class TerminationReason { GoalReached, ImplausibleIState, MaxStages };
const char *to_string(TerminationReason r);

struct TrajectoryLog {
  std::vector<StageRecord> records;
  std::optional<std::int64_t> terminated_at;
  TerminationReason reason = TerminationReason::MaxStages;
};

struct Audit {
  bool plausible;
  bool illusion;
};

inline constexpr double kIllusionTolerance = 1e-6;
inline constexpr double kClosedLoopTolerance = 1e-6;

UniverseState step_universe(const UniverseState &state, const Vec2<double> &receiver_action,
                            const Vec3<double> &new_intensities);

/// Plausible iff the estimate is nonempty; an illusion iff plausible and the
/// estimate is farther than `tolerance` from the true position.
Audit audit_stage(const IState<double> &estimate, const Point2 &position, double tolerance = kIllusionTolerance);

/// Extended state seen by the producer: position relative to the producer's
/// goal, and the receiver's estimate error.
ExtendedState<double> extended_state(const Scenario &s, const Point2 &position, const Point2 &estimate);

using ProducerPolicy = std::function<Vec2<double>(const ExtendedState<double> &)>;

/// LQR or MPC producer for the scenario's configured mode.
ProducerPolicy make_producer(const ValidatedScenario &scenario);

MpcParams<double> mpc_params(const Scenario &s);

/// Runs producer -> universe -> receiver stages until the receiver's error
/// norm drops below the termination epsilon, its estimate becomes empty, or
/// max_stages records have been logged.
TrajectoryLog run_closed_loop(const ValidatedScenario &scenario);
TrajectoryLog run_closed_loop(const ValidatedScenario &scenario, const ProducerPolicy &producer);

} // namespace illusion
