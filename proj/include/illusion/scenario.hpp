#pragma once

#include "illusion/receiver.hpp"
#include "illusion/types.hpp"

#include <cstdint>

namespace illusion {

enum class ReceiverVariant { Simple, Advanced };
enum class ProducerMode { Lqr, Mpc };

struct ReceiverSpec {
  Point2 goal{40, 40};
  double gain = 0.3;
  ReceiverVariant variant = ReceiverVariant::Simple;
  MotionBox<double> theta;
};

struct ProducerSpec {
  Point2 goal{0, 0};
  Mat4<double> Q = Mat4<double>::Identity();
  Mat2<double> R = Mat2<double>::Identity();
  ProducerMode mode = ProducerMode::Lqr;
  int horizon = 10;
};

struct Scenario {
  TowerArray<double> towers;
  ReceiverSpec receiver;
  ProducerSpec producer;
  Point2 initial_position{20, 30};
  Point2 initial_estimate{20, 30};
  double termination_epsilon = 0.005;
  std::int64_t max_stages = 10'000;
};

// A Scenario that passed validate_scenario.
class ValidatedScenario {
public:
  const Scenario &get() const noexcept { return scenario_; }
  const Scenario *operator->() const noexcept { return &scenario_; }

private:
  friend ValidatedScenario validate_scenario(const Scenario &);
  explicit ValidatedScenario(Scenario s) : scenario_(std::move(s)) {}
  Scenario scenario_;
};

/// Throws illusion::Error with the first failing check's code.
ValidatedScenario validate_scenario(const Scenario &raw);

/// Towers at (-5,-5), (50,10), (20,60); receiver goal (40,40) with K_r = 0.3;
/// producer goal at the origin with Q = I, R = I; start at (20,30).
Scenario default_scenario();

/// Sets the producer mode and the receiver variant it is paired with
/// (LQR with the simple receiver, MPC with the advanced one).
Scenario with_mode(Scenario s, ProducerMode mode);

ReceiverVariant paired_variant(ProducerMode mode);

const char *to_string(ReceiverVariant v);
const char *to_string(ProducerMode m);

bool operator==(const Scenario &a, const Scenario &b);

} // namespace illusion
