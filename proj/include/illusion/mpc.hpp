#pragma once

#include "illusion/box_qp.hpp"
#include "illusion/lqr.hpp"
#include "illusion/receiver.hpp"

#include <vector>

namespace illusion {

template <typename Scalar> struct MpcParams {
  LinearSystem<Scalar> sys;
  Mat4<Scalar> Q = Mat4<Scalar>::Identity();
  Mat2<Scalar> R = Mat2<Scalar>::Identity();
  // Look-ahead N; the program has N + 1 controls u_k .. u_{k+N}.
  int horizon = 10;
  MotionBox<Scalar> bounds;
  QpOptions<Scalar> qp;
};

// Finite-horizon program over z = (u_k, ..., u_{k+N}) with the dynamics
// eliminated. Its objective is 0.5 z'Hz + g'z + constant.
template <typename Scalar> struct CondensedProgram {
  BoxQp<Scalar> qp;
  Scalar constant = 0;

  Scalar objective(const VecX<Scalar> &z) const { return qp.objective(z) + constant; }
};

/// Stacked predictions x_{k+1..k+N+1} = Sx x_k + Su z.
template <typename Scalar> struct Prediction {
  MatX<Scalar> Sx;
  MatX<Scalar> Su;
};

template <typename Scalar> Prediction<Scalar> predict_matrices(const LinearSystem<Scalar> &sys, int horizon) {
  const int steps = horizon + 1;
  Prediction<Scalar> pr;
  pr.Sx.resize(4 * steps, 4);
  pr.Su = MatX<Scalar>::Zero(4 * steps, 2 * steps);
  Mat4<Scalar> power = sys.A;
  // Column block j of row block i holds A^(i-j) B.
  std::vector<Mat42<Scalar>> ApB(steps);
  ApB[0] = sys.B;
  for (int i = 1; i < steps; ++i)
    ApB[i] = sys.A * ApB[i - 1];
  for (int i = 0; i < steps; ++i) {
    pr.Sx.template middleRows<4>(4 * i) = power;
    power = sys.A * power;
    for (int j = 0; j <= i; ++j)
      pr.Su.template block<4, 2>(4 * i, 2 * j) = ApB[i - j];
  }
  return pr;
}

template <typename Scalar>
CondensedProgram<Scalar> condense_copt(const MpcParams<Scalar> &params, const ExtendedState<Scalar> &current) {
  if (params.horizon < 0)
    throw Error(ErrorCode::InvalidHorizon, "MPC horizon must be nonnegative");
  const int steps = params.horizon + 1;
  const auto pr = predict_matrices(params.sys, params.horizon);

  MatX<Scalar> Qbar = MatX<Scalar>::Zero(4 * steps, 4 * steps);
  MatX<Scalar> Rbar = MatX<Scalar>::Zero(2 * steps, 2 * steps);
  for (int i = 0; i < steps; ++i) {
    Qbar.template block<4, 4>(4 * i, 4 * i) = params.Q;
    Rbar.template block<2, 2>(2 * i, 2 * i) = params.R;
  }
  const Vec4<Scalar> x0 = current.stacked();
  const VecX<Scalar> free_response = pr.Sx * x0;
  const MatX<Scalar> QSu = Qbar * pr.Su;

  CondensedProgram<Scalar> out;
  out.qp.H = pr.Su.transpose() * QSu + Rbar;
  out.qp.H = (Scalar(0.5) * (out.qp.H + out.qp.H.transpose())).eval();
  out.qp.g = QSu.transpose() * free_response;
  out.qp.lower = params.bounds.lower.replicate(steps, 1);
  out.qp.upper = params.bounds.upper.replicate(steps, 1);
  out.constant = Scalar(0.5) * free_response.dot(Qbar * free_response);
  return out;
}

/// Stage-by-stage cost of a control sequence, simulated through the linear
/// dynamics rather than the condensed matrices.
template <typename Scalar>
Scalar simulated_copt_cost(const MpcParams<Scalar> &params, const ExtendedState<Scalar> &current,
                           const VecX<Scalar> &z) {
  Vec4<Scalar> x = current.stacked();
  Scalar cost = 0;
  for (Eigen::Index i = 0; i < z.size() / 2; ++i) {
    const Vec2<Scalar> u = z.template segment<2>(2 * i);
    x = params.sys.A * x + params.sys.B * u;
    cost += Scalar(0.5) * (x.dot(params.Q * x) + u.dot(params.R * u));
  }
  return cost;
}

template <typename Scalar>
std::vector<Vec2<Scalar>> solve_copt(const MpcParams<Scalar> &params, const ExtendedState<Scalar> &current) {
  const auto program = condense_copt(params, current);
  const auto res = solve_box_qp(program.qp, params.qp);
  std::vector<Vec2<Scalar>> controls;
  controls.reserve(static_cast<std::size_t>(params.horizon) + 1);
  for (int i = 0; i <= params.horizon; ++i)
    controls.emplace_back(res.x_star.template segment<2>(2 * i));
  return controls;
}

/// Receding horizon: apply only the first control of C-OPT(k, N).
template <typename Scalar> Vec2<Scalar> mpc_policy(const MpcParams<Scalar> &params, const ExtendedState<Scalar> &current) {
  return solve_copt(params, current).front();
}

} // namespace illusion
