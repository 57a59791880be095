#pragma once

#include "illusion/error.hpp"
#include "illusion/types.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace illusion {

// Linear model of the spoofed receiver in the extended state
// (omega_x, omega_y, e_x, e_y), where omega is the true position and
// e = goal - estimate:
//
//     omega_{k+1} = omega_k + K_r e_k
//     e_{k+1}     = e_k - u_k
template <typename Scalar> struct LinearSystem {
  Mat4<Scalar> A;
  Mat42<Scalar> B;
  Scalar receiver_gain;
};

template <typename Scalar> struct ExtendedState {
  Vec2<Scalar> position = Vec2<Scalar>::Zero();
  Vec2<Scalar> error = Vec2<Scalar>::Zero();

  Vec4<Scalar> stacked() const { return (Vec4<Scalar>() << position, error).finished(); }
  static ExtendedState from_stacked(const Vec4<Scalar> &x) { return {x.template head<2>(), x.template tail<2>()}; }
};

template <typename Scalar> struct LqrSolution {
  Mat4<Scalar> P;
  Mat24<Scalar> gain;
  Scalar residual;
};

/// Block form A = [[I, K_r I], [0, I]], B = [[0], [-I]]. No validation of the
/// gain; controllability_rank reports the degenerate K_r = 0 case.
template <typename Scalar> LinearSystem<Scalar> make_system_unchecked(Scalar receiver_gain) {
  LinearSystem<Scalar> sys;
  sys.A.setIdentity();
  sys.A.template topRightCorner<2, 2>() = receiver_gain * Mat2<Scalar>::Identity();
  sys.B.setZero();
  sys.B.template bottomRows<2>() = -Mat2<Scalar>::Identity();
  sys.receiver_gain = receiver_gain;
  return sys;
}

template <typename Scalar> LinearSystem<Scalar> build_system(Scalar receiver_gain) {
  if (receiver_gain == Scalar(0))
    throw Error(ErrorCode::ZeroReceiverGain, "receiver gain K_r must be nonzero");
  return make_system_unchecked(receiver_gain);
}

template <typename Scalar> Eigen::Matrix<Scalar, 4, 8> controllability_matrix(const LinearSystem<Scalar> &sys) {
  Eigen::Matrix<Scalar, 4, 8> co;
  Mat42<Scalar> block = sys.B;
  for (int i = 0; i < 4; ++i) {
    co.template middleCols<2>(2 * i) = block;
    block = sys.A * block;
  }
  return co;
}

/// Rank by Gaussian elimination with full pivoting; pivots at or below 1e-10
/// in magnitude count as zero.
template <typename Scalar> int controllability_rank(const LinearSystem<Scalar> &sys) {
  Eigen::Matrix<Scalar, 4, 8> m = controllability_matrix(sys);
  int rank = 0;
  for (; rank < 4; ++rank) {
    Eigen::Index row, col;
    const Scalar pivot = m.bottomRightCorner(4 - rank, 8 - rank).cwiseAbs().maxCoeff(&row, &col);
    if (!(pivot > Scalar(1e-10)))
      break;
    m.row(rank).swap(m.row(rank + row));
    m.col(rank).swap(m.col(rank + col));
    for (int r = rank + 1; r < 4; ++r)
      m.row(r) -= (m(r, rank) / m(rank, rank)) * m.row(rank);
  }
  return rank;
}

template <typename MatA, typename MatB, typename MatQ, typename MatR, typename MatP>
typename MatP::Scalar dare_residual(const MatA &A, const MatB &B, const MatQ &Q, const MatR &R, const MatP &P) {
  using Scalar = typename MatP::Scalar;
  using PMat = Eigen::Matrix<Scalar, MatP::RowsAtCompileTime, MatP::ColsAtCompileTime>;
  const auto BtP = (B.transpose() * P).eval();
  const auto S = (R + BtP * B).eval();
  const PMat rhs = Q + A.transpose() * (P - BtP.transpose() * S.ldlt().solve(BtP)) * A;
  return (P - rhs).cwiseAbs().maxCoeff();
}

/// Stabilizing solution of P = Q + A'(P - PB(R + B'PB)^-1 B'P)A by fixed-point
/// iteration from P = Q. Stops once successive iterates differ by less than
/// `tol` in max-abs norm.
template <typename Scalar, int N, int M>
Eigen::Matrix<Scalar, N, N> solve_dare(const Eigen::Matrix<Scalar, N, N> &A, const Eigen::Matrix<Scalar, N, M> &B,
                                       const Eigen::Matrix<Scalar, N, N> &Q, const Eigen::Matrix<Scalar, M, M> &R,
                                       Scalar tol = Scalar(1e-12), long max_iter = 1'000'000) {
  using MatN = Eigen::Matrix<Scalar, N, N>;
  using MatM = Eigen::Matrix<Scalar, M, M>;
  MatN P = Q;
  for (long it = 0; it < max_iter; ++it) {
    const Eigen::Matrix<Scalar, M, N> BtP = B.transpose() * P;
    const MatM S = R + BtP * B;
    const Eigen::LDLT<MatM> ldlt(S);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.rcond() < Scalar(1e-14))
      throw Error(ErrorCode::IllConditioned, "R + B'PB is singular or ill-conditioned");
    MatN next = Q + A.transpose() * (P - BtP.transpose() * ldlt.solve(BtP)) * A;
    next = Scalar(0.5) * (next + next.transpose()).eval();
    if (!next.allFinite())
      throw Error(ErrorCode::NotConverged, "Riccati iteration diverged");
    const Scalar change = (next - P).cwiseAbs().maxCoeff();
    P = next;
    if (change < tol)
      return P;
  }
  throw Error(ErrorCode::NotConverged, "Riccati iteration did not converge");
}

/// Infinite-horizon gain K_p = (B'PB + R)^-1 B'PA; the producer applies
/// u = -K_p x.
template <typename Scalar>
LqrSolution<Scalar> lqr_gain(const LinearSystem<Scalar> &sys, const Mat4<Scalar> &Q, const Mat2<Scalar> &R) {
  if (controllability_rank(sys) != 4)
    throw Error(ErrorCode::ZeroReceiverGain, "system is not controllable");
  LqrSolution<Scalar> sol;
  sol.P = solve_dare<Scalar, 4, 2>(sys.A, sys.B, Q, R);
  const Mat24<Scalar> BtP = sys.B.transpose() * sol.P;
  sol.gain = (BtP * sys.B + R).ldlt().solve(BtP * sys.A);
  sol.residual = dare_residual(sys.A, sys.B, Q, R, sol.P);
  return sol;
}

template <typename Scalar> Vec2<Scalar> lqr_policy(const LqrSolution<Scalar> &sol, const ExtendedState<Scalar> &x) {
  return -sol.gain * x.stacked();
}

} // namespace illusion
