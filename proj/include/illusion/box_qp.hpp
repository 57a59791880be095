#pragma once

#include "illusion/error.hpp"
#include "illusion/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace illusion {

// minimize 0.5 x'Hx + g'x  subject to  lower <= x <= upper
//
// Bounds may be +-infinity (see unbounded()).
template <typename Scalar> struct BoxQp {
  MatX<Scalar> H;
  VecX<Scalar> g;
  VecX<Scalar> lower;
  VecX<Scalar> upper;

  Eigen::Index size() const { return g.size(); }
  Scalar objective(const VecX<Scalar> &x) const { return Scalar(0.5) * x.dot(H * x) + g.dot(x); }
};

template <typename Scalar> struct QpResult {
  VecX<Scalar> x_star;
  Scalar kkt_residual = 0;
  int iterations = 0;
  // Objective of every accepted iterate, starting with the initial point.
  std::vector<Scalar> objective_trace;
};

template <typename Scalar> struct QpOptions {
  Scalar tol = Scalar(1e-8);
  int max_iter = 100'000;
  // Attempt a Newton step on the free variables every this many iterations.
  int polish_interval = 25;
};

namespace detail {

template <typename Scalar> VecX<Scalar> project(const BoxQp<Scalar> &qp, const VecX<Scalar> &x) {
  return x.cwiseMax(qp.lower).cwiseMin(qp.upper);
}

template <typename Scalar>
Scalar projected_gradient_norm(const BoxQp<Scalar> &qp, const VecX<Scalar> &x, const VecX<Scalar> &grad) {
  Scalar worst = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const bool at_lower = x[i] <= qp.lower[i];
    const bool at_upper = x[i] >= qp.upper[i];
    Scalar v;
    if (at_lower && at_upper)
      v = 0;
    else if (at_lower)
      v = std::max(Scalar(0), -grad[i]);
    else if (at_upper)
      v = std::max(Scalar(0), grad[i]);
    else
      v = std::abs(grad[i]);
    worst = std::max(worst, v);
  }
  return worst;
}

// Newton step restricted to the coordinates that are strictly inside the box,
// with the others held at their bounds, then projected back.
template <typename Scalar> VecX<Scalar> polish(const BoxQp<Scalar> &qp, const VecX<Scalar> &x) {
  std::vector<Eigen::Index> free;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] > qp.lower[i] && x[i] < qp.upper[i])
      free.push_back(i);
  if (free.empty())
    return x;
  const auto nf = static_cast<Eigen::Index>(free.size());
  MatX<Scalar> Hff(nf, nf);
  VecX<Scalar> rhs(nf);
  const VecX<Scalar> grad = qp.H * x + qp.g;
  for (Eigen::Index a = 0; a < nf; ++a) {
    rhs[a] = -grad[free[a]];
    for (Eigen::Index b = 0; b < nf; ++b)
      Hff(a, b) = qp.H(free[a], free[b]);
  }
  const VecX<Scalar> step = Hff.llt().solve(rhs);
  VecX<Scalar> out = x;
  for (Eigen::Index a = 0; a < nf; ++a)
    out[free[a]] += step[a];
  return project(qp, out);
}

} // namespace detail

/// Largest violation of the first-order optimality conditions at a feasible x.
template <typename Scalar> Scalar kkt_residual(const BoxQp<Scalar> &qp, const VecX<Scalar> &x) {
  if ((x.array() < qp.lower.array()).any() || (x.array() > qp.upper.array()).any())
    throw Error(ErrorCode::InfeasiblePoint, "kkt_residual requires a feasible point");
  return detail::projected_gradient_norm(qp, x, (qp.H * x + qp.g).eval());
}

/// Accelerated projected gradient (FISTA) with step 1/L, where L is the
/// Gershgorin bound on the largest Hessian eigenvalue. Momentum is reset
/// whenever the accelerated step would increase the objective, so accepted
/// iterates are monotone. Periodic Newton steps on the free set finish the
/// solve once the active set has settled.
template <typename Scalar>
QpResult<Scalar> solve_box_qp(const BoxQp<Scalar> &qp, const QpOptions<Scalar> &opts = {}) {
  const Eigen::Index n = qp.size();
  if (qp.H.rows() != n || qp.H.cols() != n || qp.lower.size() != n || qp.upper.size() != n)
    throw Error(ErrorCode::IllConditioned, "box QP dimensions do not agree");
  if ((qp.lower.array() > qp.upper.array()).any())
    throw Error(ErrorCode::InfeasiblePoint, "box QP has lower > upper");
  if (!(opts.tol > Scalar(0)))
    throw Error(ErrorCode::NotConverged, "box QP tolerance must be positive");
  const Eigen::LLT<MatX<Scalar>> llt(qp.H);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::IllConditioned, "box QP Hessian is not positive definite");

  const Scalar lipschitz = qp.H.cwiseAbs().rowwise().sum().maxCoeff();
  const Scalar step = Scalar(1) / lipschitz;

  QpResult<Scalar> res;
  // Start from the projected origin (finite even with one-sided infinite bounds).
  VecX<Scalar> x = detail::project(qp, VecX<Scalar>::Zero(n).eval());
  VecX<Scalar> grad = qp.H * x + qp.g;
  Scalar fx = Scalar(0.5) * x.dot(grad - qp.g) + qp.g.dot(x);
  res.objective_trace.push_back(fx);

  VecX<Scalar> y = x;
  Scalar t = 1;
  // f(cand) - f(x) = d'(grad(x) + grad(cand)) / 2 with d = cand - x, evaluated
  // from the step rather than as a difference of objective values.
  auto accept = [&](VecX<Scalar> cand) -> bool {
    const VecX<Scalar> cgrad = qp.H * cand + qp.g;
    const Scalar decrease = (cand - x).dot(grad + cgrad) / Scalar(2);
    if (decrease > Scalar(0))
      return false;
    const Scalar fc = Scalar(0.5) * cand.dot(cgrad - qp.g) + qp.g.dot(cand);
    x = std::move(cand);
    grad = cgrad;
    fx = fc;
    return true;
  };

  Scalar kkt = detail::projected_gradient_norm(qp, x, grad);
  int it = 0;
  while (kkt >= opts.tol) {
    if (it >= opts.max_iter)
      throw Error(ErrorCode::NotConverged, "box QP did not reach the KKT tolerance");
    ++it;

    const VecX<Scalar> x_prev = x;
    VecX<Scalar> cand = detail::project(qp, (y - step * (qp.H * y + qp.g)).eval());
    if (!accept(std::move(cand))) {
      // Restart: a plain projected gradient step from x cannot increase f.
      t = 1;
      cand = detail::project(qp, (x - step * grad).eval());
      accept(std::move(cand));
    }
    const Scalar t_next = (Scalar(1) + std::sqrt(Scalar(1) + Scalar(4) * t * t)) / Scalar(2);
    y = x + ((t - Scalar(1)) / t_next) * (x - x_prev);
    t = t_next;

    if (opts.polish_interval > 0 && it % opts.polish_interval == 0) {
      if (accept(detail::polish(qp, x))) {
        y = x;
        t = 1;
      }
    }
    res.objective_trace.push_back(fx);
    kkt = detail::projected_gradient_norm(qp, x, grad);
  }

  // One Newton step on the final active set removes the remaining first-order
  // error; keep it only if it is at least as good.
  const VecX<Scalar> saved = x;
  const VecX<Scalar> saved_grad = grad;
  const Scalar saved_f = fx;
  if (accept(detail::polish(qp, x))) {
    const Scalar polished = detail::projected_gradient_norm(qp, x, grad);
    if (polished <= kkt) {
      kkt = polished;
      res.objective_trace.push_back(fx);
    } else {
      x = saved;
      grad = saved_grad;
      fx = saved_f;
    }
  }

  res.x_star = std::move(x);
  res.kkt_residual = kkt;
  res.iterations = it;
  return res;
}

template <typename Scalar> QpResult<Scalar> solve_box_qp(const BoxQp<Scalar> &qp, Scalar tol, int max_iter) {
  QpOptions<Scalar> opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return solve_box_qp(qp, opts);
}

} // namespace illusion
