#pragma once

#include <Eigen/Core>

#include <limits>

namespace illusion {

template <typename Scalar> using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar> using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar> using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar> using Mat4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar> using Mat42 = Eigen::Matrix<Scalar, 4, 2>;
template <typename Scalar> using Mat24 = Eigen::Matrix<Scalar, 2, 4>;
template <typename Scalar> using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar> using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Point2 = Vec2<double>;

// Unbounded box side for the QP solver and motion boxes.
template <typename Scalar> constexpr Scalar unbounded() { return std::numeric_limits<Scalar>::infinity(); }

} // namespace illusion
