#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace planequant {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDefaultTol = 1e-12;

// Largest absolute entry of a - b.
template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Matrix exponential by scaling and squaring of a truncated Taylor series.
// Accurate to a few ulps for the small, well-conditioned generators used here.
MatX expm(const MatX& a);

// Plane rotation R(phi) = [[cos, -sin], [sin, cos]].
inline Mat2 rotation(double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    Mat2 m;
    m << c, -s, s, c;
    return m;
}

// Representative of phi in [0, period).
inline double wrap_angle(double phi, double period) {
    double w = std::fmod(phi, period);
    if (w < 0.0) w += period;
    if (w >= period) w -= period;
    return w;
}

}  // namespace planequant
