#pragma once

// Independent reference computations for the tests: brute-force quadrature, generic
// eigensolvers and matrix functions from Eigen, and values frozen from mpmath.

#include "planequant/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cstdint>
#include <functional>
#include <random>

namespace oracle {

using planequant::MatX;

// mpmath, 30 digits: -(3/4) ln(3/4) - (1/4) ln(1/4)
inline constexpr double kEntropyHalf = 0.562335144618808350288030315224;
// mpmath: ln 2
inline constexpr double kLn2 = 0.693147180559945309417232121458;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Ascending eigenvalues of a symmetric matrix.
inline Eigen::VectorXd eigenvalues(const MatX& m) { return Eigen::SelfAdjointEigenSolver<MatX>(m).eigenvalues(); }

inline MatX expm(const MatX& m) { return m.exp(); }

inline MatX kron(const MatX& a, const MatX& b) { return Eigen::kroneckerProduct(a, b).eval(); }

// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

// Entrywise Simpson integral of a matrix-valued function.
inline MatX simpson_matrix(const std::function<MatX(double)>& f, double a, double b, int n = 4000) {
    const double h = (b - a) / n;
    MatX s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

}  // namespace oracle
