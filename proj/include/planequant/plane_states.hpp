#pragma once

// Real 2x2 state space: density matrices rho_{r,phi}, the real Pauli/Jordan
// algebra of symmetric matrices, rotations and linear Stokes parameters.

#include "planequant/linalg.hpp"

#include <utility>

namespace planequant {

/// Real symmetric 2x2 matrix [[a, b], [b, d]].
///
/// Also viewed in the Pauli frame as alpha*I + delta*sigma3 + beta*sigma1 with
/// alpha = (a+d)/2, delta = (a-d)/2, beta = b.
struct SymMat2 {
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;

    static SymMat2 from_pauli(double alpha, double delta, double beta) {
        return {alpha + delta, beta, alpha - delta};
    }
    // Symmetric part of m.
    static SymMat2 from_matrix(const Mat2& m) {
        return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)};
    }
    static SymMat2 identity() { return {1.0, 0.0, 1.0}; }
    static SymMat2 zero() { return {}; }

    double alpha() const { return 0.5 * (a + d); }
    double delta() const { return 0.5 * (a - d); }
    double beta() const { return b; }
    double trace() const { return a + d; }
    double det() const { return a * d - b * b; }
    // Distance of the eigenvalues from their mean: sqrt(delta^2 + beta^2).
    double spread() const { return std::hypot(delta(), beta()); }
    // (largest, smallest)
    std::pair<double, double> eigenvalues() const {
        return {alpha() + spread(), alpha() - spread()};
    }

    bool is_effect(double tol = kDefaultTol) const;
    bool is_density(double tol = kDefaultTol) const;

    Mat2 matrix() const {
        Mat2 m;
        m << a, b, b, d;
        return m;
    }

    SymMat2& operator+=(const SymMat2& o) { a += o.a; b += o.b; d += o.d; return *this; }
    SymMat2& operator-=(const SymMat2& o) { a -= o.a; b -= o.b; d -= o.d; return *this; }
    SymMat2& operator*=(double s) { a *= s; b *= s; d *= s; return *this; }
    friend SymMat2 operator+(SymMat2 x, const SymMat2& y) { return x += y; }
    friend SymMat2 operator-(SymMat2 x, const SymMat2& y) { return x -= y; }
    friend SymMat2 operator*(double s, SymMat2 x) { return x *= s; }
    friend SymMat2 operator*(SymMat2 x, double s) { return x *= s; }
};

double max_abs_diff(const SymMat2& x, const SymMat2& y);

/// Plane density matrix in polar form: r in [0, 1], phi reduced to [0, pi).
class PolarState {
public:
    PolarState(double r, double phi);

    double r() const { return r_; }
    double phi() const { return phi_; }
    SymMat2 to_matrix() const;
    // (1 + r)/2 and (1 - r)/2
    double lambda() const { return 0.5 * (1.0 + r_); }

private:
    double r_;
    double phi_;
};

/// Linear Stokes parameters (xi2, the circular component, is identically 0).
struct StokesVector {
    double xi1 = 0.0;
    double xi3 = 0.0;
    double intensity = 1.0;

    double degree_of_polarization() const { return std::hypot(xi1, xi3); }
    // Normalized polarization tensor (1/2)(I + xi1 sigma1 + xi3 sigma3).
    SymMat2 normalized_tensor() const { return {0.5 * (1.0 + xi3), 0.5 * xi1, 0.5 * (1.0 - xi3)}; }
};

/// Pure orientation |phi><phi|.
struct PureState {
    double phi = 0.0;
    SymMat2 projector() const;
};

struct SpectralData {
    double lambda_plus;
    double lambda_minus;
    double phi;  // eigen-orientation of lambda_plus, in [0, pi)
};

SymMat2 sigma1();
SymMat2 sigma3();
// Generator of plane rotations, [[0, -1], [1, 0]].
Mat2 tau2();

// E_phi = R(phi)|0><0|R(-phi)
SymMat2 projector(double phi);

// rho_{r,phi} = I/2 + (r/2)(cos 2phi sigma3 + sin 2phi sigma1). Throws DomainError unless 0 <= r <= 1.
SymMat2 density_from_polar(double r, double phi);

// m = lambda_plus E_phi + lambda_minus E_{phi+pi/2}. phi = 0 when the eigenvalues coincide.
SpectralData spectral_decompose(const SymMat2& m);

// -Tr(rho ln rho) of rho_{r,.}; 0 at r = 1.
double von_neumann_entropy(double r);

PolarState rotate_state(const PolarState& s, double phi);

// sigma_phi = cos phi sigma3 + sin phi sigma1
SymMat2 sigma_phi(double phi);

Mat2 commutator(const Mat2& x, const Mat2& y);

// exp(tau2 * phi), evaluated as a matrix exponential.
Mat2 rotation_exp(double phi);

// (xy + yx)/2, computed on Pauli components.
SymMat2 jordan_product(const SymMat2& x, const SymMat2& y);

// Tr(xy)
double hilbert_inner(const SymMat2& x, const SymMat2& y);

StokesVector stokes_from_density(const PolarState& s);
// Throws DomainError when the degree of polarization exceeds 1 (+tol).
PolarState density_from_stokes(const StokesVector& v, double tol = kDefaultTol);

// |<eta|phi>|^2 = cos^2(phi - eta)
double overlap_probability(double eta, double phi);

}  // namespace planequant
