#pragma once

// Integral quantization on the circle with the family rho_{r, phi + phi0}:
//   A_f = int_0^{2 pi} f(phi) rho_{r, phi + phi0} dphi/pi.

#include "planequant/fourier.hpp"
#include "planequant/plane_states.hpp"

#include <Eigen/Dense>

namespace planequant {

struct QuantizerConfig {
    double r = 1.0;
    double phi0 = 0.0;

    // Throws DomainError unless 0 <= r <= 1.
    void validate() const;
};

// Mean <f> = int f dphi/(2 pi) and the doubled-frequency coefficients
// C_c = int f cos 2phi dphi/pi, C_s = int f sin 2phi dphi/pi.
struct DoubledFourier {
    double mean = 0.0;
    double cc = 0.0;
    double cs = 0.0;
};

DoubledFourier mean_and_doubled_fourier(const FourierFunction& f);
// Same quantities by an N-point trapezoid rule (exact when N > degree + 2).
DoubledFourier mean_and_doubled_fourier_trapezoid(const FourierFunction& f, int nodes);

struct IntegrationRule {
    enum class Kind { Exact, Trapezoid };
    Kind kind = Kind::Exact;
    int nodes = 64;

    static IntegrationRule exact() { return {}; }
    static IntegrationRule trapezoid(int n) { return {Kind::Trapezoid, n}; }
};

SymMat2 quantize(const FourierFunction& f, const QuantizerConfig& q, const IntegrationRule& rule = {});

// Basis of V3: e0 = 1/sqrt 2, e1 = cos 2phi, e2 = sin 2phi.
FourierFunction v3_function(double f1, double f2, double f0);

// Max-entry deviation of int rho_{r, phi + phi0} dphi/pi from I.
double resolution_of_identity(const QuantizerConfig& q, const IntegrationRule& rule = {});

// phi -> Tr(A rho_{r, phi + phi0})
FourierFunction lower_symbol(const SymMat2& a, const QuantizerConfig& q);

// Linear map (f1, f2, f0) -> lower symbol, with respect to (s, theta0), of the (r, phi0)-quantized f.
Eigen::Matrix3d symbol_transform_matrix(double r, double s, double theta0, double phi0);

// The V3 function whose quantization is A. Throws SingularQuantizerError for r = 0.
FourierFunction upper_symbol(const SymMat2& a, const QuantizerConfig& q);

// Coordinates (a1, a2, a0) of A in the orthonormal basis
// sigma_{2 phi0}/sqrt 2, sigma_{2 phi0 + pi/2}/sqrt 2, I/sqrt 2.
Eigen::Vector3d symmetric_coordinates(const SymMat2& a, double phi0);

struct SuperpositionReport {
    double residual = 0.0;
    bool is_convex = false;
    // Minimum of the weight 1/2 + (s/r) cos 2(...) over the circle.
    double min_weight = 0.0;
};

// rho_{s, theta} as the (r, phi0)-quantization of 1/2 + (s/r) cos 2(phi + phi0 - theta).
SuperpositionReport mixed_superposition_check(double s, double theta, double r, double phi0);

// Max-entry deviation between R(theta) A_f R(-theta) and A_{R_theta f}.
double covariance_check(const FourierFunction& f, const QuantizerConfig& q, double theta);

struct NormPair {
    double lhs = 0.0;
    double rhs = 0.0;
};

// lhs = f1^2 + f2^2 + f0^2, rhs = <A_f | Delta_r A_f> with Delta_r = diag(2/r^2, 2/r^2, 1).
NormPair weighted_norm_identity(double f1, double f2, double f0, const QuantizerConfig& q);

// tr(rho_r(x) rho_a(x')) for reconstruction family `rec` and analysis family `ana`.
double pairing_kernel(const QuantizerConfig& rec, double x, const QuantizerConfig& ana, double xp);

}  // namespace planequant
