#pragma once

// Pointer-beam model of a linear polarizer. Operators act on pointer (x) beam with
// the pointer factor first: (a (x) b)_{2i+k, 2j+l} = a_ij b_kl.

#include "planequant/plane_states.hpp"

namespace planequant {

using TensorOp = Mat4;

TensorOp kron(const Mat2& a, const Mat2& b);

// exp(theta tau2 (x) P) = R(theta) (x) P + I (x) (I - P). Throws DomainError unless P is
// a symmetric idempotent (tolerance 1e-10).
TensorOp exp_projector(double theta, const SymMat2& p);

// R(g (1+r)/2) (x) E_phi + R(g (1-r)/2) (x) E_{phi + pi/2}; g is the integrated coupling.
TensorOp evolution_operator(double device_r, double device_phi, double coupling = 1.0);

// Same structure with explicit rotation angles for the two beam projectors.
TensorOp evolution_operator_weights(double theta_parallel, double theta_perp, double device_phi);

struct DeviceSetting {
    double r = 1.0;
    double phi = 0.0;
};

struct MeasurementScenario {
    PolarState pointer{0.0, 0.0};
    PolarState beam{0.0, 0.0};
    DeviceSetting device;
};

struct MeasurementResult {
    double p_parallel = 0.0;
    double p_perp = 0.0;
    Mat4 post_state = Mat4::Zero();
};

// Full 4x4 conjugation of rho^M (x) rho^L and traces against I (x) E_phi, I (x) E_{phi + pi/2}.
MeasurementResult measure(const MeasurementScenario& sc);

// (1 + r0 cos 2(phi - phi0))/2
double malus_parallel(const MeasurementScenario& sc);

// Partial trace over the pointer (result acts on the beam) and over the beam.
Mat2 trace_pointer(const Mat4& m);
Mat2 trace_beam(const Mat4& m);

// tau2 rho tau2^{-1}, returned as a polar state; `residual` is the distance to rho_{s, theta + pi/2}.
struct ConjugationResult {
    PolarState state;
    double residual;
};

ConjugationResult pointer_rotation_conjugation(const PolarState& s);

}  // namespace planequant
