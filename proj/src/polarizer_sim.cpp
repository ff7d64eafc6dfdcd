#include "planequant/polarizer_sim.hpp"

#include "planequant/errors.hpp"

#include <algorithm>
#include <string>

namespace planequant {

namespace {

constexpr double kProjectorTol = 1e-10;

}  // namespace

TensorOp kron(const Mat2& a, const Mat2& b) {
    TensorOp m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

TensorOp exp_projector(double theta, const SymMat2& p) {
    const Mat2 pm = p.matrix();
    const double err = max_abs_diff(pm * pm, pm);
    if (err > kProjectorTol) throw DomainError("exp_projector: P is not idempotent (|P^2 - P| = " + std::to_string(err) + ")");
    return kron(rotation(theta), pm) + kron(Mat2::Identity(), Mat2::Identity() - pm);
}

TensorOp evolution_operator(double device_r, double device_phi, double coupling) {
    if (!(device_r >= 0.0 && device_r <= 1.0)) {
        throw DomainError("evolution_operator: r = " + std::to_string(device_r) + " outside [0, 1]");
    }
    return evolution_operator_weights(coupling * 0.5 * (1.0 + device_r), coupling * 0.5 * (1.0 - device_r),
                                      device_phi);
}

TensorOp evolution_operator_weights(double theta_parallel, double theta_perp, double device_phi) {
    return kron(rotation(theta_parallel), projector(device_phi).matrix()) +
           kron(rotation(theta_perp), projector(device_phi + 0.5 * kPi).matrix());
}

MeasurementResult measure(const MeasurementScenario& sc) {
    const TensorOp u = evolution_operator(sc.device.r, sc.device.phi);
    const Mat4 rho = kron(sc.pointer.to_matrix().matrix(), sc.beam.to_matrix().matrix());
    MeasurementResult out;
    out.post_state = u * rho * u.transpose();
    const Mat4 par = kron(Mat2::Identity(), projector(sc.device.phi).matrix());
    const Mat4 perp = kron(Mat2::Identity(), projector(sc.device.phi + 0.5 * kPi).matrix());
    out.p_parallel = (out.post_state * par).trace();
    out.p_perp = (out.post_state * perp).trace();
    return out;
}

double malus_parallel(const MeasurementScenario& sc) {
    return 0.5 * (1.0 + sc.beam.r() * std::cos(2.0 * (sc.device.phi - sc.beam.phi())));
}

Mat2 trace_pointer(const Mat4& m) {
    Mat2 out = Mat2::Zero();
    for (int i = 0; i < 2; ++i) out += m.block<2, 2>(2 * i, 2 * i);
    return out;
}

Mat2 trace_beam(const Mat4& m) {
    Mat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = m.block<2, 2>(2 * i, 2 * j).trace();
    return out;
}

ConjugationResult pointer_rotation_conjugation(const PolarState& s) {
    const Mat2 t = tau2();
    const Mat2 conj = t * s.to_matrix().matrix() * t.inverse();
    const SpectralData sd = spectral_decompose(SymMat2::from_matrix(conj));
    const PolarState out(std::clamp(sd.lambda_plus - sd.lambda_minus, 0.0, 1.0), sd.phi);
    const PolarState expected(s.r(), s.phi() + 0.5 * kPi);
    return {out, max_abs_diff(conj, expected.to_matrix().matrix())};
}

}  // namespace planequant
