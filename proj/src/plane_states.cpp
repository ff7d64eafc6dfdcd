#include "planequant/plane_states.hpp"

#include "planequant/errors.hpp"

#include <algorithm>
#include <string>

namespace planequant {

namespace {

void check_unit_interval(double r, const char* what) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError(std::string(what) + ": r = " + std::to_string(r) + " outside [0, 1]");
    }
}

double neg_x_log_x(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

}  // namespace

bool SymMat2::is_effect(double tol) const {
    const auto [hi, lo] = eigenvalues();
    return lo >= -tol && hi <= 1.0 + tol;
}

bool SymMat2::is_density(double tol) const {
    return eigenvalues().second >= -tol && std::abs(trace() - 1.0) <= tol;
}

double max_abs_diff(const SymMat2& x, const SymMat2& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.d - y.d)});
}

PolarState::PolarState(double r, double phi) : r_(r), phi_(wrap_angle(phi, kPi)) {
    check_unit_interval(r, "PolarState");
}

SymMat2 PolarState::to_matrix() const { return density_from_polar(r_, phi_); }

SymMat2 PureState::projector() const { return planequant::projector(phi); }

SymMat2 sigma1() { return {0.0, 1.0, 0.0}; }
SymMat2 sigma3() { return {1.0, 0.0, -1.0}; }

Mat2 tau2() {
    Mat2 m;
    m << 0.0, -1.0, 1.0, 0.0;
    return m;
}

SymMat2 projector(double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    return {c * c, c * s, s * s};
}

SymMat2 density_from_polar(double r, double phi) {
    check_unit_interval(r, "density_from_polar");
    const double half_r = 0.5 * r;
    return SymMat2::from_pauli(0.5, half_r * std::cos(2.0 * phi), half_r * std::sin(2.0 * phi));
}

SpectralData spectral_decompose(const SymMat2& m) {
    const auto [hi, lo] = m.eigenvalues();
    double phi = 0.0;
    if (m.spread() > 0.0) phi = wrap_angle(0.5 * std::atan2(m.beta(), m.delta()), kPi);
    return {hi, lo, phi};
}

double von_neumann_entropy(double r) {
    check_unit_interval(r, "von_neumann_entropy");
    return neg_x_log_x(0.5 * (1.0 + r)) + neg_x_log_x(0.5 * (1.0 - r));
}

PolarState rotate_state(const PolarState& s, double phi) { return {s.r(), s.phi() + phi}; }

SymMat2 sigma_phi(double phi) { return SymMat2::from_pauli(0.0, std::cos(phi), std::sin(phi)); }

Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y - y * x; }

Mat2 rotation_exp(double phi) { return expm(tau2() * phi); }

SymMat2 jordan_product(const SymMat2& x, const SymMat2& y) {
    const double al = x.alpha(), de = x.delta(), be = x.beta();
    const double al2 = y.alpha(), de2 = y.delta(), be2 = y.beta();
    return SymMat2::from_pauli(al * al2 + de * de2 + be * be2, al * de2 + al2 * de, al * be2 + al2 * be);
}

double hilbert_inner(const SymMat2& x, const SymMat2& y) { return x.a * y.a + 2.0 * x.b * y.b + x.d * y.d; }

StokesVector stokes_from_density(const PolarState& s) {
    return {s.r() * std::sin(2.0 * s.phi()), s.r() * std::cos(2.0 * s.phi()), 1.0};
}

PolarState density_from_stokes(const StokesVector& v, double tol) {
    const double p = v.degree_of_polarization();
    if (p > 1.0 + tol) {
        throw DomainError("density_from_stokes: degree of polarization " + std::to_string(p) + " > 1");
    }
    return {std::min(p, 1.0), 0.5 * std::atan2(v.xi1, v.xi3)};
}

double overlap_probability(double eta, double phi) {
    const double c = std::cos(phi - eta);
    return c * c;
}

}  // namespace planequant
