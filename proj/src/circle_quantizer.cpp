#include "planequant/circle_quantizer.hpp"

#include "planequant/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace planequant {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_positive_r(double r, const char* what) {
    if (!(r > 0.0)) throw SingularQuantizerError(std::string(what) + ": quantizer with r = 0 is not invertible");
}

}  // namespace

void QuantizerConfig::validate() const {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("QuantizerConfig: r = " + std::to_string(r) + " outside [0, 1]");
}

DoubledFourier mean_and_doubled_fourier(const FourierFunction& f) {
    return {f.a0(), f.cos_coeff(2), f.sin_coeff(2)};
}

DoubledFourier mean_and_doubled_fourier_trapezoid(const FourierFunction& f, int nodes) {
    if (nodes < 1) throw DomainError("trapezoid rule needs at least one node");
    DoubledFourier out;
    const double w = 2.0 / nodes;
    for (int i = 0; i < nodes; ++i) {
        const double phi = kTwoPi * i / nodes;
        const double v = f(phi);
        out.mean += 0.5 * w * v;
        out.cc += w * v * std::cos(2.0 * phi);
        out.cs += w * v * std::sin(2.0 * phi);
    }
    return out;
}

SymMat2 quantize(const FourierFunction& f, const QuantizerConfig& q, const IntegrationRule& rule) {
    q.validate();
    if (rule.kind == IntegrationRule::Kind::Trapezoid) {
        if (rule.nodes < 1) throw DomainError("trapezoid rule needs at least one node");
        SymMat2 acc;
        const double w = 2.0 / rule.nodes;
        for (int i = 0; i < rule.nodes; ++i) {
            const double phi = kTwoPi * i / rule.nodes;
            acc += (w * f(phi)) * density_from_polar(q.r, phi + q.phi0);
        }
        return acc;
    }
    const DoubledFourier d = mean_and_doubled_fourier(f.shifted(q.phi0));
    return SymMat2::from_pauli(d.mean, 0.5 * q.r * d.cc, 0.5 * q.r * d.cs);
}

FourierFunction v3_function(double f1, double f2, double f0) {
    return FourierFunction(f0 / kSqrt2, {{2, f1, f2}});
}

double resolution_of_identity(const QuantizerConfig& q, const IntegrationRule& rule) {
    return max_abs_diff(quantize(FourierFunction::constant(1.0), q, rule), SymMat2::identity());
}

FourierFunction lower_symbol(const SymMat2& a, const QuantizerConfig& q) {
    q.validate();
    const double c = std::cos(2.0 * q.phi0), s = std::sin(2.0 * q.phi0);
    const double de = a.delta(), be = a.beta();
    return FourierFunction(a.alpha(), {{2, q.r * (de * c + be * s), q.r * (be * c - de * s)}});
}

Eigen::Matrix3d symbol_transform_matrix(double r, double s, double theta0, double phi0) {
    QuantizerConfig{r, phi0}.validate();
    QuantizerConfig{s, theta0}.validate();
    const double psi = 2.0 * (theta0 - phi0);
    const double k = 0.5 * r * s;
    Eigen::Matrix3d m;
    m << k * std::cos(psi), k * std::sin(psi), 0.0,
        -k * std::sin(psi), k * std::cos(psi), 0.0,
        0.0, 0.0, 1.0;
    return m;
}

Eigen::Vector3d symmetric_coordinates(const SymMat2& a, double phi0) {
    return {hilbert_inner(sigma_phi(2.0 * phi0), a) / kSqrt2,
            hilbert_inner(sigma_phi(2.0 * phi0 + 0.5 * kPi), a) / kSqrt2,
            hilbert_inner(SymMat2::identity(), a) / kSqrt2};
}

FourierFunction upper_symbol(const SymMat2& a, const QuantizerConfig& q) {
    q.validate();
    require_positive_r(q.r, "upper_symbol");
    const Eigen::Vector3d c = symmetric_coordinates(a, q.phi0);
    const double k = kSqrt2 / q.r;
    return FourierFunction(c(2) / kSqrt2, {{2, k * c(0), k * c(1)}});
}

SuperpositionReport mixed_superposition_check(double s, double theta, double r, double phi0) {
    require_positive_r(r, "mixed_superposition_check");
    const QuantizerConfig q{r, phi0};
    q.validate();
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("mixed_superposition_check: s outside [0, 1]");
    // 1/2 + (s/r) cos 2(phi + phi0 - theta)
    const FourierFunction w = FourierFunction(0.5) + FourierFunction::cosine(2, s / r).shifted(theta - phi0);
    SuperpositionReport out;
    out.residual = max_abs_diff(quantize(w, q), density_from_polar(s, theta));
    out.is_convex = r >= 2.0 * s;
    out.min_weight = 0.5 - s / r;
    return out;
}

double covariance_check(const FourierFunction& f, const QuantizerConfig& q, double theta) {
    const Mat2 rot = rotation(theta);
    const Mat2 lhs = rot * quantize(f, q).matrix() * rot.transpose();
    return max_abs_diff(lhs, quantize(f.shifted(theta), q).matrix());
}

NormPair weighted_norm_identity(double f1, double f2, double f0, const QuantizerConfig& q) {
    q.validate();
    require_positive_r(q.r, "weighted_norm_identity");
    const Eigen::Vector3d a = symmetric_coordinates(quantize(v3_function(f1, f2, f0), q), q.phi0);
    const double g = 2.0 / (q.r * q.r);
    return {f1 * f1 + f2 * f2 + f0 * f0, g * (a(0) * a(0) + a(1) * a(1)) + a(2) * a(2)};
}

double pairing_kernel(const QuantizerConfig& rec, double x, const QuantizerConfig& ana, double xp) {
    return hilbert_inner(density_from_polar(rec.r, x + rec.phi0), density_from_polar(ana.r, xp + ana.phi0));
}

}  // namespace planequant
