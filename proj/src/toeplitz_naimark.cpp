#include "planequant/toeplitz_naimark.hpp"

#include "planequant/circle_quantizer.hpp"
#include "planequant/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace planequant {

namespace {

// (cos(phi + psi), sin(phi + psi))
std::array<FourierFunction, 2> rotated_frame(double psi) {
    const double c = std::cos(psi), s = std::sin(psi);
    return {FourierFunction(0.0, {{1, c, -s}}), FourierFunction(0.0, {{1, s, c}})};
}

Mat2 gram_compress(const FourierFunction& f, const std::array<FourierFunction, 2>& u) {
    Mat2 m;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) m(i, k) = inner(u[i], product(f, u[k]));
    return m;
}

void check_arc(const Arc& arc) {
    if (!(arc.a >= 0.0 && arc.b <= kTwoPi && arc.a < arc.b)) {
        throw DomainError("arc [" + std::to_string(arc.a) + ", " + std::to_string(arc.b) +
                          "] must satisfy 0 <= a < b <= 2 pi");
    }
}

}  // namespace

TruncatedL2Basis::TruncatedL2Basis(int max_k) : max_k_(max_k) {
    if (max_k < 0) throw DomainError("TruncatedL2Basis: K must be >= 0");
}

FourierFunction TruncatedL2Basis::function(int i) const {
    if (i < 0 || i >= size()) throw DomainError("TruncatedL2Basis: index out of range");
    if (i == 0) return FourierFunction::constant(1.0 / std::numbers::sqrt2);
    const int k = (i + 1) / 2;
    return (i % 2 == 1) ? FourierFunction::cosine(k) : FourierFunction::sine(k);
}

VecX TruncatedL2Basis::coordinates(const FourierFunction& g) const {
    if (g.degree() > max_k_) throw DomainError("TruncatedL2Basis: function degree exceeds K");
    VecX v(size());
    v(0) = std::numbers::sqrt2 * g.a0();
    for (int k = 1; k <= max_k_; ++k) {
        v(2 * k - 1) = g.cos_coeff(k);
        v(2 * k) = g.sin_coeff(k);
    }
    return v;
}

MatX TruncatedL2Basis::gram() const {
    MatX g(size(), size());
    for (int i = 0; i < size(); ++i)
        for (int k = 0; k < size(); ++k) g(i, k) = inner(function(i), function(k));
    return g;
}

SubspaceO::SubspaceO(int index) : j(index) {
    if (index != 1 && index != 2) throw DomainError("SubspaceO: j must be 1 or 2");
}

std::array<FourierFunction, 2> SubspaceO::functions() const {
    if (j == 1) return {FourierFunction::cosine(1), FourierFunction::sine(1)};
    return {FourierFunction::sine(1, -1.0), FourierFunction::cosine(1)};
}

MatX mult_operator_matrix(const FourierFunction& f, int max_k) {
    const TruncatedL2Basis basis(max_k + f.degree());
    const int n = basis.size();
    std::vector<FourierFunction> b;
    b.reserve(n);
    for (int i = 0; i < n; ++i) b.push_back(basis.function(i));
    MatX m(n, n);
    for (int k = 0; k < n; ++k) {
        const FourierFunction fb = product(f, b[k]);
        for (int i = 0; i < n; ++i) m(i, k) = inner(b[i], fb);
    }
    return m;
}

Mat2 toeplitz_compress(const FourierFunction& f, int j) {
    return gram_compress(f, SubspaceO(j).functions());
}

Mat2 toeplitz_compress_truncated(const FourierFunction& f, int j) {
    const MatX m = mult_operator_matrix(f, 1);
    const TruncatedL2Basis basis(1 + f.degree());
    const auto o = SubspaceO(j).functions();
    MatX v(basis.size(), 2);
    v.col(0) = basis.coordinates(o[0]);
    v.col(1) = basis.coordinates(o[1]);
    return v.transpose() * m * v;
}

Mat2 rank_one_quantization(const FourierFunction& f, int j) {
    const SubspaceO o(j);
    const double phi0 = (o.j == 1) ? 0.0 : 0.5 * kPi;
    return quantize(f, QuantizerConfig{1.0, phi0}).matrix();
}

double arc_integral(const FourierFunction& g, double a, double b) {
    auto prim = [&](double x) {
        double v = g.a0() * x;
        for (const auto& h : g.harmonics()) v += (h.c * std::sin(h.k * x) - h.s * std::cos(h.k * x)) / h.k;
        return v;
    };
    return (prim(b) - prim(a)) / kPi;
}

SymMat2 arc_effect(const Arc& arc) {
    check_arc(arc);
    auto cc = [](double x) { return 0.5 * x + 0.25 * std::sin(2.0 * x); };
    auto ss = [](double x) { return 0.5 * x - 0.25 * std::sin(2.0 * x); };
    auto cs = [](double x) { return 0.5 * std::sin(x) * std::sin(x); };
    return {(cc(arc.b) - cc(arc.a)) / kPi, (cs(arc.b) - cs(arc.a)) / kPi, (ss(arc.b) - ss(arc.a)) / kPi};
}

Mat2 compressed_indicator(const Arc& arc) {
    check_arc(arc);
    const auto o = SubspaceO(1).functions();
    Mat2 m;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) m(i, k) = arc_integral(product(o[i], o[k]), arc.a, arc.b);
    return m;
}

double naimark_arc_check(double a, double b) {
    const Arc arc{a, b};
    return max_abs_diff(arc_effect(arc).matrix(), compressed_indicator(arc));
}

AdditivityReport povm_additivity_check(const std::vector<Arc>& partition, double tol) {
    if (partition.empty()) throw DomainError("povm_additivity_check: empty partition");
    std::vector<Arc> arcs = partition;
    for (const auto& arc : arcs) check_arc(arc);
    std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) { return x.a < y.a; });
    if (arcs.front().a > tol) throw DomainError("povm_additivity_check: arcs leave a gap at 0");
    if (arcs.back().b < kTwoPi - tol) throw DomainError("povm_additivity_check: arcs leave a gap at 2 pi");
    for (std::size_t i = 1; i < arcs.size(); ++i) {
        const double jump = arcs[i].a - arcs[i - 1].b;
        if (jump < -tol) throw DomainError("povm_additivity_check: overlapping arcs");
        if (jump > tol) throw DomainError("povm_additivity_check: arcs leave a gap");
    }
    AdditivityReport out;
    SymMat2 total;
    out.min_eigenvalue = 1.0;
    // Sum in the caller's order.
    for (const auto& arc : partition) {
        const SymMat2 e = arc_effect(arc);
        total += e;
        out.min_eigenvalue = std::min(out.min_eigenvalue, e.eigenvalues().second);
    }
    out.all_psd = out.min_eigenvalue >= -tol;
    out.residual = max_abs_diff(total, SymMat2::identity());
    return out;
}

OrthonormalityReport unitary_family_orthonormality() {
    // R(phi) entries as trigonometric series.
    const std::array<std::array<FourierFunction, 2>, 2> rr{{
        {FourierFunction::cosine(1), FourierFunction::sine(1, -1.0)},
        {FourierFunction::sine(1), FourierFunction::cosine(1)},
    }};
    auto integral = [](const FourierFunction& g) { return arc_integral(g, 0.0, kTwoPi); };

    OrthonormalityReport out;
    out.r11_squared = integral(product(rr[0][0], rr[0][0]));
    out.r12_squared = integral(product(rr[0][1], rr[0][1]));
    out.r11_r12 = integral(product(rr[0][0], rr[0][1]));
    out.mixed_11_21 = integral(product(rr[0][0], rr[1][0]) + product(rr[1][0], rr[0][0]));
    out.mixed_11_22 = integral(product(rr[0][0], rr[1][1]) + product(rr[1][0], rr[0][1]));

    double worst = 0.0;
    for (int j = 0; j < 2; ++j) {
        for (int i = 0; i < 2; ++i) {
            for (int k = 0; k < 2; ++k) {
                const double same = integral(product(rr[j][i], rr[j][k]));
                worst = std::max(worst, std::abs(same - (i == k ? 1.0 : 0.0)));
                const int l = 1 - j;
                const double cross = integral(product(rr[j][i], rr[l][k]) + product(rr[l][i], rr[j][k]));
                worst = std::max(worst, std::abs(cross));
            }
        }
    }
    out.max_residual = worst;
    return out;
}

MatrixPair density_weighted_toeplitz(const FourierFunction& f, double r, double phi0) {
    MatrixPair out;
    out.lhs = quantize(f, QuantizerConfig{r, phi0});
    const Mat2 a_par = gram_compress(f, rotated_frame(phi0));
    const Mat2 a_perp = gram_compress(f, rotated_frame(phi0 + 0.5 * kPi));
    out.rhs = SymMat2::from_matrix(0.5 * (1.0 + r) * a_par + 0.5 * (1.0 - r) * a_perp);
    return out;
}

}  // namespace planequant
