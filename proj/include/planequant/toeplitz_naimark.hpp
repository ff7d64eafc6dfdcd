#pragma once

// L^2(S^1, dphi/pi) realization of multiplication operators, their Toeplitz
// compression onto two-dimensional subspaces, and the Naimark dilation of the
// circle POVM F(Delta) = int_Delta |phi><phi| dphi/pi.

#include "planequant/fourier.hpp"
#include "planequant/plane_states.hpp"

#include <array>
#include <vector>

namespace planequant {

/// Orthonormal basis [1/sqrt 2, cos phi, sin phi, ..., cos K phi, sin K phi].
class TruncatedL2Basis {
public:
    explicit TruncatedL2Basis(int max_k);

    int max_k() const { return max_k_; }
    int size() const { return 2 * max_k_ + 1; }
    FourierFunction function(int i) const;
    // Coefficients of g in this basis. Throws DomainError if deg g > K.
    VecX coordinates(const FourierFunction& g) const;
    // Exact Gram matrix.
    MatX gram() const;

private:
    int max_k_;
};

/// O_1 = {cos phi, sin phi}, O_2 = {-sin phi, cos phi}.
struct SubspaceO {
    int j = 1;

    explicit SubspaceO(int index);
    std::array<FourierFunction, 2> functions() const;
};

// Matrix of M_f on TruncatedL2Basis(K + deg f); columns beyond frequency K are also filled.
MatX mult_operator_matrix(const FourierFunction& f, int max_k);

// Matrix of P_{O_j} M_f P_{O_j} in the O_j basis, from exact Gram integrals.
Mat2 toeplitz_compress(const FourierFunction& f, int j);
// Same compression as V^T M V with M from mult_operator_matrix.
Mat2 toeplitz_compress_truncated(const FourierFunction& f, int j);
// A^{(j)}_f = int f(phi) R(phi) e_j e_j^T R(-phi) dphi/pi, from the circle quantizer.
Mat2 rank_one_quantization(const FourierFunction& f, int j);

// int_a^b g dphi/pi
double arc_integral(const FourierFunction& g, double a, double b);

struct Arc {
    double a = 0.0;
    double b = 0.0;
};

// F([a, b]) from the antiderivatives of cos^2, sin^2 and sin cos.
SymMat2 arc_effect(const Arc& arc);
// P_{O_1} M_{chi[a,b]} P_{O_1} in the O_1 basis.
Mat2 compressed_indicator(const Arc& arc);
// Max-entry difference of the two. Throws DomainError unless 0 <= a < b <= 2 pi.
double naimark_arc_check(double a, double b);

struct AdditivityReport {
    double residual = 0.0;
    double min_eigenvalue = 0.0;
    bool all_psd = true;
};

// Arcs must tile [0, 2 pi) without overlap or gap (tolerance tol), any order.
AdditivityReport povm_additivity_check(const std::vector<Arc>& partition, double tol = kDefaultTol);

struct OrthonormalityReport {
    double r11_squared = 0.0;  // int R11^2, expected 1
    double r12_squared = 0.0;  // int R12^2, expected 1
    double r11_r12 = 0.0;      // expected 0
    double mixed_11_21 = 0.0;  // int (R11 R21 + R21 R11), expected 0
    double mixed_11_22 = 0.0;  // int (R11 R22 + R21 R12), expected 0
    // Largest deviation over every instance of the general row conditions.
    double max_residual = 0.0;
};

OrthonormalityReport unitary_family_orthonormality();

struct MatrixPair {
    SymMat2 lhs;
    SymMat2 rhs;
};

// lhs = A_f for rho_{r, phi0}; rhs = ((1+r)/2) A^{(phi0)}_f + ((1-r)/2) A^{(phi0 + pi/2)}_f.
MatrixPair density_weighted_toeplitz(const FourierFunction& f, double r, double phi0);

}  // namespace planequant
