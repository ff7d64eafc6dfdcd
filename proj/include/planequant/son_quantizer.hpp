#pragma once

// SO(n) states rho_{eta, R} = I/n + R D(eta) R^T and covariant quantization over the
// group, with Haar integrals evaluated on a tensor grid of Euler angles.

#include "planequant/linalg.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace planequant {

/// Euler angles phi^{(k)} = (phi_1^k, ..., phi_k^k), k = 1..n-1.
/// phi_1^k in [0, 2 pi), phi_j^k in [0, pi) for j >= 2.
class EulerAngles {
public:
    explicit EulerAngles(int n);  // all zero
    // stages[k-1] holds phi^{(k)}. Throws DomainError on shape or range violations.
    EulerAngles(int n, std::vector<std::vector<double>> stages);

    int n() const { return n_; }
    const std::vector<std::vector<double>>& stages() const { return stages_; }
    // phi_j^k, 1-based.
    double angle(int k, int j) const { return stages_.at(k - 1).at(j - 1); }
    static int count(int n) { return n * (n - 1) / 2; }

private:
    int n_;
    std::vector<std::vector<double>> stages_;
};

// Rotation by phi in the (x_k, x_{k+1}) plane, k 1-based. Throws DomainError unless 1 <= k <= n-1.
MatX elementary_rotation(int k, double phi, int n);

// R^{(k)} = R_1(phi_1^k) R_2(phi_2^k) ... R_k(phi_k^k)
MatX euler_stage(int k, const std::vector<double>& phi, int n);

// R = R^{(n-1)} ... R^{(2)} R^{(1)}
MatX rotation_from_euler(const EulerAngles& e);

// Throws DomainError unless sum eta = 0 and -1/n <= eta_i <= 1 - 1/n (tolerance tol).
void validate_eta(const VecX& eta, double tol = 1e-12);

// I/n + R D(eta) R^T
MatX density_n(const VecX& eta, const MatX& rotation);
MatX density_n(const VecX& eta, const EulerAngles& e);

/// Nodes per angle: trapezoid on the [0, 2 pi) angles, Gauss-Legendre on the [0, pi) angles.
struct HaarGrid {
    int periodic_nodes = 16;
    int polar_nodes = 16;

    static HaarGrid defaults(int n);
    double node_count(int n) const;
};

struct SonLimits {
    double node_budget = 16777216.0;  // 16^6
    int max_n = 4;

    // Budget from PLANEQUANT_NODE_BUDGET when set.
    static SonLimits from_environment();
};

// Throws DomainError for n < 2 or nonpositive node counts, BudgetExceededError for
// n > max_n or a grid above the node budget.
void check_grid(int n, const HaarGrid& grid, const SonLimits& limits = SonLimits::from_environment());

// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m);

// Calls visit(R, w) for every grid node, w including the Haar density prod sin^{j-1}.
// Node order is fixed.
void for_each_haar_node(int n, const HaarGrid& grid, const std::function<void(const MatX&, double)>& visit,
                        const SonLimits& limits = SonLimits::from_environment());

// Area of S^{i-1} in R^i: 2 pi^{i/2} / Gamma(i/2).
double sphere_area(int i);

struct VolumeReport {
    double quadrature = 0.0;
    double product_from_2 = 0.0;  // prod_{i=2}^{n} Area(S^{i-1})
    double product_from_1 = 0.0;  // prod_{i=1}^{n} Area(S^{i-1})
    // "from_2", "from_1" or "none", whichever agrees with the quadrature to 1e-6 relative.
    std::string matches;
};

VolumeReport haar_volume(int n, const HaarGrid& grid, const SonLimits& limits = SonLimits::from_environment());

// Max-entry deviation of int (dphi/c_n) R rho_{eta, R0} R^T from I, c_n = Vol/n (quadrature volume).
double resolution_identity_n(const VecX& eta, const HaarGrid& grid, const MatX& phi0 = MatX(),
                             const SonLimits& limits = SonLimits::from_environment());

struct OrthonormalityNReport {
    // n >= 3: int (dphi/c_n) R_ij R_i'j' = delta_ii' delta_jj' over all n^4 pairs.
    // n = 2: the row relations int R_ji R_jk = delta_ik and int (R_ji R_lk + R_li R_jk) = 0, j != l;
    // the full product relation fails there because R_11 = R_22.
    double max_residual = 0.0;
    double schur_residual = 0.0;        // full n^4 relation, reported for every n
    double max_density_residual = 0.0;  // int (dphi/c_n) R D(eta) R^T over the random etas
};

OrthonormalityNReport matrix_element_orthonormality_n(int n, const HaarGrid& grid, std::uint64_t seed = 1,
                                                      int random_etas = 10,
                                                      const SonLimits& limits = SonLimits::from_environment());

using GroupFunction = std::function<double(const MatX&)>;

struct QuantizedN {
    MatX a;                   // A_f
    double mean = 0.0;        // int f dphi / Vol
    double integral_c = 0.0;  // int f dphi / c_n
};

// A_f = int (dphi/c_n) f(R) rho_{eta, R R0}, with R R0 formed as a matrix product.
QuantizedN quantize_n(const GroupFunction& f, const VecX& eta, const MatX& phi0, const HaarGrid& grid,
                      const SonLimits& limits = SonLimits::from_environment());

// Max-entry difference of R(beta) A_f R(beta)^T and A_g, g(R) = f(R(beta)^T R).
double covariance_check_n(const GroupFunction& f, const MatX& beta, const VecX& eta, const HaarGrid& grid,
                          const SonLimits& limits = SonLimits::from_environment());

/// Polynomial in the matrix entries: constant + sum coeff * prod R_{ij} (1-based indices).
struct MatrixPolynomial {
    struct Term {
        double coeff = 0.0;
        std::vector<std::pair<int, int>> entries;
    };
    double constant = 0.0;
    std::vector<Term> terms;

    double operator()(const MatX& r) const;
    // Throws DomainError if an index is outside 1..n.
    void validate(int n) const;
};

// Random valid eta of size n, drawn from the given engine state.
VecX random_eta(int n, std::uint64_t seed);

}  // namespace planequant
