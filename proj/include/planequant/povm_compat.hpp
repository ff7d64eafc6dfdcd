#pragma once

// Effects A(alpha, phi, r) = (alpha/2) I + (r/2) sigma_{2 phi}, dichotomic POVMs,
// sequential measurements and joint measurability of two dichotomic POVMs.

#include "planequant/plane_states.hpp"

#include <optional>
#include <string>
#include <vector>

namespace planequant {

struct Effect {
    double alpha = 1.0;
    double phi = 0.0;
    double r = 0.0;

    // r <= alpha <= 2 - r, r >= 0
    bool is_valid(double tol = kDefaultTol) const;
    // Throws DomainError if !is_valid(tol).
    void validate(double tol = kDefaultTol) const;
    // No validation.
    SymMat2 matrix() const;
    static Effect from_matrix(const SymMat2& m);
};

// Validates, then returns the matrix.
SymMat2 effect_matrix(const Effect& e, double tol = kDefaultTol);

/// Doubled-angle plane vector v = r (cos 2phi, sin 2phi).
struct BlochVec {
    double x = 0.0;
    double y = 0.0;

    double norm() const { return std::hypot(x, y); }
    friend BlochVec operator+(BlochVec a, BlochVec b) { return {a.x + b.x, a.y + b.y}; }
    friend BlochVec operator-(BlochVec a, BlochVec b) { return {a.x - b.x, a.y - b.y}; }
    friend BlochVec operator*(double s, BlochVec a) { return {s * a.x, s * a.y}; }
};

BlochVec bloch_vec(const Effect& e);
// (alpha/2) I + (1/2)(v.x sigma3 + v.y sigma1)
SymMat2 effect_from_vec(double alpha, const BlochVec& v);

struct DichotomicPOVM {
    SymMat2 plus;
    SymMat2 minus() const { return SymMat2::identity() - plus; }
};

struct JointPOVM {
    SymMat2 g11;
    SymMat2 g10;
    SymMat2 g01;
    SymMat2 g00;

    SymMat2 sum() const { return g11 + g10 + g01 + g00; }
    double min_eigenvalue() const;
};

struct JointValidation {
    double sum_residual = 0.0;
    double marginal1_residual = 0.0;
    double marginal2_residual = 0.0;
    double min_eigenvalue = 0.0;

    bool ok(double tol) const {
        return sum_residual <= tol && marginal1_residual <= tol && marginal2_residual <= tol &&
               min_eigenvalue >= -tol;
    }
};

JointValidation validate_joint(const JointPOVM& g, const Effect& e1, const Effect& e2);

/// Markov kernel on {+, -}: mu(+, +), mu(+, -); mu(-, .) = 1 - mu(+, .).
struct MarkovKernel2 {
    double mu_pp = 1.0;
    double mu_pm = 0.0;
};

// {mu(+,+) E_phi + mu(+,-) (I - E_phi), complement}. Throws DomainError for entries outside [0, 1].
DichotomicPOVM fuzzify(double phi, const MarkovKernel2& kernel);

// F_+ = E_first E_second E_first
DichotomicPOVM sequential_povm(double first, double second);

struct OutcomeProbabilities {
    double p1 = 0.0;
    double p0 = 0.0;
};

// Throws DomainError unless rho is a density matrix (tolerance tol).
OutcomeProbabilities sequential_probabilities(const SymMat2& rho, double first, double second,
                                              double tol = kDefaultTol);

struct NecessaryCondition {
    bool holds = false;
    double value = 0.0;  // |v1 + v2| + |v1 - v2|
};

NecessaryCondition necessary_condition(const Effect& e1, const Effect& e2);

// Builds {G11, G10, G01, G00} from G11 = A(alpha, v). Throws InfeasibleChoiceError
// naming the first violated condition: "G11", "G10", "G01" or "G00".
JointPOVM joint_from_choice(const Effect& e1, const Effect& e2, double alpha, const BlochVec& v,
                            double tol = kDefaultTol);

enum class Verdict { Compatible, Incompatible, Undetermined };

const char* to_string(Verdict v);

struct AlphaSample {
    double alpha = 0.0;
    // Largest t such that the four constraint disks, shrunk by t, still meet.
    double slack = 0.0;
};

struct CompatibilityResult {
    Verdict verdict = Verdict::Undetermined;
    double necessary_value = 0.0;
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    double max_slack = 0.0;
    double alpha_at_max_slack = 0.0;
    // Set when verdict == Compatible.
    std::optional<double> alpha;
    std::optional<BlochVec> v;
    std::optional<JointPOVM> joint;
    // Grid part of the alpha scan; the certificate for Incompatible.
    std::vector<AlphaSample> scan;
};

struct CompatibilityOptions {
    double tol = kDefaultTol;
    int grid = 256;
    int bisection_iterations = 60;
};

CompatibilityResult compatibility_decide(const Effect& e1, const Effect& e2, const CompatibilityOptions& opt = {});

// Disk geometry used by the decision procedure.
struct Disk {
    BlochVec center;
    double radius = 0.0;
};

// Whether all disks share a point (membership tolerance tol). For more than three disks
// every triple is tested (Helly).
bool disks_intersect(const std::vector<Disk>& disks, double tol = kDefaultTol);
// A common point, searched among centers and pairwise circle intersections.
std::optional<BlochVec> common_point(const std::vector<Disk>& disks, double tol = kDefaultTol);

}  // namespace planequant
