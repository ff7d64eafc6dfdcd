#include "planequant/selftest.hpp"

#include "planequant/circle_quantizer.hpp"
#include "planequant/errors.hpp"
#include "planequant/polarizer_sim.hpp"
#include "planequant/povm_compat.hpp"
#include "planequant/son_quantizer.hpp"
#include "planequant/toeplitz_naimark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace planequant {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::string fixed(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

FourierFunction random_fourier(Rng& rng, int degree) {
    std::vector<Harmonic> h;
    for (int k = 1; k <= degree; ++k) h.push_back({k, uniform(rng, -1, 1), uniform(rng, -1, 1)});
    return FourierFunction(uniform(rng, -1, 1), std::move(h));
}

// Track the worst value of a residual.
struct Worst {
    double value = 0.0;
    void add(double x) { value = std::max(value, std::isnan(x) ? HUGE_VAL : x); }
};

CriterionResult circle_identity(Rng& rng) {
    Worst exact, trap;
    for (int i = 0; i < 100; ++i) {
        const QuantizerConfig q{uniform(rng, 0, 1), uniform(rng, 0, kTwoPi)};
        exact.add(resolution_of_identity(q));
        trap.add(resolution_of_identity(q, IntegrationRule::trapezoid(64)));
    }
    return {1, "Resolution of identity on the circle", exact.value <= 1e-12 && trap.value <= 1e-12,
            "exact " + sci(exact.value) + ", trapezoid N=64 " + sci(trap.value) + " (100 configs, bound 1e-12)"};
}

CriterionResult basis_quantization(Rng& rng) {
    Worst e0, e1, e2, com;
    const FourierFunction f0 = FourierFunction::constant(1.0 / std::numbers::sqrt2);
    for (int i = 0; i < 100; ++i) {
        const QuantizerConfig q{uniform(rng, 0, 1), uniform(rng, 0, kTwoPi)};
        e0.add(max_abs_diff(quantize(f0, q), (1.0 / std::numbers::sqrt2) * SymMat2::identity()));
        const SymMat2 a1 = quantize(FourierFunction::cosine(2), q);
        const SymMat2 a2 = quantize(FourierFunction::sine(2), q);
        e1.add(max_abs_diff(a1, (0.5 * q.r) * sigma_phi(2.0 * q.phi0)));
        e2.add(max_abs_diff(a2, (0.5 * q.r) * sigma_phi(2.0 * q.phi0 + 0.5 * kPi)));
        com.add(max_abs_diff(commutator(a1.matrix(), a2.matrix()), (-0.5 * q.r * q.r) * tau2()));
    }
    return {2, "Basis quantization", e0.value == 0.0 && e1.value <= 1e-12 && e2.value <= 1e-12 && com.value <= 1e-12,
            "A_e0 " + sci(e0.value) + " (exact), A_e1 " + sci(e1.value) + ", A_e2 " + sci(e2.value) + ", commutator " +
                sci(com.value)};
}

CriterionResult symbol_round_trips(Rng& rng) {
    Worst round, map, literal;
    for (double r : {0.1, 0.5, 1.0}) {
        for (int i = 0; i < 1000; ++i) {
            const QuantizerConfig q{r, uniform(rng, 0, kTwoPi)};
            const SymMat2 a{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
            round.add(max_abs_diff(quantize(upper_symbol(a, q), q), a));
        }
    }
    for (int i = 0; i < 1000; ++i) {
        const double r = uniform(rng, 0, 1), s = uniform(rng, 0, 1);
        const double phi0 = uniform(rng, 0, kTwoPi), theta0 = uniform(rng, 0, kTwoPi);
        const Eigen::Vector3d f(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
        const FourierFunction low =
            lower_symbol(quantize(v3_function(f(0), f(1), f(2)), {r, phi0}), QuantizerConfig{s, theta0});
        const Eigen::Vector3d got(low.cos_coeff(2), low.sin_coeff(2), std::numbers::sqrt2 * low.a0());
        map.add((got - symbol_transform_matrix(r, s, theta0, phi0) * f).cwiseAbs().maxCoeff());
        // Literal form with factor rs and the transposed rotation, for comparison.
        const double psi = 2.0 * (theta0 - phi0);
        Eigen::Matrix3d printed;
        printed << r * s * std::cos(psi), -r * s * std::sin(psi), 0, r * s * std::sin(psi), r * s * std::cos(psi), 0, 0,
            0, 1;
        literal.add((got - printed * f).cwiseAbs().maxCoeff());
    }
    return {3, "Upper/lower symbol round trips", round.value <= 1e-10 && map.value <= 1e-12,
            "quantize(upper) " + sci(round.value) + " (3000 matrices, bound 1e-10), lower-symbol map vs (rs/2) rotation " +
                sci(map.value) + " (bound 1e-12); literal rs matrix deviates by " + sci(literal.value)};
}

CriterionResult superposition(Rng& rng) {
    Worst res;
    bool flag_ok = true;
    for (int is = 0; is <= 20; ++is) {
        const double s = 0.05 * is;
        for (int ir = 1; ir <= 20; ++ir) {
            const double r = 0.05 * ir;
            const auto rep = mixed_superposition_check(s, uniform(rng, 0, kPi), r, uniform(rng, 0, kTwoPi));
            res.add(rep.residual);
            flag_ok = flag_ok && (rep.is_convex == (r >= 2.0 * s)) && (rep.is_convex == (rep.min_weight >= 0.0));
        }
        const double r_edge = 2.0 * s;
        if (r_edge > 0.0 && r_edge <= 1.0) {
            const auto at = mixed_superposition_check(s, 0.3, r_edge, 0.1);
            const auto below = mixed_superposition_check(s, 0.3, std::nextafter(r_edge, 0.0), 0.1);
            res.add(at.residual);
            res.add(below.residual);
            flag_ok = flag_ok && at.is_convex && !below.is_convex;
        }
    }
    return {4, "Mixed-state superposition", res.value <= 1e-12 && flag_ok,
            "residual " + sci(res.value) + " on a 21x20 (s, r) grid; convexity flag flips at r = 2s: " +
                (flag_ok ? "yes" : "no")};
}

CriterionResult toeplitz_naimark(Rng& rng) {
    Worst toe, naim, add;
    bool psd = true;
    for (int deg = 0; deg <= 6; ++deg) {
        for (int t = 0; t < 10; ++t) {
            const FourierFunction f = random_fourier(rng, deg);
            for (int j : {1, 2}) {
                const Mat2 direct = rank_one_quantization(f, j);
                toe.add(max_abs_diff(toeplitz_compress(f, j), direct));
                toe.add(max_abs_diff(toeplitz_compress_truncated(f, j), direct));
            }
        }
    }
    for (int i = 0; i < 50; ++i) {
        double a = uniform(rng, 0, kTwoPi), b = uniform(rng, 0, kTwoPi);
        if (a > b) std::swap(a, b);
        naim.add(naimark_arc_check(a, b));
    }
    for (int i = 0; i < 20; ++i) {
        std::vector<double> cuts{0.0, kTwoPi};
        for (int c = 0; c < 7; ++c) cuts.push_back(uniform(rng, 0, kTwoPi));
        std::sort(cuts.begin(), cuts.end());
        std::vector<Arc> arcs;
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) arcs.push_back({cuts[c], cuts[c + 1]});
        std::shuffle(arcs.begin(), arcs.end(), rng);
        const auto rep = povm_additivity_check(arcs);
        add.add(rep.residual);
        psd = psd && rep.all_psd;
    }
    return {5, "Toeplitz identity and Naimark dilation",
            toe.value <= 1e-12 && naim.value <= 1e-12 && add.value <= 1e-12 && psd,
            "Toeplitz (deg <= 6, j = 1, 2) " + sci(toe.value) + ", 50 arcs " + sci(naim.value) +
                ", 8-arc partitions " + sci(add.value) + (psd ? ", all parts PSD" : ", non-PSD part")};
}

CriterionResult malus(Rng& rng) {
    Worst prob, pure, orth;
    for (int i = 0; i < 1000; ++i) {
        const MeasurementScenario sc{PolarState(uniform(rng, 0, 1), uniform(rng, 0, kPi)),
                                     PolarState(uniform(rng, 0, 1), uniform(rng, 0, kPi)),
                                     DeviceSetting{uniform(rng, 0, 1), uniform(rng, 0, kTwoPi)}};
        const MeasurementResult m = measure(sc);
        const double closed = malus_parallel(sc);
        prob.add(std::abs(m.p_parallel - closed));
        prob.add(std::abs(m.p_perp - (1.0 - closed)));
        const TensorOp u = evolution_operator(sc.device.r, sc.device.phi);
        orth.add(max_abs_diff(u * u.transpose(), Mat4::Identity()));
        orth.add(max_abs_diff(u.transpose() * u, Mat4::Identity()));

        const MeasurementScenario pure_sc{sc.pointer, PolarState(1.0, sc.beam.phi()), sc.device};
        const MeasurementResult mp = measure(pure_sc);
        const double c = std::cos(sc.device.phi - sc.beam.phi());
        const double s = std::sin(sc.device.phi - sc.beam.phi());
        pure.add(std::abs(mp.p_parallel - c * c));
        pure.add(std::abs(mp.p_perp - s * s));
    }
    return {6, "Malus law", prob.value <= 1e-12 && pure.value <= 1e-12 && orth.value <= 1e-12,
            "matrix path vs closed form " + sci(prob.value) + ", r0 = 1 vs cos^2/sin^2 " + sci(pure.value) +
                ", U orthogonality " + sci(orth.value) + " (1000 scenarios)"};
}

CriterionResult sequential(Rng&) {
    const double tol = 1e-15;
    const DichotomicPOVM f = sequential_povm(0.5 * kPi, 0.25 * kPi);
    const SymMat2 half = 0.5 * projector(0.5 * kPi);
    const double d1 = std::max(max_abs_diff(f.plus, half), max_abs_diff(f.minus(), projector(0.0) + half));
    const DichotomicPOVM g = sequential_povm(0.25 * kPi, 0.5 * kPi);
    const SymMat2 half_q = 0.5 * projector(0.25 * kPi);
    const double d2 = std::max(max_abs_diff(g.plus, half_q), max_abs_diff(g.minus(), SymMat2::identity() - half_q));
    const SymMat2 rho = projector(0.5 * kPi);
    const double p_a = sequential_probabilities(rho, 0.5 * kPi, 0.25 * kPi).p1;
    const double p_b = sequential_probabilities(rho, 0.25 * kPi, 0.5 * kPi).p1;
    const bool ok = d1 <= tol && d2 <= tol && std::abs(p_a - 0.5) <= tol && std::abs(p_b - 0.25) <= tol;
    return {7, "Sequential POVM", ok,
            "(pi/2, pi/4) " + sci(d1) + ", reversed " + sci(d2) + ", p1 = " + fixed(p_a) + " vs " + fixed(p_b) +
                " (bound 1e-15)"};
}

CriterionResult compatibility(Rng& rng) {
    std::ostringstream detail;
    // (i)
    const Effect a{0.5, 0.5 * kPi, 0.5}, b{0.5, 0.25 * kPi, 0.5};
    const CompatibilityResult ci = compatibility_decide(a, b);
    const bool nec_ok = std::abs(ci.necessary_value - std::numbers::sqrt2) <= 1e-9;
    const bool i_ok = ci.verdict == Verdict::Incompatible && nec_ok;
    detail << "(i) verdict " << to_string(ci.verdict) << ", necessary_value " << fixed(ci.necessary_value);
    if (ci.joint) {
        detail << " [witness alpha = " << sci(*ci.alpha) << ", |v| = " << sci(ci.v->norm())
               << ", min eig " << sci(ci.joint->min_eigenvalue()) << "]";
    }

    // (ii)
    int iff_fail = 0, compatible = 0;
    Worst construct;
    for (int i = 0; i < 500; ++i) {
        const Effect e1{1.0, uniform(rng, 0, kPi), uniform(rng, 0, 1)};
        const Effect e2{1.0, uniform(rng, 0, kPi), uniform(rng, 0, 1)};
        const bool holds = necessary_condition(e1, e2).holds;
        const CompatibilityResult r = compatibility_decide(e1, e2);
        const bool want = holds ? r.verdict == Verdict::Compatible : r.verdict == Verdict::Incompatible;
        if (!want) ++iff_fail;
        if (holds) {
            ++compatible;
            const BlochVec v1 = bloch_vec(e1), v2 = bloch_vec(e2);
            try {
                const JointPOVM g = joint_from_choice(e1, e2, 1.0 - 0.5 * (v1 - v2).norm(), 0.5 * (v1 + v2), 1e-10);
                const JointValidation jv = validate_joint(g, e1, e2);
                construct.add(std::max({jv.sum_residual, jv.marginal1_residual, jv.marginal2_residual,
                                        std::max(0.0, -jv.min_eigenvalue)}));
            } catch (const InfeasibleChoiceError&) {
                construct.add(HUGE_VAL);
            }
        }
    }
    const bool ii_ok = iff_fail == 0 && construct.value <= 1e-10;
    detail << "; (ii) " << iff_fail << " verdict/necessary mismatches in 500 unbiased pairs (" << compatible
           << " satisfy it), constructive joint " << sci(construct.value);

    // (iii)
    int comp = 0, bad = 0;
    for (int i = 0; i < 500; ++i) {
        Effect e[2];
        for (auto& x : e) {
            x.alpha = uniform(rng, 0, 2);
            x.r = uniform(rng, 0, std::min(x.alpha, 2.0 - x.alpha));
            x.phi = uniform(rng, 0, kPi);
        }
        const CompatibilityResult r = compatibility_decide(e[0], e[1]);
        if (r.verdict != Verdict::Compatible) continue;
        ++comp;
        if (!r.joint || !validate_joint(*r.joint, e[0], e[1]).ok(1e-10)) ++bad;
    }
    const bool iii_ok = bad == 0;
    detail << "; (iii) " << comp << " Compatible of 500 biased pairs, " << bad << " failed validation";
    return {8, "Compatibility decision", i_ok && ii_ok && iii_ok, detail.str()};
}

CriterionResult son_suite(Rng& rng) {
    const SonLimits limits;  // pinned, independent of the environment
    std::ostringstream detail;
    bool ok = true;

    const HaarGrid g2{16, 16};
    const VolumeReport v2 = haar_volume(2, g2, limits);
    const double id2 = resolution_identity_n(random_eta(2, rng()), g2, MatX(), limits);
    ok = ok && std::abs(v2.quadrature - kTwoPi) <= 1e-10 && id2 <= 1e-12;
    detail << "n=2 vol err " << sci(std::abs(v2.quadrature - kTwoPi)) << ", identity " << sci(id2);

    const auto t3 = std::chrono::steady_clock::now();
    const HaarGrid g3{16, 16};
    const VolumeReport v3 = haar_volume(3, g3, limits);
    VecX eta3(3);
    eta3 << 0.2, 0.0, -0.2;
    const double id3 = std::max(resolution_identity_n(eta3, g3, MatX(), limits),
                                resolution_identity_n(random_eta(3, rng()), g3, MatX(), limits));
    const OrthonormalityNReport o3 = matrix_element_orthonormality_n(3, g3, rng(), 10, limits);
    const double sec3 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t3).count();
    const double ref3 = 8.0 * kPi * kPi;
    ok = ok && std::abs(v3.quadrature - ref3) <= 1e-6 && id3 <= 1e-8 && o3.max_residual <= 1e-8 &&
         o3.max_density_residual <= 1e-8;
    detail << "; n=3 vol err " << sci(std::abs(v3.quadrature - ref3)) << ", identity " << sci(id3) << ", orthonormality "
           << sci(std::max(o3.max_residual, o3.max_density_residual)) << " (" << fixed(sec3) << " s)";

    const auto t4 = std::chrono::steady_clock::now();
    const HaarGrid g4{8, 8};
    // The residual is linear in eta, so a pure state (a vertex of the eta domain) is the worst case.
    VecX eta4(4);
    eta4 << 0.75, -0.25, -0.25, -0.25;
    const double id4 = std::max(resolution_identity_n(eta4, g4, MatX(), limits),
                                resolution_identity_n(random_eta(4, rng()), g4, MatX(), limits));
    const double sec4 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t4).count();
    ok = ok && id4 <= 1e-6;
    detail << "; n=4 identity " << sci(id4) << " (" << fixed(sec4) << " s)";

    // Constant function and covariance, at the grid tolerance of each size.
    const GroupFunction one = [](const MatX&) { return 1.0; };
    const double q2 = max_abs_diff(quantize_n(one, random_eta(2, rng()), MatX(), g2, limits).a, MatX::Identity(2, 2));
    const double q3 = max_abs_diff(quantize_n(one, eta3, MatX(), g3, limits).a, MatX::Identity(3, 3));
    const double q4 = max_abs_diff(quantize_n(one, eta4, MatX(), g4, limits).a, MatX::Identity(4, 4));
    ok = ok && q2 <= 1e-12 && q3 <= 1e-8 && q4 <= 1e-6;
    detail << "; quantize_n(1) " << sci(q2) << "/" << sci(q3) << "/" << sci(q4);

    MatrixPolynomial f;
    f.constant = 0.3;
    f.terms = {{1.0, {{1, 1}, {2, 2}}}, {-0.7, {{1, 3}, {3, 2}}}, {0.4, {{2, 1}}}};
    EulerAngles beta(3, {{uniform(rng, 0, kTwoPi)}, {uniform(rng, 0, kTwoPi), uniform(rng, 0, kPi)}});
    const double cov3 = covariance_check_n(f, rotation_from_euler(beta), eta3, g3, limits);
    const GroupFunction f2 = [](const MatX& r) { return r(0, 0) * r(0, 0) - r(1, 0) * r(1, 0); };
    const double cov2 = covariance_check_n(f2, rotation(uniform(rng, 0, kTwoPi)), random_eta(2, rng()), g2, limits);
    ok = ok && cov3 <= 1e-8 && cov2 <= 1e-12;
    detail << "; covariance n=2 " << sci(cov2) << ", n=3 " << sci(cov3);
    return {9, "SO(n) suite", ok, detail.str()};
}

CriterionResult entropy(Rng&) {
    const double s0 = von_neumann_entropy(0.0);
    const double s1 = von_neumann_entropy(1.0);
    const int n = 1000;
    double worst = -HUGE_VAL;
    for (int i = 1; i + 1 < n; ++i) {
        const double h = 1.0 / (n - 1);
        const double d2 = von_neumann_entropy((i - 1) * h) - 2.0 * von_neumann_entropy(i * h) +
                          von_neumann_entropy(std::min(1.0, (i + 1) * h));
        worst = std::max(worst, d2);
    }
    const bool ok = std::abs(s0 - std::numbers::ln2) <= 1e-14 && s1 == 0.0 && worst <= 0.0;
    return {10, "Entropy curve", ok,
            "|S(0) - ln 2| = " + sci(std::abs(s0 - std::numbers::ln2)) + ", S(1) = " + sci(s1) +
                ", max second difference " + sci(worst)};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
    using Check = CriterionResult (*)(Rng&);
    const Check checks[] = {circle_identity, basis_quantization, symbol_round_trips, superposition,
                            toeplitz_naimark, malus, sequential, compatibility, son_suite, entropy};
    std::vector<CriterionResult> out;
    int id = 0;
    for (Check c : checks) {
        ++id;
        Rng rng(opt.seed + static_cast<std::uint64_t>(id));
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = c(rng);
        } catch (const std::exception& e) {
            r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_line(const CriterionResult& r) {
    char head[96];
    std::snprintf(head, sizeof head, "%s %2d  %s", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str());
    return std::string(head) + "  (" + r.detail + ")";
}

}  // namespace planequant
