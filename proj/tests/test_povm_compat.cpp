#include "oracles.hpp"

#include "planequant/errors.hpp"
#include "planequant/povm_compat.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace planequant;

namespace {

Effect random_effect(oracle::Rng& rng) {
    Effect e;
    e.alpha = rng.uniform(0, 2);
    e.r = rng.uniform(0, std::min(e.alpha, 2.0 - e.alpha));
    e.phi = rng.uniform(0, kPi);
    return e;
}

double min_eig(const SymMat2& m) { return oracle::eigenvalues(m.matrix())(0); }

// Brute-force joint measurability: scan alpha and v on a fine grid, report the best
// (largest) smallest eigenvalue over the four candidate parts.
double brute_best_min_eig(const Effect& e1, const Effect& e2, int steps) {
    double best = -HUGE_VAL;
    const double lo = std::max(0.0, e1.alpha + e2.alpha - 2.0), hi = std::min(e1.alpha, e2.alpha);
    for (int ia = 0; ia <= steps; ++ia) {
        const double a = lo + (hi - lo) * ia / steps;
        for (int ix = -steps; ix <= steps; ++ix)
            for (int iy = -steps; iy <= steps; ++iy) {
                const BlochVec v{a * ix / steps, a * iy / steps};
                const SymMat2 g11 = effect_from_vec(a, v);
                const SymMat2 g10 = e1.matrix() - g11, g01 = e2.matrix() - g11;
                const SymMat2 g00 = SymMat2::identity() - e1.matrix() - e2.matrix() + g11;
                best = std::max(best, std::min({min_eig(g11), min_eig(g10), min_eig(g01), min_eig(g00)}));
            }
    }
    return best;
}

}  // namespace

TEST_CASE("effects") {
    const Effect e{1.0, 0.3, 1.0};
    CHECK(max_abs_diff(e.matrix(), projector(0.3)) <= 1e-15);
    CHECK(max_abs_diff(Effect{1.0, 0.0, 0.0}.matrix(), 0.5 * SymMat2::identity()) == 0.0);
    CHECK_FALSE(Effect{0.5, 0.0, 0.6}.is_valid());
    CHECK_FALSE(Effect{1.8, 0.0, 0.3}.is_valid());
    CHECK_THROWS_AS(effect_matrix({0.5, 0.0, 0.6}), DomainError);
    oracle::Rng rng(71);
    for (int t = 0; t < 200; ++t) {
        const Effect x = random_effect(rng);
        const Eigen::VectorXd ev = oracle::eigenvalues(x.matrix().matrix());
        CHECK(ev(0) >= -1e-15);
        CHECK(ev(1) <= 1 + 1e-15);
        CHECK(std::abs(ev(1) - ev(0) - x.r) <= 1e-14);
        CHECK(std::abs(ev(1) + ev(0) - x.alpha) <= 1e-14);
        const Effect back = Effect::from_matrix(x.matrix());
        CHECK(max_abs_diff(back.matrix(), x.matrix()) <= 1e-14);
        CHECK(max_abs_diff(effect_from_vec(x.alpha, bloch_vec(x)), x.matrix()) <= 1e-15);
    }
}

TEST_CASE("fuzzification with a Markov kernel") {
    const double phi = 0.7;
    for (double mpp : {1.0, 0.8, 0.5})
        for (double mpm : {0.0, 0.1, 0.4}) {
            const DichotomicPOVM d = fuzzify(phi, {mpp, mpm});
            const Effect want{mpp + mpm, phi, mpp - mpm};
            CHECK(max_abs_diff(d.plus, want.matrix()) <= 1e-15);
            CHECK(max_abs_diff(d.plus + d.minus(), SymMat2::identity()) == 0.0);
        }
    CHECK_THROWS_AS(fuzzify(0.0, {1.2, 0.0}), DomainError);
    CHECK_THROWS_AS(fuzzify(0.0, {0.5, -0.1}), DomainError);
}

TEST_CASE("sequential measurement") {
    const DichotomicPOVM f = sequential_povm(kPi / 2, kPi / 4);
    CHECK(max_abs_diff(f.plus, 0.5 * projector(kPi / 2)) <= 1e-15);
    const OutcomeProbabilities p = sequential_probabilities(projector(kPi / 2), kPi / 2, kPi / 4);
    CHECK(std::abs(p.p1 - 0.5) <= 1e-15);
    CHECK(std::abs(p.p0 - 0.5) <= 1e-15);
    CHECK_THROWS_AS(sequential_probabilities(2.0 * SymMat2::identity(), 0, 0), DomainError);

    oracle::Rng rng(72);
    for (int t = 0; t < 100; ++t) {
        const double a = rng.uniform(0, kPi), b = rng.uniform(0, kPi);
        const Mat2 ea = projector(a).matrix();
        const Mat2 ref = ea * projector(b).matrix() * ea;
        CHECK(max_abs_diff(sequential_povm(a, b).plus.matrix(), ref) <= 1e-15);
        // E_a E_b E_a = cos^2(a - b) E_a
        CHECK(max_abs_diff(ref, std::pow(std::cos(a - b), 2) * ea) <= 1e-15);
        const SymMat2 rho = density_from_polar(rng.uniform(0, 1), rng.uniform(0, kPi));
        const OutcomeProbabilities q = sequential_probabilities(rho, a, b);
        CHECK(std::abs(q.p1 + q.p0 - 1.0) <= 1e-15);
        CHECK(std::abs(q.p1 - (rho.matrix() * ref).trace()) <= 1e-15);
    }
}

TEST_CASE("joint_from_choice names the violated part") {
    const Effect e1{1.0, 0.0, 1.0}, e2{1.0, kPi / 4, 1.0};
    try {
        joint_from_choice(e1, e2, 0.5, {0.0, 0.0});
        FAIL("expected InfeasibleChoiceError");
    } catch (const InfeasibleChoiceError& e) {
        CHECK(e.condition() == "G10");
    }
    try {
        joint_from_choice(e1, e2, 0.2, {0.5, 0.0});
        FAIL("expected InfeasibleChoiceError");
    } catch (const InfeasibleChoiceError& e) {
        CHECK(e.condition() == "G11");
    }
    // Commuting sharp effects: G11 = E1 when E1 = E2.
    const JointPOVM g = joint_from_choice(e1, e1, 1.0, bloch_vec(e1));
    CHECK(validate_joint(g, e1, e1).ok(1e-15));
}

TEST_CASE("disk geometry") {
    CHECK(disks_intersect({{{0, 0}, 1}, {{1.5, 0}, 1}}));
    CHECK_FALSE(disks_intersect({{{0, 0}, 1}, {{2.5, 0}, 1}}));
    // Tangent disks meet in one point.
    CHECK(disks_intersect({{{0, 0}, 1}, {{2, 0}, 1}}));
    // Three pairwise-intersecting disks without a common point.
    const double s = std::sqrt(3.0);
    const std::vector<Disk> tri{{{0, 0}, 1.05}, {{2, 0}, 1.05}, {{1, s}, 1.05}};
    CHECK_FALSE(disks_intersect(tri));
    std::vector<Disk> tri2 = tri;
    for (auto& d : tri2) d.radius = 1.2;
    const auto p = common_point(tri2);
    REQUIRE(p);
    for (const auto& d : tri2) CHECK((*p - d.center).norm() <= d.radius + 1e-12);
    // Four disks, one triple failing.
    std::vector<Disk> four = tri;
    four.push_back({{1, 0.5}, 5});
    CHECK_FALSE(disks_intersect(four));
    CHECK_FALSE(common_point({{{0, 0}, -1}}));
}

TEST_CASE("necessary condition") {
    const Effect a{0.5, kPi / 2, 0.5}, b{0.5, kPi / 4, 0.5};
    CHECK(std::abs(necessary_condition(a, b).value - std::numbers::sqrt2) <= 1e-15);
    const Effect x{1.0, 0.0, 1.0}, y{1.0, kPi / 4, 1.0};
    CHECK(std::abs(necessary_condition(x, y).value - 2.0 * std::numbers::sqrt2) <= 1e-15);
    CHECK_FALSE(necessary_condition(x, y).holds);
}

TEST_CASE("decision: sharp and trivial cases") {
    // Non-commuting projections are incompatible.
    const CompatibilityResult r = compatibility_decide({1.0, 0.0, 1.0}, {1.0, kPi / 4, 1.0});
    CHECK(r.verdict == Verdict::Incompatible);
    CHECK(r.max_slack < 0.0);
    CHECK(r.scan.size() == 256);
    for (const auto& s : r.scan) CHECK(s.slack < 0.0);
    // Orthogonal projections commute.
    const CompatibilityResult c = compatibility_decide({1.0, 0.0, 1.0}, {1.0, kPi / 2, 1.0});
    REQUIRE(c.verdict == Verdict::Compatible);
    CHECK(validate_joint(*c.joint, {1.0, 0.0, 1.0}, {1.0, kPi / 2, 1.0}).ok(1e-12));
    // Trivial effects are compatible with anything.
    const CompatibilityResult t = compatibility_decide({1.0, 0.0, 0.0}, {1.0, 0.3, 1.0});
    CHECK(t.verdict == Verdict::Compatible);
    // The pair with value sqrt 2 is compatible: G11 = 0 works.
    const Effect a{0.5, kPi / 2, 0.5}, b{0.5, kPi / 4, 0.5};
    const JointPOVM g = joint_from_choice(a, b, 0.0, {0.0, 0.0});
    CHECK(validate_joint(g, a, b).ok(1e-15));
    CHECK(compatibility_decide(a, b).verdict == Verdict::Compatible);
}

TEST_CASE("decision: unbiased pairs follow the necessary condition") {
    oracle::Rng rng(73);
    for (int t = 0; t < 150; ++t) {
        const Effect e1{1.0, rng.uniform(0, kPi), rng.uniform(0, 1)};
        const Effect e2{1.0, rng.uniform(0, kPi), rng.uniform(0, 1)};
        const bool holds = necessary_condition(e1, e2).holds;
        const CompatibilityResult r = compatibility_decide(e1, e2);
        CHECK(r.verdict == (holds ? Verdict::Compatible : Verdict::Incompatible));
    }
}

TEST_CASE("decision: soundness and agreement with a brute-force search") {
    oracle::Rng rng(74);
    int compatible = 0, incompatible = 0;
    for (int t = 0; t < 40; ++t) {
        const Effect e1 = random_effect(rng), e2 = random_effect(rng);
        const CompatibilityResult r = compatibility_decide(e1, e2);
        CHECK(r.verdict != Verdict::Undetermined);
        if (r.verdict == Verdict::Compatible) {
            ++compatible;
            REQUIRE(r.joint);
            CHECK(validate_joint(*r.joint, e1, e2).ok(1e-10));
            CHECK(*r.alpha >= r.alpha_min - 1e-12);
            CHECK(*r.alpha <= r.alpha_max + 1e-12);
        } else {
            ++incompatible;
            // The grid search never finds a valid joint either.
            CHECK(brute_best_min_eig(e1, e2, 24) < 0.0);
        }
    }
    CHECK(compatible > 0);
    // Sharper effects to exercise the incompatible branch.
    for (int t = 0; t < 20; ++t) {
        const Effect e1{1.0, rng.uniform(0, kPi), rng.uniform(0.9, 1)};
        const Effect e2{1.0, e1.phi + rng.uniform(0.3, 1.2), rng.uniform(0.9, 1)};
        const CompatibilityResult r = compatibility_decide(e1, e2);
        if (r.verdict == Verdict::Incompatible) {
            ++incompatible;
            CHECK(brute_best_min_eig(e1, e2, 24) < 0.0);
        }
    }
    CHECK(incompatible > 0);
}
