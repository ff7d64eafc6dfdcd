#include "oracles.hpp"

#include "planequant/errors.hpp"
#include "planequant/plane_states.hpp"

#include <doctest.h>

#include <cmath>

using namespace planequant;

namespace {

Mat2 m2(double a, double b, double c, double d) {
    Mat2 m;
    m << a, b, c, d;
    return m;
}

SymMat2 random_sym(oracle::Rng& rng) { return {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}; }

}  // namespace

TEST_CASE("density_from_polar examples") {
    for (double phi : {0.0, 0.4, 2.9}) CHECK(max_abs_diff(density_from_polar(0.0, phi), 0.5 * SymMat2::identity()) <= 1e-15);
    CHECK(max_abs_diff(density_from_polar(1.0, 0.0), SymMat2{1.0, 0.0, 0.0}) <= 1e-15);
    CHECK(max_abs_diff(density_from_polar(0.5, kPi / 4), SymMat2{0.5, 0.25, 0.5}) <= 1e-15);
    CHECK_THROWS_AS(density_from_polar(1.2, 0.0), DomainError);
    CHECK_THROWS_AS(density_from_polar(-0.1, 0.0), DomainError);
}

TEST_CASE("density invariants against a generic eigensolver") {
    oracle::Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const double r = rng.uniform(0, 1), phi = rng.uniform(-10, 10);
        const SymMat2 rho = density_from_polar(r, phi);
        CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
        CHECK(std::abs(rho.det() - 0.25 * (1 - r * r)) <= 1e-12);
        const auto ev = oracle::eigenvalues(rho.matrix());
        CHECK(std::abs(ev(1) - 0.5 * (1 + r)) <= 1e-12);
        CHECK(std::abs(ev(0) - 0.5 * (1 - r)) <= 1e-12);
        CHECK(rho.is_density());
        CHECK(rho.is_effect());
    }
}

TEST_CASE("PolarState normalizes the angle modulo pi") {
    const PolarState s(0.3, kPi + 0.2);
    CHECK(std::abs(s.phi() - 0.2) <= 1e-15);
    CHECK(std::abs(PolarState(0.3, -0.1).phi() - (kPi - 0.1)) <= 1e-15);
    CHECK(max_abs_diff(s.to_matrix(), density_from_polar(0.3, 0.2)) <= 1e-15);
    CHECK_THROWS_AS(PolarState(1.5, 0.0), DomainError);
}

TEST_CASE("spectral_decompose examples") {
    auto sd = spectral_decompose(0.5 * SymMat2::identity());
    CHECK(sd.lambda_plus == 0.5);
    CHECK(sd.lambda_minus == 0.5);
    CHECK(sd.phi == 0.0);
    sd = spectral_decompose({1.0, 0.0, 0.0});
    CHECK(sd.lambda_plus == 1.0);
    CHECK(sd.lambda_minus == 0.0);
    CHECK(sd.phi == 0.0);
    sd = spectral_decompose({0.5, 0.25, 0.5});
    // Oracle: generic eigensolver, eigenvector angle of the top eigenvalue.
    Eigen::SelfAdjointEigenSolver<Mat2> es(m2(0.5, 0.25, 0.25, 0.5));
    const Eigen::Vector2d top = es.eigenvectors().col(1);
    CHECK(std::abs(sd.lambda_plus - es.eigenvalues()(1)) <= 1e-15);
    CHECK(std::abs(sd.lambda_minus - es.eigenvalues()(0)) <= 1e-15);
    CHECK(std::abs(std::sin(sd.phi - std::atan2(top(1), top(0)))) <= 1e-15);
    CHECK(std::abs(sd.phi - kPi / 4) <= 1e-15);
}

TEST_CASE("spectral_decompose reconstructs and inverts density_from_polar") {
    oracle::Rng rng(12);
    for (int i = 0; i < 500; ++i) {
        const SymMat2 m = random_sym(rng);
        const auto sd = spectral_decompose(m);
        CHECK(sd.lambda_plus >= sd.lambda_minus);
        const SymMat2 back = sd.lambda_plus * projector(sd.phi) + sd.lambda_minus * projector(sd.phi + kPi / 2);
        CHECK(max_abs_diff(back, m) <= 1e-12);
        CHECK(sd.phi >= 0.0);
        CHECK(sd.phi < kPi);

        const double r = rng.uniform(0.01, 1), phi = rng.uniform(0, kPi);
        const auto s2 = spectral_decompose(density_from_polar(r, phi));
        CHECK(std::abs(s2.lambda_plus - s2.lambda_minus - r) <= 1e-12);
        CHECK(std::abs(std::sin(s2.phi - phi)) <= 1e-10);
    }
}

TEST_CASE("von_neumann_entropy values") {
    CHECK(std::abs(von_neumann_entropy(0.0) - oracle::kLn2) <= 1e-15);
    CHECK(von_neumann_entropy(1.0) == 0.0);
    CHECK(std::abs(von_neumann_entropy(0.5) - oracle::kEntropyHalf) <= 1e-15);
    CHECK_THROWS_AS(von_neumann_entropy(1.01), DomainError);
}

TEST_CASE("entropy matches -Tr(rho ln rho) by eigen-decomposition and is decreasing") {
    oracle::Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const double r = rng.uniform(0, 0.999);
        const auto ev = oracle::eigenvalues(density_from_polar(r, rng.uniform(0, kPi)).matrix());
        const double s = -(ev(0) * std::log(ev(0)) + ev(1) * std::log(ev(1)));
        CHECK(std::abs(von_neumann_entropy(r) - s) <= 1e-12);
    }
    double prev = von_neumann_entropy(0.0);
    for (int i = 1; i <= 1000; ++i) {
        const double cur = von_neumann_entropy(i / 1000.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("rotate_state") {
    const PolarState s(0.7, 0.3);
    const PolarState same = rotate_state(s, 0.0);
    CHECK(same.r() == s.r());
    CHECK(same.phi() == s.phi());
    const Mat2 rot = rotation(kPi / 2);
    const Mat2 conj = rot * projector(0.0).matrix() * rot.transpose();
    CHECK(max_abs_diff(conj, m2(0, 0, 0, 1)) <= 1e-15);
    CHECK(max_abs_diff(rotate_state(PolarState(1.0, 0.0), kPi / 2).to_matrix().matrix(), conj) <= 1e-15);

    oracle::Rng rng(14);
    for (int i = 0; i < 200; ++i) {
        const PolarState st(rng.uniform(0, 1), rng.uniform(0, kPi));
        const double phi = rng.uniform(-7, 7);
        const Mat2 r = rotation(phi);
        const Mat2 expect = r * st.to_matrix().matrix() * r.transpose();
        const PolarState rotated = rotate_state(st, phi);
        CHECK(max_abs_diff(rotated.to_matrix().matrix(), expect) <= 1e-12);
        CHECK(std::abs(std::sin(rotated.phi() - st.phi() - phi)) <= 1e-12);
        const auto e0 = oracle::eigenvalues(st.to_matrix().matrix());
        const auto e1 = oracle::eigenvalues(expect);
        CHECK((e0 - e1).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("sigma_phi and commutators") {
    CHECK(max_abs_diff(sigma_phi(0.0), SymMat2{1, 0, -1}) <= 1e-15);
    CHECK(max_abs_diff(sigma_phi(kPi / 2), SymMat2{0, 1, 0}) <= 1e-15);
    oracle::Rng rng(15);
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform(-7, 7), b = rng.uniform(-7, 7);
        const Mat2 sa = sigma_phi(a).matrix(), sb = sigma_phi(b).matrix();
        CHECK(std::abs(sa.trace()) <= 1e-15);
        CHECK(max_abs_diff(sa * sa, Mat2::Identity()) <= 1e-12);
        CHECK(max_abs_diff(commutator(sa, sb), 2.0 * std::sin(a - b) * tau2()) <= 1e-12);
        // sigma_{2 phi} = E_phi - E_{phi + pi/2}
        CHECK(max_abs_diff(sigma_phi(2 * a), projector(a) - projector(a + kPi / 2)) <= 1e-12);
    }
    CHECK(max_abs_diff(commutator(sigma_phi(0.3).matrix(), sigma_phi(0.3).matrix()), Mat2::Zero()) == 0.0);
    // Direct arithmetic: sigma3 sigma1 - sigma1 sigma3 = [[0, 2], [-2, 0]] = 2 sin(0 - pi/2) tau2.
    const Mat2 direct = m2(1, 0, 0, -1) * m2(0, 1, 1, 0) - m2(0, 1, 1, 0) * m2(1, 0, 0, -1);
    CHECK(max_abs_diff(commutator(sigma_phi(0).matrix(), sigma_phi(kPi / 2).matrix()), direct) <= 1e-15);
    CHECK(max_abs_diff(direct, -2.0 * tau2()) <= 1e-15);
}

TEST_CASE("rotation_exp against an independent matrix exponential") {
    CHECK(max_abs_diff(rotation_exp(0.0), Mat2::Identity()) <= 1e-15);
    CHECK(max_abs_diff(rotation_exp(kPi / 2), m2(0, -1, 1, 0)) <= 1e-12);
    CHECK(max_abs_diff(MatX(rotation_exp(kPi / 2)), oracle::expm(MatX(tau2() * (kPi / 2)))) <= 1e-14);
    oracle::Rng rng(16);
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform(-8, 8), b = rng.uniform(-8, 8);
        CHECK(max_abs_diff(rotation_exp(a), rotation(a)) <= 1e-12);
        CHECK(max_abs_diff(rotation_exp(a) * rotation_exp(b), rotation_exp(a + b)) <= 1e-12);
    }
}

TEST_CASE("jordan_product") {
    CHECK(max_abs_diff(jordan_product(sigma1(), sigma3()), SymMat2::zero()) <= 1e-15);
    CHECK(max_abs_diff(jordan_product(sigma3(), sigma1()), SymMat2::zero()) <= 1e-15);
    CHECK(max_abs_diff(jordan_product(sigma1(), sigma1()), SymMat2::identity()) <= 1e-15);
    oracle::Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        const SymMat2 x = random_sym(rng), y = random_sym(rng);
        CHECK(max_abs_diff(jordan_product(x, SymMat2::identity()), x) <= 1e-14);
        const Mat2 direct = 0.5 * (x.matrix() * y.matrix() + y.matrix() * x.matrix());
        CHECK(max_abs_diff(jordan_product(x, y).matrix(), direct) <= 1e-12);
        CHECK(max_abs_diff(jordan_product(x, y), jordan_product(y, x)) <= 1e-14);
        const SymMat2 xx = jordan_product(x, x);
        CHECK(max_abs_diff(jordan_product(jordan_product(x, y), xx), jordan_product(x, jordan_product(y, xx))) <= 1e-11);
    }
}

TEST_CASE("hilbert_inner") {
    CHECK(hilbert_inner(SymMat2::identity(), SymMat2::identity()) == 2.0);
    CHECK(hilbert_inner(sigma1(), sigma3()) == 0.0);
    oracle::Rng rng(18);
    for (int i = 0; i < 100; ++i) {
        const SymMat2 x = random_sym(rng), y = random_sym(rng);
        CHECK(std::abs(hilbert_inner(x, y) - (x.matrix() * y.matrix()).trace()) <= 1e-12);
        CHECK(std::abs(hilbert_inner(x, y) - hilbert_inner(y, x)) <= 1e-15);
        CHECK(hilbert_inner(x, x) >= 0.0);

        const double phi = rng.uniform(0, kTwoPi);
        const double s = 1.0 / std::sqrt(2.0);
        const SymMat2 basis[3] = {s * sigma_phi(phi), s * sigma_phi(phi + kPi / 2), s * SymMat2::identity()};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(std::abs(hilbert_inner(basis[a], basis[b]) - (a == b)) <= 1e-12);
    }
}

TEST_CASE("Stokes conversion") {
    const PolarState natural = density_from_stokes({0.0, 0.0});
    CHECK(max_abs_diff(natural.to_matrix(), 0.5 * SymMat2::identity()) <= 1e-15);
    const PolarState e0 = density_from_stokes({0.0, 1.0});
    CHECK(max_abs_diff(e0.to_matrix(), SymMat2{1, 0, 0}) <= 1e-15);
    const PolarState s(0.3, 1.1);
    const StokesVector v = stokes_from_density(s);
    CHECK(std::abs(v.degree_of_polarization() - 0.3) <= 1e-12);
    const PolarState back = density_from_stokes(v);
    CHECK(std::abs(back.r() - 0.3) <= 1e-12);
    CHECK(std::abs(back.phi() - 1.1) <= 1e-12);
    CHECK_THROWS_AS(density_from_stokes({0.8, 0.8}), DomainError);

    oracle::Rng rng(19);
    for (int i = 0; i < 200; ++i) {
        const PolarState st(rng.uniform(0, 1), rng.uniform(0, kPi));
        const StokesVector sv = stokes_from_density(st);
        CHECK(std::abs(sv.degree_of_polarization() - st.r()) <= 1e-12);
        CHECK(max_abs_diff(sv.normalized_tensor(), st.to_matrix()) <= 1e-12);
        CHECK(std::abs(sv.normalized_tensor().det() - 0.25 * (1 - st.r() * st.r())) <= 1e-12);
        CHECK(max_abs_diff(density_from_stokes(sv).to_matrix(), st.to_matrix()) <= 1e-12);
    }
}

TEST_CASE("overlap_probability") {
    CHECK(overlap_probability(0.4, 0.4) == 1.0);
    CHECK(overlap_probability(0.4 + kPi / 2, 0.4) <= 1e-30);
    CHECK(std::abs(overlap_probability(0.0, kPi / 3) - 0.25) <= 1e-15);
    const double phi = 0.77;
    const double total = oracle::simpson([&](double eta) { return overlap_probability(eta, phi); }, 0, kTwoPi) / kPi;
    CHECK(std::abs(total - 1.0) <= 1e-12);
    // |<eta|phi>|^2 with explicit unit vectors.
    oracle::Rng rng(20);
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform(0, kTwoPi), b = rng.uniform(0, kTwoPi);
        const double ip = std::cos(a) * std::cos(b) + std::sin(a) * std::sin(b);
        CHECK(std::abs(overlap_probability(a, b) - ip * ip) <= 1e-14);
    }
}

TEST_CASE("projector and PureState") {
    oracle::Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        const PureState p{rng.uniform(-5, 5)};
        const Mat2 e = p.projector().matrix();
        CHECK(max_abs_diff(e * e, e) <= 1e-14);
        CHECK(std::abs(e.trace() - 1.0) <= 1e-14);
        CHECK(max_abs_diff(p.projector(), PureState{p.phi + kPi}.projector()) <= 1e-14);
    }
}
