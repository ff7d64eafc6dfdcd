#include "oracles.hpp"

#include "planequant/errors.hpp"
#include "planequant/fourier.hpp"

#include <doctest.h>

#include <cmath>

using namespace planequant;

namespace {

FourierFunction random_fourier(oracle::Rng& rng, int degree) {
    std::vector<Harmonic> h;
    for (int k = 1; k <= degree; ++k) h.push_back({k, rng.uniform(-1, 1), rng.uniform(-1, 1)});
    return FourierFunction(rng.uniform(-1, 1), h);
}

}  // namespace

TEST_CASE("construction, degree and coefficient access") {
    const FourierFunction f(0.5, {{3, 1.0, 0.0}, {1, 0.0, 2.0}, {3, 0.5, -1.0}});
    CHECK(f.degree() == 3);
    CHECK(f.harmonics().size() == 2);
    CHECK(f.cos_coeff(0) == 0.5);
    CHECK(f.cos_coeff(3) == 1.5);
    CHECK(f.sin_coeff(3) == -1.0);
    CHECK(f.sin_coeff(1) == 2.0);
    CHECK(f.cos_coeff(2) == 0.0);
    CHECK(FourierFunction::constant(2.0).degree() == 0);
    CHECK_THROWS_AS(FourierFunction(0.0, {{0, 1.0, 0.0}}), DomainError);
    const double phi = 0.9;
    CHECK(std::abs(f(phi) - (0.5 + 2.0 * std::sin(phi) + 1.5 * std::cos(3 * phi) - std::sin(3 * phi))) <= 1e-15);
}

TEST_CASE("shift, sum, scale and product agree with pointwise evaluation") {
    oracle::Rng rng(31);
    for (int t = 0; t < 50; ++t) {
        const FourierFunction f = random_fourier(rng, rng.integer(0, 6));
        const FourierFunction g = random_fourier(rng, rng.integer(0, 6));
        const double phi0 = rng.uniform(-4, 4);
        const FourierFunction fs = f.shifted(phi0);
        const FourierFunction fg = product(f, g);
        const FourierFunction sum = f + 2.0 * g;
        const FourierFunction diff = f - g;
        CHECK(fg.degree() <= f.degree() + g.degree());
        for (int i = 0; i < 20; ++i) {
            const double x = rng.uniform(0, kTwoPi);
            CHECK(std::abs(fs(x) - f(x - phi0)) <= 1e-12);
            CHECK(std::abs(fg(x) - f(x) * g(x)) <= 1e-12);
            CHECK(std::abs(sum(x) - (f(x) + 2.0 * g(x))) <= 1e-12);
            CHECK(std::abs(diff(x) - (f(x) - g(x))) <= 1e-12);
        }
    }
}

TEST_CASE("inner product against Simpson quadrature") {
    oracle::Rng rng(32);
    for (int t = 0; t < 20; ++t) {
        const FourierFunction f = random_fourier(rng, rng.integer(0, 5));
        const FourierFunction g = random_fourier(rng, rng.integer(0, 5));
        const double ref = oracle::simpson([&](double x) { return f(x) * g(x); }, 0.0, kTwoPi) / kPi;
        CHECK(std::abs(inner(f, g) - ref) <= 1e-11);
    }
    // cos^2 2phi integrates to 1.
    CHECK(std::abs(inner(FourierFunction::cosine(2), FourierFunction::cosine(2)) - 1.0) <= 1e-15);
}

TEST_CASE("projection of samples") {
    oracle::Rng rng(33);
    const FourierFunction f = random_fourier(rng, 5);
    const Projection p = project_samples([&](double x) { return f(x); }, 8);
    CHECK(p.loss <= 1e-14);
    CHECK(std::abs(p.f.a0() - f.a0()) <= 1e-14);
    for (int k = 1; k <= 8; ++k) {
        CHECK(std::abs(p.f.cos_coeff(k) - f.cos_coeff(k)) <= 1e-14);
        CHECK(std::abs(p.f.sin_coeff(k) - f.sin_coeff(k)) <= 1e-14);
    }
    // Frequencies above K are lost and the loss is reported.
    const Projection q = project_samples([](double x) { return std::cos(3 * x) + std::cos(20 * x); }, 16);
    CHECK(std::abs(q.f.cos_coeff(3) - 1.0) <= 1e-12);
    CHECK(q.loss > 0.5);
    // Square wave: a visible but bounded loss.
    const Projection sq = project_samples([](double x) { return x < kPi ? 1.0 : -1.0; });
    CHECK(sq.loss > 0.01);
    CHECK(sq.loss < 0.5);
    CHECK_THROWS_AS(project_samples([](double) { return 0.0; }, 4, 8), DomainError);
}
