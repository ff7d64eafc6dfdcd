#pragma once

// Finite trigonometric series on the circle,
//   f(phi) = a0 + sum_k (c_k cos k phi + s_k sin k phi),
// with the inner product (f, g) = int_0^{2 pi} f g dphi/pi.

#include <functional>
#include <vector>

namespace planequant {

struct Harmonic {
    int k = 1;
    double c = 0.0;
    double s = 0.0;
};

class FourierFunction {
public:
    FourierFunction() = default;
    // Harmonics are sorted by k and duplicates are summed. Throws DomainError for k < 1.
    explicit FourierFunction(double a0, std::vector<Harmonic> harmonics = {});

    static FourierFunction constant(double a0) { return FourierFunction(a0); }
    static FourierFunction cosine(int k, double amplitude = 1.0);
    static FourierFunction sine(int k, double amplitude = 1.0);

    double a0() const { return a0_; }
    const std::vector<Harmonic>& harmonics() const { return harmonics_; }
    // Coefficient of cos k phi (a0 for k = 0) and of sin k phi; 0 when absent.
    double cos_coeff(int k) const;
    double sin_coeff(int k) const;
    int degree() const { return harmonics_.empty() ? 0 : harmonics_.back().k; }

    double operator()(double phi) const;

    // (R_{phi0} f)(phi) = f(phi - phi0)
    FourierFunction shifted(double phi0) const;

    FourierFunction& operator+=(const FourierFunction& g);
    FourierFunction& operator*=(double s);
    friend FourierFunction operator+(FourierFunction f, const FourierFunction& g) { return f += g; }
    friend FourierFunction operator-(FourierFunction f, const FourierFunction& g) { return f += (-1.0) * g; }
    friend FourierFunction operator*(double s, FourierFunction f) { return f *= s; }

private:
    double a0_ = 0.0;
    std::vector<Harmonic> harmonics_;
};

// Pointwise product, expanded with product-to-sum identities.
FourierFunction product(const FourierFunction& f, const FourierFunction& g);

// int_0^{2 pi} f g dphi/pi = 2 a0 b0 + sum_k (c_k c'_k + s_k s'_k)
double inner(const FourierFunction& f, const FourierFunction& g);

struct Projection {
    FourierFunction f;
    // Root-mean-square of g - f on the sample grid and its midpoints.
    double loss;
};

// Projects g onto frequencies <= max_k by the trapezoid rule on `samples` equispaced
// points (default 4 (max_k + 1)).
Projection project_samples(const std::function<double(double)>& g, int max_k = 16, int samples = 0);

}  // namespace planequant
