#include "planequant/fourier.hpp"

#include "planequant/errors.hpp"
#include "planequant/linalg.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

namespace planequant {

namespace {

struct Pair {
    double c = 0.0;
    double s = 0.0;
};

FourierFunction from_map(double a0, const std::map<int, Pair>& m) {
    std::vector<Harmonic> h;
    h.reserve(m.size());
    for (const auto& [k, p] : m) h.push_back({k, p.c, p.s});
    return FourierFunction(a0, std::move(h));
}

}  // namespace

FourierFunction::FourierFunction(double a0, std::vector<Harmonic> harmonics) : a0_(a0) {
    std::map<int, Pair> m;
    for (const auto& h : harmonics) {
        if (h.k < 1) throw DomainError("FourierFunction: harmonic index " + std::to_string(h.k) + " < 1");
        auto& p = m[h.k];
        p.c += h.c;
        p.s += h.s;
    }
    harmonics_.reserve(m.size());
    for (const auto& [k, p] : m) harmonics_.push_back({k, p.c, p.s});
}

FourierFunction FourierFunction::cosine(int k, double amplitude) {
    if (k == 0) return constant(amplitude);
    return FourierFunction(0.0, {{k, amplitude, 0.0}});
}

FourierFunction FourierFunction::sine(int k, double amplitude) {
    if (k == 0) return {};
    return FourierFunction(0.0, {{k, 0.0, amplitude}});
}

double FourierFunction::cos_coeff(int k) const {
    if (k == 0) return a0_;
    for (const auto& h : harmonics_)
        if (h.k == k) return h.c;
    return 0.0;
}

double FourierFunction::sin_coeff(int k) const {
    for (const auto& h : harmonics_)
        if (h.k == k) return h.s;
    return 0.0;
}

double FourierFunction::operator()(double phi) const {
    double v = a0_;
    for (const auto& h : harmonics_) v += h.c * std::cos(h.k * phi) + h.s * std::sin(h.k * phi);
    return v;
}

FourierFunction FourierFunction::shifted(double phi0) const {
    FourierFunction g = *this;
    for (auto& h : g.harmonics_) {
        const double ck = std::cos(h.k * phi0), sk = std::sin(h.k * phi0);
        const double c = h.c, s = h.s;
        h.c = c * ck - s * sk;
        h.s = c * sk + s * ck;
    }
    return g;
}

FourierFunction& FourierFunction::operator+=(const FourierFunction& g) {
    std::vector<Harmonic> h = harmonics_;
    h.insert(h.end(), g.harmonics_.begin(), g.harmonics_.end());
    *this = FourierFunction(a0_ + g.a0_, std::move(h));
    return *this;
}

FourierFunction& FourierFunction::operator*=(double s) {
    a0_ *= s;
    for (auto& h : harmonics_) {
        h.c *= s;
        h.s *= s;
    }
    return *this;
}

FourierFunction product(const FourierFunction& f, const FourierFunction& g) {
    double a0 = f.a0() * g.a0();
    std::map<int, Pair> m;
    for (const auto& h : g.harmonics()) {
        m[h.k].c += f.a0() * h.c;
        m[h.k].s += f.a0() * h.s;
    }
    for (const auto& h : f.harmonics()) {
        m[h.k].c += g.a0() * h.c;
        m[h.k].s += g.a0() * h.s;
    }
    for (const auto& p : f.harmonics()) {
        for (const auto& q : g.harmonics()) {
            // cos a cos b = (cos(a-b) + cos(a+b))/2      sin a sin b = (cos(a-b) - cos(a+b))/2
            // sin a cos b = (sin(a+b) + sin(a-b))/2
            const int sum = p.k + q.k;
            const int diff = p.k - q.k;
            auto& hi = m[sum];
            hi.c += 0.5 * (p.c * q.c - p.s * q.s);
            hi.s += 0.5 * (p.s * q.c + p.c * q.s);
            const double cc = 0.5 * (p.c * q.c + p.s * q.s);
            // sin(a-b) terms: p.s q.c sin(a-b) + p.c q.s sin(b-a)
            const double ss = 0.5 * (p.s * q.c - p.c * q.s);
            if (diff == 0) {
                a0 += cc;
            } else if (diff > 0) {
                m[diff].c += cc;
                m[diff].s += ss;
            } else {
                m[-diff].c += cc;
                m[-diff].s -= ss;
            }
        }
    }
    return from_map(a0, m);
}

double inner(const FourierFunction& f, const FourierFunction& g) {
    double v = 2.0 * f.a0() * g.a0();
    auto it = g.harmonics().begin();
    const auto end = g.harmonics().end();
    for (const auto& h : f.harmonics()) {
        while (it != end && it->k < h.k) ++it;
        if (it != end && it->k == h.k) v += h.c * it->c + h.s * it->s;
    }
    return v;
}

Projection project_samples(const std::function<double(double)>& g, int max_k, int samples) {
    if (max_k < 0) throw DomainError("project_samples: max_k must be >= 0");
    const int n = samples > 0 ? samples : 4 * (max_k + 1);
    if (n <= 2 * max_k) {
        throw DomainError("project_samples: need more than 2 max_k samples, got " + std::to_string(n));
    }
    std::vector<double> values(n);
    for (int i = 0; i < n; ++i) values[i] = g(kTwoPi * i / n);

    double a0 = 0.0;
    for (double v : values) a0 += v;
    a0 /= n;
    std::vector<Harmonic> h;
    for (int k = 1; k <= max_k; ++k) {
        double c = 0.0, s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = kTwoPi * i / n;
            c += values[i] * std::cos(k * t);
            s += values[i] * std::sin(k * t);
        }
        h.push_back({k, 2.0 * c / n, 2.0 * s / n});
    }
    FourierFunction f(a0, std::move(h));

    double sq = 0.0;
    for (int i = 0; i < 2 * n; ++i) {
        const double t = kPi * i / n;
        const double e = g(t) - f(t);
        sq += e * e;
    }
    return {f, std::sqrt(sq / (2 * n))};
}

}  // namespace planequant
