#include "planequant/povm_compat.hpp"

#include "planequant/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace planequant {

namespace {

bool contains(const Disk& d, const BlochVec& p, double tol) { return (p - d.center).norm() <= d.radius + tol; }

bool contains_all(const std::vector<Disk>& disks, const BlochVec& p, double tol) {
    return std::all_of(disks.begin(), disks.end(), [&](const Disk& d) { return contains(d, p, tol); });
}

// Intersection points of the two boundary circles (0, 1 or 2 points; none for concentric circles).
void circle_intersections(const Disk& p, const Disk& q, double tol, std::vector<BlochVec>& out) {
    const BlochVec diff = q.center - p.center;
    const double d = diff.norm();
    if (d == 0.0) return;
    if (d > p.radius + q.radius + tol || d < std::abs(p.radius - q.radius) - tol) return;
    const double a = (d * d + p.radius * p.radius - q.radius * q.radius) / (2.0 * d);
    const double h = std::sqrt(std::max(0.0, p.radius * p.radius - a * a));
    const BlochVec u = (1.0 / d) * diff;
    const BlochVec perp{-u.y, u.x};
    const BlochVec base = p.center + a * u;
    out.push_back(base + h * perp);
    if (h > 0.0) out.push_back(base - h * perp);
}

std::vector<BlochVec> candidates(const std::vector<Disk>& disks, double tol) {
    std::vector<BlochVec> pts;
    for (const auto& d : disks) pts.push_back(d.center);
    for (std::size_t i = 0; i < disks.size(); ++i)
        for (std::size_t k = i + 1; k < disks.size(); ++k) circle_intersections(disks[i], disks[k], tol, pts);
    return pts;
}

bool any_empty(const std::vector<Disk>& disks, double tol) {
    return std::any_of(disks.begin(), disks.end(), [&](const Disk& d) { return d.radius < -tol; });
}

struct Problem {
    double a1, a2;
    BlochVec v1, v2;

    std::vector<Disk> disks(double alpha) const {
        return {{{0.0, 0.0}, alpha}, {v1, a1 - alpha}, {v2, a2 - alpha}, {v1 + v2, 2.0 - a1 - a2 + alpha}};
    }
};

double slack_at(const Problem& pb, double alpha, int iterations) {
    const std::vector<Disk> base = pb.disks(alpha);
    auto feasible = [&](double t) {
        std::vector<Disk> shrunk = base;
        for (auto& d : shrunk) d.radius -= t;
        // Circle intersection points sit on their own boundaries only up to rounding.
        return disks_intersect(shrunk, 1e-13);
    };
    double hi = base[0].radius;
    for (const auto& d : base) hi = std::min(hi, d.radius);
    if (feasible(hi)) return hi;
    double lo = -4.0;
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

// Feasible point closest to m, or nothing.
std::optional<BlochVec> closest_feasible(const std::vector<Disk>& disks, const BlochVec& m, double tol) {
    if (any_empty(disks, tol)) return std::nullopt;
    std::vector<BlochVec> pts{m};
    for (const auto& d : disks) {
        const BlochVec diff = m - d.center;
        const double n = diff.norm();
        if (n > 0.0) pts.push_back(d.center + (std::max(d.radius, 0.0) / n) * diff);
    }
    const auto more = candidates(disks, tol);
    pts.insert(pts.end(), more.begin(), more.end());
    std::optional<BlochVec> best;
    double best_dist = 0.0;
    for (const auto& p : pts) {
        if (!contains_all(disks, p, tol)) continue;
        const double dist = (p - m).norm();
        if (!best || dist < best_dist) {
            best = p;
            best_dist = dist;
        }
    }
    return best;
}

}  // namespace

bool Effect::is_valid(double tol) const {
    return std::isfinite(alpha) && std::isfinite(phi) && std::isfinite(r) && r >= -tol && r <= alpha + tol &&
           alpha <= 2.0 - r + tol;
}

void Effect::validate(double tol) const {
    if (!is_valid(tol)) {
        throw DomainError("effect (alpha = " + std::to_string(alpha) + ", r = " + std::to_string(r) +
                          ") violates r <= alpha <= 2 - r");
    }
}

SymMat2 Effect::matrix() const {
    return SymMat2::from_pauli(0.5 * alpha, 0.5 * r * std::cos(2.0 * phi), 0.5 * r * std::sin(2.0 * phi));
}

Effect Effect::from_matrix(const SymMat2& m) {
    const SpectralData sd = spectral_decompose(m);
    return {m.trace(), sd.phi, sd.lambda_plus - sd.lambda_minus};
}

SymMat2 effect_matrix(const Effect& e, double tol) {
    e.validate(tol);
    return e.matrix();
}

BlochVec bloch_vec(const Effect& e) { return {e.r * std::cos(2.0 * e.phi), e.r * std::sin(2.0 * e.phi)}; }

SymMat2 effect_from_vec(double alpha, const BlochVec& v) {
    return SymMat2::from_pauli(0.5 * alpha, 0.5 * v.x, 0.5 * v.y);
}

double JointPOVM::min_eigenvalue() const {
    return std::min({g11.eigenvalues().second, g10.eigenvalues().second, g01.eigenvalues().second,
                     g00.eigenvalues().second});
}

JointValidation validate_joint(const JointPOVM& g, const Effect& e1, const Effect& e2) {
    JointValidation out;
    out.sum_residual = max_abs_diff(g.sum(), SymMat2::identity());
    out.marginal1_residual = max_abs_diff(g.g11 + g.g10, e1.matrix());
    out.marginal2_residual = max_abs_diff(g.g11 + g.g01, e2.matrix());
    out.min_eigenvalue = g.min_eigenvalue();
    return out;
}

DichotomicPOVM fuzzify(double phi, const MarkovKernel2& kernel) {
    for (double mu : {kernel.mu_pp, kernel.mu_pm}) {
        if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("Markov kernel entry " + std::to_string(mu) + " outside [0, 1]");
    }
    const SymMat2 e = projector(phi);
    return {kernel.mu_pp * e + kernel.mu_pm * (SymMat2::identity() - e)};
}

DichotomicPOVM sequential_povm(double first, double second) {
    const Mat2 ef = projector(first).matrix();
    return {SymMat2::from_matrix(ef * projector(second).matrix() * ef)};
}

OutcomeProbabilities sequential_probabilities(const SymMat2& rho, double first, double second, double tol) {
    if (!rho.is_density(tol)) throw DomainError("sequential_probabilities: input is not a density matrix");
    const DichotomicPOVM f = sequential_povm(first, second);
    return {hilbert_inner(rho, f.plus), hilbert_inner(rho, f.minus())};
}

NecessaryCondition necessary_condition(const Effect& e1, const Effect& e2) {
    const BlochVec v1 = bloch_vec(e1), v2 = bloch_vec(e2);
    const double value = (v1 + v2).norm() + (v1 - v2).norm();
    return {value <= 2.0 + kDefaultTol, value};
}

JointPOVM joint_from_choice(const Effect& e1, const Effect& e2, double alpha, const BlochVec& v, double tol) {
    e1.validate(tol);
    e2.validate(tol);
    const BlochVec v1 = bloch_vec(e1), v2 = bloch_vec(e2);
    const std::array<std::pair<const char*, std::pair<double, double>>, 4> conditions{{
        {"G11", {v.norm(), alpha}},
        {"G10", {(v1 - v).norm(), e1.alpha - alpha}},
        {"G01", {(v2 - v).norm(), e2.alpha - alpha}},
        {"G00", {(v - v1 - v2).norm(), 2.0 - e1.alpha - e2.alpha + alpha}},
    }};
    for (const auto& [name, c] : conditions) {
        if (c.first > c.second + tol) {
            throw InfeasibleChoiceError(name, std::string("joint_from_choice: ") + name + " >= 0 fails (" +
                                                  std::to_string(c.first) + " > " + std::to_string(c.second) + ")");
        }
    }
    JointPOVM g;
    g.g11 = effect_from_vec(alpha, v);
    g.g10 = e1.matrix() - g.g11;
    g.g01 = e2.matrix() - g.g11;
    g.g00 = SymMat2::identity() - e1.matrix() - e2.matrix() + g.g11;
    return g;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Compatible: return "Compatible";
        case Verdict::Incompatible: return "Incompatible";
        case Verdict::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

bool disks_intersect(const std::vector<Disk>& disks, double tol) {
    if (disks.size() > 3) {
        for (std::size_t i = 0; i < disks.size(); ++i)
            for (std::size_t j = i + 1; j < disks.size(); ++j)
                for (std::size_t k = j + 1; k < disks.size(); ++k)
                    if (!common_point({disks[i], disks[j], disks[k]}, tol)) return false;
        return true;
    }
    return common_point(disks, tol).has_value();
}

std::optional<BlochVec> common_point(const std::vector<Disk>& disks, double tol) {
    if (any_empty(disks, tol)) return std::nullopt;
    for (const auto& p : candidates(disks, tol))
        if (contains_all(disks, p, tol)) return p;
    return std::nullopt;
}

CompatibilityResult compatibility_decide(const Effect& e1, const Effect& e2, const CompatibilityOptions& opt) {
    e1.validate(opt.tol);
    e2.validate(opt.tol);
    const Problem pb{e1.alpha, e2.alpha, bloch_vec(e1), bloch_vec(e2)};
    const int iters = opt.bisection_iterations;
    auto slack = [&](double a) { return slack_at(pb, a, iters); };

    CompatibilityResult out;
    out.necessary_value = necessary_condition(e1, e2).value;
    out.alpha_min = std::max(0.0, pb.a1 + pb.a2 - 2.0);
    out.alpha_max = std::max(out.alpha_min, std::min(pb.a1, pb.a2));
    const double lo = out.alpha_min, hi = out.alpha_max;

    // Slack is concave in alpha: grid, then golden-section refinement around the best node.
    const int n = (hi > lo) ? std::max(opt.grid, 2) : 1;
    std::size_t best = 0;
    for (int i = 0; i < n; ++i) {
        const double a = (n == 1) ? lo : lo + (hi - lo) * i / (n - 1);
        out.scan.push_back({a, slack(a)});
        if (out.scan.back().slack > out.scan[best].slack) best = out.scan.size() - 1;
    }
    out.max_slack = out.scan[best].slack;
    out.alpha_at_max_slack = out.scan[best].alpha;
    if (n > 1) {
        double x0 = out.scan[best == 0 ? 0 : best - 1].alpha;
        double x1 = out.scan[std::min<std::size_t>(best + 1, n - 1)].alpha;
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = x1 - g * (x1 - x0), d = x0 + g * (x1 - x0);
        double fc = slack(c), fd = slack(d);
        for (int i = 0; i < 100 && x1 - x0 > 1e-15; ++i) {
            if (fc >= fd) {
                x1 = d; d = c; fd = fc;
                c = x1 - g * (x1 - x0); fc = slack(c);
            } else {
                x0 = c; c = d; fc = fd;
                d = x0 + g * (x1 - x0); fd = slack(d);
            }
        }
        const double a = (fc >= fd) ? c : d;
        const double s = std::max(fc, fd);
        if (s > out.max_slack) {
            out.max_slack = s;
            out.alpha_at_max_slack = a;
        }
    }

    if (out.max_slack < -opt.tol) {
        out.verdict = Verdict::Incompatible;
        return out;
    }

    // Largest alpha with nonnegative slack.
    double a_star = out.alpha_at_max_slack;
    if (out.max_slack >= 0.0) {
        if (slack(hi) >= 0.0) {
            a_star = hi;
        } else {
            double l = a_star, h = hi;
            for (int i = 0; i < iters; ++i) {
                const double mid = 0.5 * (l + h);
                (slack(mid) >= 0.0 ? l : h) = mid;
            }
            a_star = l;
        }
    }
    // Closed-form alphas that are often the exact optimum.
    std::vector<double> alphas{a_star};
    for (double a : {0.5 * (pb.a1 + pb.a2 - (pb.v1 - pb.v2).norm()), hi, lo}) {
        if (a >= lo && a <= hi && a >= a_star - 1e-9) alphas.push_back(a);
    }
    std::sort(alphas.begin(), alphas.end(), [](double x, double y) { return x > y; });

    const BlochVec mid = 0.5 * (pb.v1 + pb.v2);
    for (double a : alphas) {
        const auto v = closest_feasible(pb.disks(a), mid, opt.tol);
        if (!v) continue;
        try {
            JointPOVM g = joint_from_choice(e1, e2, a, *v, opt.tol);
            if (!validate_joint(g, e1, e2).ok(std::max(opt.tol, 1e-12))) continue;
            out.verdict = Verdict::Compatible;
            out.alpha = a;
            out.v = *v;
            out.joint = g;
            return out;
        } catch (const InfeasibleChoiceError&) {
        }
    }
    out.verdict = Verdict::Undetermined;
    return out;
}

}  // namespace planequant
