#include "planequant/son_quantizer.hpp"

#include "planequant/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

namespace planequant {

namespace {

struct StageNode {
    MatX s;
    double w;
};

// Nodes of one Euler stage (k angles) with their quadrature weights.
std::vector<StageNode> stage_nodes(int k, int n, const HaarGrid& grid) {
    std::vector<double> pn(grid.periodic_nodes), pw(grid.periodic_nodes, kTwoPi / grid.periodic_nodes);
    for (int i = 0; i < grid.periodic_nodes; ++i) pn[i] = kTwoPi * i / grid.periodic_nodes;
    auto [gx, gw] = gauss_legendre(grid.polar_nodes);
    for (std::size_t i = 0; i < gx.size(); ++i) {
        gx[i] = 0.5 * kPi * (gx[i] + 1.0);
        gw[i] *= 0.5 * kPi;
    }

    std::vector<StageNode> out;
    std::vector<int> idx(k, 0);
    std::vector<double> phi(k);
    while (true) {
        double w = 1.0;
        for (int j = 1; j <= k; ++j) {
            if (j == 1) {
                phi[0] = pn[idx[0]];
                w *= pw[idx[0]];
            } else {
                phi[j - 1] = gx[idx[j - 1]];
                w *= gw[idx[j - 1]] * std::pow(std::sin(phi[j - 1]), j - 1);
            }
        }
        out.push_back({euler_stage(k, phi, n), w});
        int pos = k - 1;
        while (pos >= 0) {
            const int limit = (pos == 0) ? grid.periodic_nodes : grid.polar_nodes;
            if (++idx[pos] < limit) break;
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

double quadrature_volume(int n, const HaarGrid& grid, const SonLimits& limits) {
    double vol = 0.0;
    for_each_haar_node(n, grid, [&](const MatX&, double w) { vol += w; }, limits);
    return vol;
}

}  // namespace

EulerAngles::EulerAngles(int n) : n_(n) {
    if (n < 2) throw DomainError("EulerAngles: n must be >= 2");
    for (int k = 1; k < n; ++k) stages_.emplace_back(k, 0.0);
}

EulerAngles::EulerAngles(int n, std::vector<std::vector<double>> stages) : n_(n), stages_(std::move(stages)) {
    if (n < 2) throw DomainError("EulerAngles: n must be >= 2");
    if (static_cast<int>(stages_.size()) != n - 1) {
        throw DomainError("EulerAngles: expected " + std::to_string(n - 1) + " stages");
    }
    for (int k = 1; k < n; ++k) {
        const auto& st = stages_[k - 1];
        if (static_cast<int>(st.size()) != k) {
            throw DomainError("EulerAngles: stage " + std::to_string(k) + " needs " + std::to_string(k) + " angles");
        }
        for (int j = 1; j <= k; ++j) {
            const double upper = (j == 1) ? kTwoPi : kPi;
            if (!(st[j - 1] >= 0.0 && st[j - 1] < upper)) {
                throw DomainError("EulerAngles: phi_" + std::to_string(j) + "^" + std::to_string(k) +
                                  " = " + std::to_string(st[j - 1]) + " out of range");
            }
        }
    }
}

MatX elementary_rotation(int k, double phi, int n) {
    if (k < 1 || k > n - 1) throw DomainError("elementary_rotation: k = " + std::to_string(k) + " out of range");
    MatX r = MatX::Identity(n, n);
    const double c = std::cos(phi), s = std::sin(phi);
    r(k - 1, k - 1) = c;
    r(k - 1, k) = -s;
    r(k, k - 1) = s;
    r(k, k) = c;
    return r;
}

MatX euler_stage(int k, const std::vector<double>& phi, int n) {
    MatX r = MatX::Identity(n, n);
    for (int j = 1; j <= k; ++j) r = r * elementary_rotation(j, phi.at(j - 1), n);
    return r;
}

MatX rotation_from_euler(const EulerAngles& e) {
    const int n = e.n();
    MatX r = MatX::Identity(n, n);
    for (int k = n - 1; k >= 1; --k) r = r * euler_stage(k, e.stages()[k - 1], n);
    return r;
}

void validate_eta(const VecX& eta, double tol) {
    const int n = static_cast<int>(eta.size());
    if (n < 2) throw DomainError("eta: need at least 2 components");
    if (std::abs(eta.sum()) > tol) throw DomainError("eta: components must sum to 0");
    for (int i = 0; i < n; ++i) {
        if (!(eta(i) >= -1.0 / n - tol && eta(i) <= 1.0 - 1.0 / n + tol)) {
            throw DomainError("eta: component " + std::to_string(i) + " outside [-1/n, 1 - 1/n]");
        }
    }
}

MatX density_n(const VecX& eta, const MatX& rotation) {
    validate_eta(eta);
    const int n = static_cast<int>(eta.size());
    if (rotation.rows() != n || rotation.cols() != n) throw DomainError("density_n: size mismatch");
    return MatX::Identity(n, n) / n + rotation * eta.asDiagonal() * rotation.transpose();
}

MatX density_n(const VecX& eta, const EulerAngles& e) { return density_n(eta, rotation_from_euler(e)); }

HaarGrid HaarGrid::defaults(int n) {
    if (n >= 4) return {8, 8};
    return {16, 16};
}

double HaarGrid::node_count(int n) const {
    const int periodic = n - 1;
    const int polar = EulerAngles::count(n) - periodic;
    return std::pow(static_cast<double>(periodic_nodes), periodic) * std::pow(static_cast<double>(polar_nodes), polar);
}

SonLimits SonLimits::from_environment() {
    SonLimits out;
    if (const char* env = std::getenv("PLANEQUANT_NODE_BUDGET")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0) out.node_budget = v;
    }
    return out;
}

void check_grid(int n, const HaarGrid& grid, const SonLimits& limits) {
    if (n < 2) throw DomainError("SO(n): n must be >= 2");
    if (grid.periodic_nodes < 1 || grid.polar_nodes < 1) throw DomainError("SO(n): node counts must be positive");
    const double nodes = grid.node_count(n);
    if (n > limits.max_n) {
        throw BudgetExceededError(nodes, limits.node_budget,
                                  "SO(" + std::to_string(n) + "): n above the supported maximum " +
                                      std::to_string(limits.max_n) + " (grid would need " +
                                      std::to_string(nodes) + " nodes)");
    }
    if (nodes > limits.node_budget) {
        throw BudgetExceededError(nodes, limits.node_budget,
                                  "SO(" + std::to_string(n) + "): grid needs " + std::to_string(nodes) +
                                      " nodes, budget is " + std::to_string(limits.node_budget));
    }
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m) {
    if (m < 1) throw DomainError("gauss_legendre: need at least one node");
    std::vector<double> x(m), w(m);
    for (int i = 0; i < m; ++i) {
        // Chebyshev-like start, Newton on P_m.
        double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // Recompute the derivative at the converged root.
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= m; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = m * (z * p1 - p0) / (z * z - 1.0);
        x[m - 1 - i] = z;
        w[m - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

void for_each_haar_node(int n, const HaarGrid& grid, const std::function<void(const MatX&, double)>& visit,
                        const SonLimits& limits) {
    check_grid(n, grid, limits);
    // stages[d] is stage k = n-1-d; R = S_{n-1} ... S_1 is built left to right.
    std::vector<std::vector<StageNode>> stages;
    for (int k = n - 1; k >= 1; --k) stages.push_back(stage_nodes(k, n, grid));
    const int depth = n - 1;
    std::vector<MatX> prefix(depth + 1, MatX::Identity(n, n));
    std::vector<double> weight(depth + 1, 1.0);
    std::vector<std::size_t> idx(depth, 0);
    int from = 0;
    while (true) {
        for (int d = from; d < depth; ++d) {
            const StageNode& node = stages[d][idx[d]];
            prefix[d + 1].noalias() = prefix[d] * node.s;
            weight[d + 1] = weight[d] * node.w;
        }
        visit(prefix[depth], weight[depth]);
        int pos = depth - 1;
        while (pos >= 0) {
            if (++idx[pos] < stages[pos].size()) break;
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        from = pos;
    }
}

double sphere_area(int i) {
    if (i < 1) throw DomainError("sphere_area: i must be >= 1");
    return 2.0 * std::pow(kPi, 0.5 * i) / std::tgamma(0.5 * i);
}

VolumeReport haar_volume(int n, const HaarGrid& grid, const SonLimits& limits) {
    VolumeReport out;
    out.quadrature = quadrature_volume(n, grid, limits);
    out.product_from_2 = 1.0;
    for (int i = 2; i <= n; ++i) out.product_from_2 *= sphere_area(i);
    out.product_from_1 = out.product_from_2 * sphere_area(1);
    auto close = [&](double ref) { return std::abs(out.quadrature - ref) <= 1e-6 * ref; };
    out.matches = close(out.product_from_2) ? "from_2" : close(out.product_from_1) ? "from_1" : "none";
    return out;
}

double resolution_identity_n(const VecX& eta, const HaarGrid& grid, const MatX& phi0, const SonLimits& limits) {
    const int n = static_cast<int>(eta.size());
    const MatX r0 = phi0.size() == 0 ? MatX::Identity(n, n) : phi0;
    const MatX rho0 = density_n(eta, r0);
    const double c = quadrature_volume(n, grid, limits) / n;
    MatX acc = MatX::Zero(n, n);
    for_each_haar_node(n, grid, [&](const MatX& r, double w) { acc.noalias() += (w / c) * (r * rho0 * r.transpose()); },
                       limits);
    return max_abs_diff(acc, MatX::Identity(n, n));
}

OrthonormalityNReport matrix_element_orthonormality_n(int n, const HaarGrid& grid, std::uint64_t seed,
                                                      int random_etas, const SonLimits& limits) {
    const double c = quadrature_volume(n, grid, limits) / n;
    const int m = n * n;
    std::vector<VecX> etas;
    for (int t = 0; t < random_etas; ++t) etas.push_back(random_eta(n, seed + t));
    MatX gram = MatX::Zero(m, m);
    std::vector<MatX> dens(etas.size(), MatX::Zero(n, n));
    for_each_haar_node(
        n, grid,
        [&](const MatX& r, double w) {
            // Column-major flattening: entry (i, j) -> i + n j.
            const Eigen::Map<const VecX> flat(r.data(), m);
            gram.noalias() += (w / c) * flat * flat.transpose();
            for (std::size_t t = 0; t < etas.size(); ++t)
                dens[t].noalias() += (w / c) * (r * etas[t].asDiagonal() * r.transpose());
        },
        limits);
    OrthonormalityNReport out;
    out.schur_residual = max_abs_diff(gram, MatX::Identity(m, m));
    if (n >= 3) {
        out.max_residual = out.schur_residual;
    } else {
        auto at = [&](int i, int j, int k, int l) { return gram(i + n * j, k + n * l); };
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) {
                    out.max_residual = std::max(out.max_residual, std::abs(at(j, i, j, k) - (i == k ? 1.0 : 0.0)));
                    for (int l = 0; l < n; ++l) {
                        if (l == j) continue;
                        out.max_residual = std::max(out.max_residual, std::abs(at(j, i, l, k) + at(l, i, j, k)));
                    }
                }
    }
    for (const auto& d : dens) out.max_density_residual = std::max(out.max_density_residual, d.cwiseAbs().maxCoeff());
    return out;
}

QuantizedN quantize_n(const GroupFunction& f, const VecX& eta, const MatX& phi0, const HaarGrid& grid,
                      const SonLimits& limits) {
    validate_eta(eta);
    const int n = static_cast<int>(eta.size());
    const MatX r0 = phi0.size() == 0 ? MatX::Identity(n, n) : phi0;
    if (r0.rows() != n || r0.cols() != n) throw DomainError("quantize_n: phi0 size mismatch");
    const double vol = quadrature_volume(n, grid, limits);
    const double c = vol / n;
    QuantizedN out;
    out.a = MatX::Zero(n, n);
    MatX g(n, n);
    double fsum = 0.0;
    for_each_haar_node(
        n, grid,
        [&](const MatX& r, double w) {
            const double fw = f(r) * w;
            fsum += fw;
            g.noalias() = r * r0;
            out.a.noalias() += (fw / c) * (g * eta.asDiagonal() * g.transpose());
        },
        limits);
    out.a += (fsum / c / n) * MatX::Identity(n, n);
    out.mean = fsum / vol;
    out.integral_c = fsum / c;
    return out;
}

double covariance_check_n(const GroupFunction& f, const MatX& beta, const VecX& eta, const HaarGrid& grid,
                          const SonLimits& limits) {
    const int n = static_cast<int>(eta.size());
    const MatX id = MatX::Identity(n, n);
    const MatX a = quantize_n(f, eta, id, grid, limits).a;
    const MatX bt = beta.transpose();
    const GroupFunction shifted = [&](const MatX& r) { return f(bt * r); };
    const MatX b = quantize_n(shifted, eta, id, grid, limits).a;
    return max_abs_diff(beta * a * bt, b);
}

double MatrixPolynomial::operator()(const MatX& r) const {
    double v = constant;
    for (const auto& t : terms) {
        double p = t.coeff;
        for (const auto& [i, j] : t.entries) p *= r(i - 1, j - 1);
        v += p;
    }
    return v;
}

void MatrixPolynomial::validate(int n) const {
    for (const auto& t : terms)
        for (const auto& [i, j] : t.entries)
            if (i < 1 || i > n || j < 1 || j > n) {
                throw DomainError("MatrixPolynomial: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ") outside 1.." + std::to_string(n));
            }
}

VecX random_eta(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    VecX lambda(n);
    for (int i = 0; i < n; ++i) lambda(i) = u(rng);
    lambda /= lambda.sum();
    VecX eta = lambda.array() - 1.0 / n;
    eta(n - 1) = -eta.head(n - 1).sum();
    return eta;
}

}  // namespace planequant
