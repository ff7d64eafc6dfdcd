// planequant: command-line access to the plane quantization toolkit.
//
// Exit codes: 0 success / Compatible, 1 negative result (Incompatible, failed check),
// 2 malformed input or missing file, 3 domain error, 4 Undetermined, 5 budget exceeded.

#include "planequant/errors.hpp"
#include "planequant/json_io.hpp"
#include "planequant/selftest.hpp"
#include "planequant/toeplitz_naimark.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace planequant;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kDomain = 3, kUndetermined = 4, kBudget = 5 };

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

SymMat2 parse_matrix(const std::string& text) {
    const Json j = load_json(text);
    if (!j.is_array() || j.size() != 4) throw InputError("matrix: expected [a, b, b, d] (row-major 2x2)");
    for (const auto& x : j)
        if (!x.is_number()) throw InputError("matrix: entries must be numbers");
    const double a = j[0], b = j[1], c = j[2], d = j[3];
    if (std::abs(b - c) > 1e-12) throw DomainError("matrix: input must be symmetric");
    return {a, b, d};
}

double default_son_tol(int n) { return n <= 2 ? 1e-12 : n == 3 ? 1e-8 : 1e-6; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum formalism on the Euclidean plane: quantization, POVMs, polarizers, SO(n)"};
    app.require_subcommand(1);
    std::uint64_t seed = 20240611;
    app.add_option("--seed", seed, "Seed for randomized sweeps (selftest)")->capture_default_str();

    // quantize
    auto* q = app.add_subcommand("quantize", "Quantize a trigonometric series with rho_{r, phi + phi0}");
    std::string q_fn;
    double q_r = 1.0, q_phi0 = 0.0;
    int q_nodes = 0;
    q->add_option("-f,--function", q_fn, "FourierFunction JSON (inline or file)")->required();
    q->add_option("--r", q_r, "Mixing parameter r in [0, 1]")->capture_default_str();
    q->add_option("--phi0", q_phi0, "Angle offset phi0")->capture_default_str();
    q->add_option("--trapezoid", q_nodes, "Use an N-point trapezoid rule instead of exact integrals");

    // symbol
    auto* sy = app.add_subcommand("symbol", "Lower or upper symbol of a symmetric matrix");
    std::string sy_kind, sy_matrix;
    double sy_r = 1.0, sy_phi0 = 0.0;
    sy->add_option("kind", sy_kind, "lower | upper")->required()->check(CLI::IsMember({"lower", "upper"}));
    sy->add_option("-m,--matrix", sy_matrix, "Row-major [a, b, b, d]")->required();
    sy->add_option("--r", sy_r, "Mixing parameter r")->capture_default_str();
    sy->add_option("--phi0", sy_phi0, "Angle offset phi0")->capture_default_str();

    // toeplitz
    auto* tp = app.add_subcommand("toeplitz", "Compression of M_f onto O_j versus the rank-one quantization");
    std::string tp_fn;
    int tp_j = 1;
    tp->add_option("-f,--function", tp_fn, "FourierFunction JSON")->required();
    tp->add_option("--j", tp_j, "Subspace index 1 or 2")->capture_default_str()->check(CLI::IsMember({1, 2}));

    // naimark
    auto* nk = app.add_subcommand("naimark", "Arc effect F([a, b]) against the compressed indicator");
    double nk_a = 0.0, nk_b = kTwoPi;
    std::string nk_partition;
    nk->add_option("--a", nk_a, "Arc start")->capture_default_str();
    nk->add_option("--b", nk_b, "Arc end")->capture_default_str();
    nk->add_option("--partition", nk_partition, "JSON list of arcs [[a, b], ...] for the additivity check");

    // compat
    auto* cp = app.add_subcommand("compat", "Joint measurability of two dichotomic POVMs");
    std::string cp_e1, cp_e2;
    double cp_tol = kDefaultTol;
    cp->add_option("--e1", cp_e1, "Effect JSON {alpha, phi, r}")->required();
    cp->add_option("--e2", cp_e2, "Effect JSON {alpha, phi, r}")->required();
    cp->add_option("--tol", cp_tol, "Decision tolerance")->capture_default_str();

    // sequential
    auto* sq = app.add_subcommand("sequential", "Two polarizers in sequence as a dichotomic POVM");
    double sq_first = 0.0, sq_second = 0.0;
    std::string sq_rho;
    sq->add_option("--first", sq_first, "Angle of the first (outer) projector")->required();
    sq->add_option("--second", sq_second, "Angle of the second projector")->required();
    sq->add_option("--rho", sq_rho, "Density matrix [a, b, b, d] for outcome probabilities");

    // polarizer
    auto* pz = app.add_subcommand("polarizer", "Pointer-beam polarizer measurement");
    std::string pz_sc;
    pz->add_option("-s,--scenario", pz_sc, "Scenario JSON {pointer, beam, device}")->required();

    // son-check
    auto* sc = app.add_subcommand("son-check", "Haar quadrature checks on SO(n)");
    int sc_n = 3;
    std::string sc_eta, sc_grid, sc_fn, sc_beta;
    std::optional<double> sc_tol;
    sc->add_option("--n", sc_n, "Dimension")->capture_default_str();
    sc->add_option("--eta", sc_eta, "JSON array eta (sum 0); default: zeros except +-0.2 at the ends");
    sc->add_option("--grid", sc_grid, "JSON {periodic_nodes, polar_nodes}; default 16 (n <= 3) or 8");
    sc->add_option("--function", sc_fn, "MatrixPolynomial JSON to quantize");
    sc->add_option("--beta", sc_beta, "Euler angles JSON {n, angles} for a covariance check of --function");
    sc->add_option("--tol", sc_tol, "Residual tolerance (default 1e-12, 1e-8, 1e-6 for n = 2, 3, >= 4)");

    // selftest
    auto* st = app.add_subcommand("selftest", "Run the acceptance suite");
    bool st_json = false;
    st->add_flag("--json", st_json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (q->parsed()) {
            const FourierFunction f = fourier_from_json(load_json(q_fn));
            const QuantizerConfig cfg{q_r, q_phi0};
            const IntegrationRule rule = q_nodes > 0 ? IntegrationRule::trapezoid(q_nodes) : IntegrationRule::exact();
            const SymMat2 a = quantize(f, cfg, rule);
            const DoubledFourier d = mean_and_doubled_fourier(f);
            const DoubledFourier ds = mean_and_doubled_fourier(f.shifted(q_phi0));
            emit({{"A", matrix_json(a)},
                  {"mean", d.mean},
                  {"Cc", d.cc},
                  {"Cs", d.cs},
                  {"Cc_shifted", ds.cc},
                  {"Cs_shifted", ds.cs},
                  {"r", q_r},
                  {"phi0", q_phi0},
                  {"integration", q_nodes > 0 ? "trapezoid" : "exact"}});
            return kOk;
        }
        if (sy->parsed()) {
            const SymMat2 a = parse_matrix(sy_matrix);
            const QuantizerConfig cfg{sy_r, sy_phi0};
            const FourierFunction f = sy_kind == "lower" ? lower_symbol(a, cfg) : upper_symbol(a, cfg);
            emit({{"kind", sy_kind}, {"function", to_json(f)}});
            return kOk;
        }
        if (tp->parsed()) {
            const FourierFunction f = fourier_from_json(load_json(tp_fn));
            const Mat2 c = toeplitz_compress(f, tp_j);
            const Mat2 d = rank_one_quantization(f, tp_j);
            emit({{"j", tp_j},
                  {"compressed", matrix_json(MatX(c))},
                  {"direct", matrix_json(MatX(d))},
                  {"residual", max_abs_diff(c, d)}});
            return kOk;
        }
        if (nk->parsed()) {
            if (!nk_partition.empty()) {
                const Json j = load_json(nk_partition);
                if (!j.is_array()) throw InputError("partition: expected [[a, b], ...]");
                std::vector<Arc> arcs;
                for (const auto& x : j) {
                    if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number()) {
                        throw InputError("partition: each arc must be [a, b]");
                    }
                    arcs.push_back({x[0].get<double>(), x[1].get<double>()});
                }
                const AdditivityReport rep = povm_additivity_check(arcs);
                emit({{"residual", rep.residual}, {"min_eigenvalue", rep.min_eigenvalue}, {"all_psd", rep.all_psd}});
                return kOk;
            }
            const Arc arc{nk_a, nk_b};
            const SymMat2 f = arc_effect(arc);
            emit({{"F", matrix_json(f)},
                  {"compressed", matrix_json(MatX(compressed_indicator(arc)))},
                  {"residual", naimark_arc_check(nk_a, nk_b)}});
            return kOk;
        }
        if (cp->parsed()) {
            const Effect e1 = effect_from_json(load_json(cp_e1));
            const Effect e2 = effect_from_json(load_json(cp_e2));
            CompatibilityOptions opt;
            opt.tol = cp_tol;
            const CompatibilityResult r = compatibility_decide(e1, e2, opt);
            Json out = to_json(r);
            out["effects"] = Json::array({to_json(e1), to_json(e2)});
            emit(out);
            switch (r.verdict) {
                case Verdict::Compatible: return kOk;
                case Verdict::Incompatible: return kNegative;
                case Verdict::Undetermined: return kUndetermined;
            }
        }
        if (sq->parsed()) {
            const DichotomicPOVM f = sequential_povm(sq_first, sq_second);
            Json out = {{"F_plus", matrix_json(f.plus)}, {"F_minus", matrix_json(f.minus())}};
            if (!sq_rho.empty()) {
                const OutcomeProbabilities p = sequential_probabilities(parse_matrix(sq_rho), sq_first, sq_second);
                out["p1"] = p.p1;
                out["p0"] = p.p0;
            }
            emit(out);
            return kOk;
        }
        if (pz->parsed()) {
            const MeasurementScenario s = scenario_from_json(load_json(pz_sc));
            const MeasurementResult m = measure(s);
            emit({{"p_parallel", m.p_parallel},
                  {"p_perp", m.p_perp},
                  {"closed_form_parallel", malus_parallel(s)},
                  {"post_state", matrix_json(MatX(m.post_state))}});
            return kOk;
        }
        if (sc->parsed()) {
            const SonLimits limits = SonLimits::from_environment();
            const HaarGrid grid =
                sc_grid.empty() ? HaarGrid::defaults(sc_n) : grid_from_json(load_json(sc_grid), HaarGrid::defaults(sc_n));
            // Cost check before anything else, so oversized requests fail fast.
            check_grid(sc_n, grid, limits);
            VecX eta = VecX::Zero(sc_n);
            if (sc_eta.empty()) {
                eta(0) = 0.2;
                eta(sc_n - 1) = -0.2;
            } else {
                eta = eta_from_json(load_json(sc_eta));
                if (eta.size() != sc_n) throw DomainError("eta: expected " + std::to_string(sc_n) + " components");
            }
            validate_eta(eta);
            const double tol = sc_tol.value_or(default_son_tol(sc_n));
            const VolumeReport vol = haar_volume(sc_n, grid, limits);
            const double id = resolution_identity_n(eta, grid, MatX(), limits);
            const OrthonormalityNReport orth = matrix_element_orthonormality_n(sc_n, grid, seed, 10, limits);
            Json out = {{"n", sc_n},
                        {"grid", {{"periodic_nodes", grid.periodic_nodes}, {"polar_nodes", grid.polar_nodes}}},
                        {"nodes", grid.node_count(sc_n)},
                        {"volume",
                         {{"quadrature", vol.quadrature},
                          {"product_from_2", vol.product_from_2},
                          {"product_from_1", vol.product_from_1},
                          {"matches", vol.matches}}},
                        {"identity_residual", id},
                        {"orthonormality_residual", orth.max_residual},
                        {"schur_residual", orth.schur_residual},
                        {"density_residual", orth.max_density_residual},
                        {"tolerance", tol}};
            bool pass = id <= tol && orth.max_residual <= tol && orth.max_density_residual <= tol;
            if (!sc_fn.empty()) {
                const MatrixPolynomial p = polynomial_from_json(load_json(sc_fn));
                p.validate(sc_n);
                const QuantizedN qn = quantize_n(p, eta, MatX(), grid, limits);
                out["quantized"] = {{"A", matrix_json(qn.a)}, {"mean", qn.mean}};
                if (!sc_beta.empty()) {
                    const EulerAngles beta = euler_from_json(load_json(sc_beta));
                    if (beta.n() != sc_n) throw DomainError("beta: dimension mismatch");
                    const double cov = covariance_check_n(p, rotation_from_euler(beta), eta, grid, limits);
                    out["covariance_residual"] = cov;
                    pass = pass && cov <= tol;
                }
            }
            out["pass"] = pass;
            emit(out);
            return pass ? kOk : kNegative;
        }
        if (st->parsed()) {
            AcceptanceOptions opt;
            opt.seed = seed;
            const auto results = run_acceptance(opt);
            bool all = true;
            Json items = Json::array();
            for (const auto& r : results) {
                all = all && r.pass;
                items.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail},
                                 {"seconds", r.seconds}});
            }
            if (st_json) {
                emit({{"pass", all}, {"criteria", items}});
            } else {
                for (const auto& r : results) std::cout << format_line(r) << '\n';
                std::cout << (all ? "all criteria passed" : "some criteria failed") << '\n';
            }
            return all ? kOk : kNegative;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << " (estimated nodes " << e.estimated_nodes() << ")\n";
        return kBudget;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomain;
    }
    return kOk;
}
