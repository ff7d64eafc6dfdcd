#include "planequant/json_io.hpp"

#include "planequant/errors.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace planequant {

namespace {

void check_object(const Json& j, const char* what, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) throw InputError(std::string(what) + ": unknown field \"" + key + "\"");
    }
}

double number(const Json& j, const char* key, const char* what) {
    if (!j.contains(key)) throw InputError(std::string(what) + ": missing field \"" + key + "\"");
    const Json& v = j.at(key);
    if (!v.is_number()) throw InputError(std::string(what) + ": field \"" + key + "\" must be a number");
    return v.get<double>();
}

double number_or(const Json& j, const char* key, const char* what, double fallback) {
    return j.contains(key) ? number(j, key, what) : fallback;
}

int integer(const Json& v, const char* what) {
    if (!v.is_number_integer()) throw InputError(std::string(what) + ": expected an integer");
    return v.get<int>();
}

double element(const Json& v, const char* what) {
    if (!v.is_number()) throw InputError(std::string(what) + ": expected a number");
    return v.get<double>();
}

const Json& array_field(const Json& j, const char* key, const char* what) {
    if (!j.contains(key)) throw InputError(std::string(what) + ": missing field \"" + key + "\"");
    const Json& v = j.at(key);
    if (!v.is_array()) throw InputError(std::string(what) + ": field \"" + key + "\" must be an array");
    return v;
}

SymMat2 sym_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 4) throw InputError(std::string(what) + ": expected 4 numbers");
    if (std::abs(element(j[1], what) - element(j[2], what)) > 1e-12) {
        throw DomainError(std::string(what) + ": matrix is not symmetric");
    }
    return SymMat2::from_matrix((Mat2() << element(j[0], what), element(j[1], what), element(j[2], what),
                                 element(j[3], what))
                                    .finished());
}

}  // namespace

Json load_json(const std::string& source) {
    std::string text = source;
    std::error_code ec;
    if (std::filesystem::is_regular_file(source, ec)) {
        std::ifstream in(source);
        if (!in) throw InputError("cannot read " + source);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError("malformed JSON (or missing file) '" + source + "': " + e.what());
    }
}

FourierFunction fourier_from_json(const Json& j) {
    check_object(j, "function", {"a0", "harmonics"});
    std::vector<Harmonic> h;
    if (j.contains("harmonics")) {
        for (const auto& item : array_field(j, "harmonics", "function")) {
            if (!item.is_array() || item.size() != 3) throw InputError("function: harmonic must be [k, ck, sk]");
            h.push_back({integer(item[0], "harmonic index"), element(item[1], "harmonic"), element(item[2], "harmonic")});
        }
    }
    return FourierFunction(number_or(j, "a0", "function", 0.0), std::move(h));
}

Json to_json(const FourierFunction& f) {
    Json h = Json::array();
    for (const auto& x : f.harmonics()) h.push_back({x.k, x.c, x.s});
    return {{"a0", f.a0()}, {"harmonics", h}};
}

Effect effect_from_json(const Json& j) {
    check_object(j, "effect", {"alpha", "phi", "r"});
    return {number(j, "alpha", "effect"), number(j, "phi", "effect"), number(j, "r", "effect")};
}

Json to_json(const Effect& e) { return {{"alpha", e.alpha}, {"phi", e.phi}, {"r", e.r}}; }

MeasurementScenario scenario_from_json(const Json& j) {
    check_object(j, "scenario", {"pointer", "beam", "device"});
    for (const char* key : {"pointer", "beam", "device"})
        if (!j.contains(key)) throw InputError(std::string("scenario: missing field \"") + key + "\"");
    const Json& p = j.at("pointer");
    const Json& b = j.at("beam");
    const Json& d = j.at("device");
    check_object(p, "pointer", {"s", "theta"});
    check_object(b, "beam", {"r", "phi"});
    check_object(d, "device", {"r", "phi"});
    return {PolarState(number(p, "s", "pointer"), number(p, "theta", "pointer")),
            PolarState(number(b, "r", "beam"), number(b, "phi", "beam")),
            DeviceSetting{number(d, "r", "device"), number(d, "phi", "device")}};
}

HaarGrid grid_from_json(const Json& j, const HaarGrid& defaults) {
    check_object(j, "grid", {"periodic_nodes", "polar_nodes"});
    HaarGrid g = defaults;
    if (j.contains("periodic_nodes")) g.periodic_nodes = integer(j.at("periodic_nodes"), "grid.periodic_nodes");
    if (j.contains("polar_nodes")) g.polar_nodes = integer(j.at("polar_nodes"), "grid.polar_nodes");
    return g;
}

VecX eta_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("eta: expected an array of numbers");
    VecX eta(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) eta(static_cast<Eigen::Index>(i)) = element(j[i], "eta");
    return eta;
}

EulerAngles euler_from_json(const Json& j) {
    check_object(j, "euler", {"n", "angles"});
    if (!j.contains("n")) throw InputError("euler: missing field \"n\"");
    const int n = integer(j.at("n"), "euler.n");
    std::vector<std::vector<double>> stages;
    for (const auto& st : array_field(j, "angles", "euler")) {
        if (!st.is_array()) throw InputError("euler: each stage must be an array");
        std::vector<double> v;
        for (const auto& x : st) v.push_back(element(x, "euler angle"));
        stages.push_back(std::move(v));
    }
    return EulerAngles(n, std::move(stages));
}

MatrixPolynomial polynomial_from_json(const Json& j) {
    check_object(j, "polynomial", {"constant", "terms"});
    MatrixPolynomial p;
    p.constant = number_or(j, "constant", "polynomial", 0.0);
    if (j.contains("terms")) {
        for (const auto& t : array_field(j, "terms", "polynomial")) {
            check_object(t, "polynomial term", {"coeff", "entries"});
            MatrixPolynomial::Term term;
            term.coeff = number(t, "coeff", "polynomial term");
            for (const auto& e : array_field(t, "entries", "polynomial term")) {
                if (!e.is_array() || e.size() != 2) throw InputError("polynomial term: entry must be [i, j]");
                term.entries.emplace_back(integer(e[0], "entry row"), integer(e[1], "entry column"));
            }
            p.terms.push_back(std::move(term));
        }
    }
    return p;
}

Json matrix_json(const SymMat2& m) { return Json::array({m.a, m.b, m.b, m.d}); }

Json matrix_json(const MatX& m) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k) out.push_back(m(i, k));
    return out;
}

Json to_json(const JointPOVM& g) {
    return {{"G11", matrix_json(g.g11)}, {"G10", matrix_json(g.g10)}, {"G01", matrix_json(g.g01)},
            {"G00", matrix_json(g.g00)}};
}

JointPOVM joint_from_json(const Json& j) {
    check_object(j, "joint", {"G11", "G10", "G01", "G00"});
    for (const char* key : {"G11", "G10", "G01", "G00"})
        if (!j.contains(key)) throw InputError(std::string("joint: missing field \"") + key + "\"");
    return {sym_from_json(j.at("G11"), "G11"), sym_from_json(j.at("G10"), "G10"), sym_from_json(j.at("G01"), "G01"),
            sym_from_json(j.at("G00"), "G00")};
}

Json to_json(const CompatibilityResult& r) {
    Json out = {{"verdict", to_string(r.verdict)},
                {"necessary_value", r.necessary_value},
                {"necessary_holds", r.necessary_value <= 2.0 + kDefaultTol},
                {"alpha_range", {r.alpha_min, r.alpha_max}},
                {"max_slack", r.max_slack},
                {"alpha_at_max_slack", r.alpha_at_max_slack}};
    if (r.alpha) out["alpha"] = *r.alpha;
    if (r.v) out["v"] = {r.v->x, r.v->y};
    if (r.joint) out["joint"] = to_json(*r.joint);
    if (r.verdict == Verdict::Incompatible) {
        Json scan = Json::array();
        for (const auto& s : r.scan) scan.push_back({s.alpha, s.slack});
        out["certificate"] = {{"alpha_scan", scan}};
    }
    return out;
}

}  // namespace planequant
