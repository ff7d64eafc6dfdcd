#pragma once

// JSON schemas shared by the command-line tool and the tests. Matrices are written
// row-major as flat arrays; angles are radians.

#include "planequant/circle_quantizer.hpp"
#include "planequant/polarizer_sim.hpp"
#include "planequant/povm_compat.hpp"
#include "planequant/son_quantizer.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace planequant {

using Json = nlohmann::ordered_json;

// Malformed or unreadable input (bad syntax, wrong types, unknown or missing fields).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parses text; a path is read when `source` names an existing file, otherwise the
// text itself must be JSON. Throws InputError.
Json load_json(const std::string& source);

// {"a0": x, "harmonics": [[k, ck, sk], ...]}
FourierFunction fourier_from_json(const Json& j);
Json to_json(const FourierFunction& f);

// {"alpha": x, "phi": x, "r": x}; only the shape is checked here.
Effect effect_from_json(const Json& j);
Json to_json(const Effect& e);

// {"pointer": {"s", "theta"}, "beam": {"r", "phi"}, "device": {"r", "phi"}}
MeasurementScenario scenario_from_json(const Json& j);

// {"periodic_nodes": m, "polar_nodes": m}, either field optional
HaarGrid grid_from_json(const Json& j, const HaarGrid& defaults);

// [eta_1, ..., eta_n]
VecX eta_from_json(const Json& j);

// {"n": n, "angles": [[phi_1^1], [phi_1^2, phi_2^2], ...]}
EulerAngles euler_from_json(const Json& j);

// {"constant": c, "terms": [{"coeff": x, "entries": [[i, j], ...]}, ...]}, 1-based indices
MatrixPolynomial polynomial_from_json(const Json& j);

Json matrix_json(const SymMat2& m);
Json matrix_json(const MatX& m);
Json to_json(const JointPOVM& g);
Json to_json(const CompatibilityResult& r);
JointPOVM joint_from_json(const Json& j);

}  // namespace planequant
