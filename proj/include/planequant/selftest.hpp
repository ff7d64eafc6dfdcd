#pragma once

// The acceptance suite: ten checks with pinned tolerances, run by the `acceptance`
// test and by `planequant selftest`.

#include <cstdint>
#include <string>
#include <vector>

namespace planequant {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 20240611;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

// "PASS  3  Upper/lower symbol round trips  (detail)"
std::string format_line(const CriterionResult& r);

}  // namespace planequant
