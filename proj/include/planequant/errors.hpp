#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace planequant {

// Parameter outside the mathematical domain of an operation (r > 1, bad arc, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Upper symbols and the weighted-norm identity need r > 0.
class SingularQuantizerError : public DomainError {
public:
    using DomainError::DomainError;
};

// A proposed (alpha, v) violates one of the four joint-positivity conditions.
class InfeasibleChoiceError : public DomainError {
public:
    InfeasibleChoiceError(std::string condition, const std::string& what)
        : DomainError(what), condition_(std::move(condition)) {}
    const std::string& condition() const noexcept { return condition_; }

private:
    std::string condition_;
};

// Haar grid would exceed the configured node budget.
class BudgetExceededError : public std::runtime_error {
public:
    BudgetExceededError(double estimated_nodes, double budget, const std::string& what)
        : std::runtime_error(what), estimated_nodes_(estimated_nodes), budget_(budget) {}
    double estimated_nodes() const noexcept { return estimated_nodes_; }
    double budget() const noexcept { return budget_; }

private:
    double estimated_nodes_;
    double budget_;
};

}  // namespace planequant
