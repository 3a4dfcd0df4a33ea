#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace smm {

// Argument outside the mathematical domain of an operation (negative age,
// uniform draw outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Request for a transition j from i with j equivalent to i.
class InvalidTransition : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Model parameters violating one of the standing assumptions.
class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation that needs another result first (u before pi, ...).
class DependencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Explicitly out-of-scope feature (risk aversion > 0 in the HJB solve).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite values produced by a quadrature or operator application.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, std::vector<double> ratios)
        : std::runtime_error(what), ratios_(std::move(ratios)) {}

    const std::vector<double>& ratios() const noexcept { return ratios_; }

private:
    std::vector<double> ratios_;
};

// Aggregated configuration problems; each entry is already formatted with
// file and line information.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

}  // namespace smm
