#pragma once

#include <stdexcept>
#include <string>

namespace curs {

// Error taxonomy shared across the library. Each condition that callers are
// expected to handle gets its own type so CLI exit codes and tests can
// dispatch on it.

struct ConvergenceFailure : std::runtime_error {
    explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};

struct NotPositiveDefinite : std::runtime_error {
    explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

struct NotUnitary : std::runtime_error {
    explicit NotUnitary(const std::string& what) : std::runtime_error(what) {}
};

struct OddDimension : std::runtime_error {
    explicit OddDimension(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct NotLogConcave : std::runtime_error {
    explicit NotLogConcave(const std::string& what) : std::runtime_error(what) {}
};

struct NotIntegrable : std::runtime_error {
    explicit NotIntegrable(const std::string& what) : std::runtime_error(what) {}
};

struct Unsupported : std::runtime_error {
    explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedClosedForm : std::runtime_error {
    explicit UnsupportedClosedForm(const std::string& what) : std::runtime_error(what) {}
};

struct OddN : std::runtime_error {
    explicit OddN(const std::string& what) : std::runtime_error(what) {}
};

struct IterationBudgetExceeded : std::runtime_error {
    explicit IterationBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidConfig : std::runtime_error {
    explicit InvalidConfig(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace curs
