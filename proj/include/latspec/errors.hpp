#pragma once

#include <stdexcept>
#include <string>

namespace latspec {

// Quadrature non-convergence, cross-method disagreement, failed root brackets.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Root finder and table disagree on an eigenvalue count. Always a bug.
class ConsistencyError : public NumericError {
public:
    explicit ConsistencyError(const std::string& what) : NumericError(what) {}
};

}  // namespace latspec
