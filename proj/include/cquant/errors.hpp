#pragma once

#include <stdexcept>
#include <string>

namespace cquant {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A Voronoi cell with zero probability mass was asked for a conditional mean.
class DegenerateCellError : public DomainError {
public:
    using DomainError::DomainError;
};

// A theorem hypothesis required by the operation does not hold.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Error-sequence tail that cannot be fitted by the power-law model.
class IllConditionedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cquant
