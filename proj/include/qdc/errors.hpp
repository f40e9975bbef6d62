#pragma once

#include <stdexcept>
#include <string>

namespace qdc {

/// Argument outside the mathematical domain of an operation (bad parameter
/// range, empty index set, non-Hermitian input, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Matrix dimension not a power of two or beyond the 5-qubit ceiling.
class SizeError : public std::length_error {
public:
    explicit SizeError(const std::string& what) : std::length_error(what) {}
};

/// Eigenvalue below the numerical PSD floor.
class PsdError : public std::domain_error {
public:
    explicit PsdError(const std::string& what) : std::domain_error(what) {}
};

/// Non-finite objective or other numerical breakdown.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qdc
