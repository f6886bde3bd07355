#pragma once

#include <stdexcept>
#include <string>

namespace seca {

// Error taxonomy shared by every module. Each maps onto the closest standard
// exception so callers can catch either the specific or the std base type.

/// Requested size exceeds a hard cap (qubit count, enumeration size, cut budget).
class CapacityError : public std::length_error {
public:
    explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

/// Qubit or parameter index outside its register.
class IndexError : public std::out_of_range {
public:
    explicit IndexError(const std::string& what) : std::out_of_range(what) {}
};

/// Malformed argument: mismatched sizes, odd qubit counts, bad ranges.
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Mathematically undefined quantity (zero baseline, E_VQE == E_inf).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Non-finite value produced during a computation.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace seca
