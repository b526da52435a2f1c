// errors.hpp: exception types shared by all bathforge modules

#pragma once

#include <stdexcept>
#include <string>

namespace bathforge {

// A query outside the mathematical domain of an operation (out-of-support
// spectrum lookups, omega <= 0 occupancies, atoms above the band edge, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical procedure failed to reach its tolerance (quadrature, PV
// extrapolation, regulator extrapolation, ill-posed inversions).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bathforge
