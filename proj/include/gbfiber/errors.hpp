#pragma once

#include <stdexcept>
#include <string>

namespace gbfiber {

// Input outside the supported or physical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A computed quantity violates a guaranteed property (e.g. a norm integral
// that must be positive).
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative numerics (quadrature, root refinement) missed their tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Creation beyond the occupation cap of the truncated Fock space.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

} // namespace gbfiber
