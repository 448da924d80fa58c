#pragma once

// Bessel J_nu and K_nu of integer order with derivatives, plus the closed-form
// radial integrals of their squares.

#include <cmath>
#include <cstdlib>
#include <string>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "errors.hpp"

namespace gbfiber::specfun {

inline constexpr int kMaxOrder = 25;
inline constexpr double kMaxArgument = 100.0;

struct BesselEval {
    int order;
    double argument;
    double value;
    double derivative;
};

namespace detail {

inline void check_domain(int nu, double x, const char* who) {
    if (!(x > 0.0) || x > kMaxArgument)
        throw DomainError(std::string(who) + ": argument " + std::to_string(x) +
                          " outside (0, 100]");
    if (std::abs(nu) > kMaxOrder)
        throw DomainError(std::string(who) + ": order " + std::to_string(nu) +
                          " outside [-25, 25]");
}

inline double parity(int nu) { return (nu % 2 == 0) ? 1.0 : -1.0; }

// Unchecked evaluations; used where a recurrence needs order 26.
inline double jn(int nu, double x) {
    if (nu < 0) return parity(nu) * boost::math::cyl_bessel_j(-nu, x);
    return boost::math::cyl_bessel_j(nu, x);
}

inline double kn(int nu, double x) {
    return boost::math::cyl_bessel_k(std::abs(nu), x);
}

inline double jn_prime(int nu, double x) {
    if (nu < 0) return parity(nu) * boost::math::cyl_bessel_j_prime(-nu, x);
    return boost::math::cyl_bessel_j_prime(nu, x);
}

inline double kn_prime(int nu, double x) {
    return boost::math::cyl_bessel_k_prime(std::abs(nu), x);
}

} // namespace detail

// Negative orders follow J_{-n} = (-1)^n J_n.
inline double bessel_j(int nu, double x) {
    detail::check_domain(nu, x, "bessel_j");
    return detail::jn(nu, x);
}

// Negative orders follow K_{-n} = K_n.
inline double bessel_k(int nu, double x) {
    detail::check_domain(nu, x, "bessel_k");
    return detail::kn(nu, x);
}

inline double bessel_j_prime(int nu, double x) {
    detail::check_domain(nu, x, "bessel_j_prime");
    return detail::jn_prime(nu, x);
}

inline double bessel_k_prime(int nu, double x) {
    detail::check_domain(nu, x, "bessel_k_prime");
    return detail::kn_prime(nu, x);
}

inline BesselEval eval_j(int nu, double x) {
    return {nu, x, bessel_j(nu, x), bessel_j_prime(nu, x)};
}

inline BesselEval eval_k(int nu, double x) {
    return {nu, x, bessel_k(nu, x), bessel_k_prime(nu, x)};
}

// int_0^rho r J_nu(U r / rho)^2 dr
inline double radial_j_square_integral(int nu, double U, double rho) {
    detail::check_domain(nu, U, "radial_j_square_integral");
    if (!(rho > 0.0)) throw DomainError("radial_j_square_integral: rho must be positive");
    const double j = detail::jn(nu, U);
    return 0.5 * rho * rho * (j * j - detail::jn(nu + 1, U) * detail::jn(nu - 1, U));
}

// int_rho^inf r K_nu(W r / rho)^2 dr
inline double radial_k_square_integral(int nu, double W, double rho) {
    detail::check_domain(nu, W, "radial_k_square_integral");
    if (!(rho > 0.0)) throw DomainError("radial_k_square_integral: rho must be positive");
    const double k = detail::kn(nu, W);
    const double value = -0.5 * rho * rho * (k * k - detail::kn(nu + 1, W) * detail::kn(nu - 1, W));
    if (!(value > 0.0))
        throw IntegrityError("radial_k_square_integral: non-positive result");
    return value;
}

} // namespace gbfiber::specfun
