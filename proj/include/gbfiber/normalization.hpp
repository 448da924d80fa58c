#pragma once

// Closed forms of the normalization integrals I1 (physical) and I2
// (gauge/ghost).

#include <cmath>

#include "fiber_types.hpp"
#include "specfun.hpp"

namespace gbfiber::kg {

using fiber::DispersionPoint;
using fiber::FiberSpec;

// Four-term sum over the (m+1, m-1) profiles in core and cladding.
inline double normalization_i1(const FiberSpec& spec, const DispersionPoint& p, int m) {
    const auto t = fiber::bessel_terms(m, p.U, p.W);
    const auto shape = fiber::physical_shape(spec, p, m);
    const double rho = spec.core_radius;
    const double n1 = spec.index_sq(true);
    const double n2 = spec.index_sq(false);
    const double b2 = p.beta * p.beta;
    const double w2 = p.omega * p.omega;
    const double c = shape.c;
    const double y = shape.y;

    double sum = 0.0;
    for (int s : {+1, -1}) {
        const double ang = b2 * c + s * w2 * y;
        const double core = n1 / (2.0 * p.U * p.U * b2) * ang * (n1 * c + s * y) *
                            specfun::radial_j_square_integral(m + s, p.U, rho) / (t.J * t.J);
        const double clad = n2 / (2.0 * p.W * p.W * b2) * ang * (n2 * c + s * y) *
                            specfun::radial_k_square_integral(m + s, p.W, rho) / (t.K * t.K);
        sum += core + clad;
    }
    if (!(sum > 0.0)) throw IntegrityError("normalization I1 is not positive");
    return sum;
}

inline double normalization_i2(const FiberSpec& spec, const DispersionPoint& p, int m) {
    const auto t = fiber::bessel_terms(m, p.U, p.W);
    const double rho = spec.core_radius;
    const double uj = p.U * t.jp / t.J;
    const double wk = p.W * t.kratio();
    const double value = spec.index_sq(true) * uj * uj + spec.index_sq(false) * wk * wk +
                         spec.contrast() * (1.0 - m * m * rho * rho * p.beta * p.beta /
                                                      (p.U * p.U * p.W * p.W));
    if (!(value > 0.0)) throw IntegrityError("normalization I2 is not positive");
    return value;
}

// First line of the I2 definition, with the closed-form radial integrals.
inline double normalization_i2_integral_form(const FiberSpec& spec, const DispersionPoint& p, int m) {
    const auto t = fiber::bessel_terms(m, p.U, p.W);
    const double rho = spec.core_radius;
    return 2.0 / (rho * rho) *
           (spec.index_sq(true) * specfun::radial_j_square_integral(m, p.U, rho) / (t.J * t.J) +
            spec.index_sq(false) * specfun::radial_k_square_integral(m, p.W, rho) / (t.K * t.K));
}

inline double normalization_factor(double rho, double beta, double omega, double integral) {
    return 2.0 * M_PI * rho * beta * std::sqrt(2.0 * omega * integral);
}

} // namespace gbfiber::kg
