#pragma once

// Reduced Klein-Gordon products of modes sharing (beta, m), quadrature
// versions of the normalization integrals, and orthogonality reports.
//
// Reported products are the coefficient of delta_{mm'} delta(beta - beta'),
// i.e. the radial integral times (2 pi)^2.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "fiber_modes.hpp"
#include "normalization.hpp"
#include "quadrature.hpp"

namespace gbfiber::kg {

using fiber::cplx;
using fiber::ModeSolution;

inline constexpr double kQuadratureTolerance = 1e-13;
inline const double kDeltaWeight = 4.0 * M_PI * M_PI;

struct ReducedProduct {
    cplx bulk{};
    cplx interface{};
    cplx total{};
};

namespace detail {

inline void check_pair(const ModeSolution& a, const ModeSolution& b) {
    if (a.key.m != b.key.m) throw DomainError("KG product: modes must share m");
    if (std::abs(a.point.beta - b.point.beta) > 1e-12 * std::abs(a.point.beta))
        throw DomainError("KG product: modes must share beta");
    if (a.fiber.n_core != b.fiber.n_core || a.fiber.n_clad != b.fiber.n_clad ||
        a.fiber.core_radius != b.fiber.core_radius || a.potential != b.potential)
        throw DomainError("KG product: modes must live in the same fiber");
}

inline cplx time_phase(const ModeSolution& a, const ModeSolution& b, double t) {
    return std::exp(cplx(0.0, (a.point.omega - b.point.omega) * t));
}

// Integrates f over the core and over a cladding tail long enough for both
// modes to decay.
template <class F>
cplx radial_integral(const ModeSolution& a, const ModeSolution& b, F&& f) {
    const double rho = a.fiber.core_radius;
    const double w = std::min(a.point.W, b.point.W);
    const auto core = quadrature::integrate(f, 0.0, rho, kQuadratureTolerance);
    const auto clad = quadrature::integrate_pieces(f, quadrature::tail_breaks(rho, w),
                                                   kQuadratureTolerance);
    return core.value + clad.value;
}

// Bulk and interface terms without the (2 pi)^2 weight or time phase.
inline ReducedProduct raw_product(const ModeSolution& a, const ModeSolution& b) {
    const double rho = a.fiber.core_radius;
    auto integrand = [&](double r) {
        const auto fa = fiber::sample_field(a, r);
        const auto fb = fiber::sample_field(b, r);
        const double n2 = a.fiber.index_sq(r <= rho);
        const cplx s = -n2 * std::conj(fa.a[fiber::kT]) * fb.a[fiber::kT] +
                       std::conj(fa.a[fiber::kPar]) * fb.a[fiber::kPar] +
                       std::conj(fa.a[fiber::kPlus]) * fb.a[fiber::kPlus] +
                       std::conj(fa.a[fiber::kMinus]) * fb.a[fiber::kMinus];
        return r * n2 * s;
    };
    const double scale = a.coeffs.momentum_scale;
    ReducedProduct out;
    out.bulk = scale * (a.point.omega + b.point.omega) * radial_integral(a, b, integrand);

    auto jump_term = [&](double r) {
        const auto fa = fiber::sample_field(a, r);
        const auto fb = fiber::sample_field(b, r);
        const cplx ra = (fa.a[fiber::kPlus] + fa.a[fiber::kMinus]) / std::sqrt(2.0);
        const cplx rb = (fb.a[fiber::kPlus] + fb.a[fiber::kMinus]) / std::sqrt(2.0);
        const double n2 = a.fiber.index_sq(r <= rho);
        return n2 * (std::conj(fa.a[fiber::kT]) * rb - fb.a[fiber::kT] * std::conj(ra));
    };
    const double outside = std::nextafter(rho, 2.0 * rho);
    out.interface = scale * cplx(0.0, rho) * (jump_term(rho) - jump_term(outside));
    out.total = out.bulk + out.interface;
    return out;
}

} // namespace detail

// Bulk plus interface form of the product of two modes sharing (beta, m),
// evaluated at time t.
inline ReducedProduct reduced_kg_product(const ModeSolution& a, const ModeSolution& b,
                                         double t = 0.0) {
    detail::check_pair(a, b);
    auto r = detail::raw_product(a, b);
    const cplx w = kDeltaWeight * detail::time_phase(a, b, t);
    r.bulk *= w;
    r.interface *= w;
    r.total = r.bulk + r.interface;
    return r;
}

// The same product from the potential and momentum profiles,
// i int r [conj(a . pi') - a' . pi] dr. A conjugated mode has labels
// (-beta, -m, -omega), so a mixed pair vanishes by the beta delta.
inline cplx kg_product_momentum_route(const ModeSolution& a, const ModeSolution& b, double t = 0.0,
                                      bool conj_a = false, bool conj_b = false) {
    detail::check_pair(a, b);
    if (conj_a != conj_b) return 0.0;
    auto integrand = [&](double r) {
        auto fa = fiber::sample_field(a, r);
        auto fb = fiber::sample_field(b, r);
        if (conj_a) {
            for (auto* arr : {&fa.a, &fa.pi, &fb.a, &fb.pi})
                for (auto& v : *arr) v = std::conj(v);
        }
        cplx s = 0.0;
        for (int k = 0; k < 4; ++k) s += std::conj(fa.a[k] * fb.pi[k]) - fb.a[k] * fa.pi[k];
        return r * s;
    };
    const double sign = conj_a ? -1.0 : 1.0;
    const cplx phase = std::exp(cplx(0.0, sign * (a.point.omega - b.point.omega) * t));
    return kDeltaWeight * phase * cplx(0.0, 1.0) * detail::radial_integral(a, b, integrand);
}

namespace detail {

inline ModeSolution unnormalized(const fiber::FiberSpec& spec, const fiber::DispersionPoint& p,
                                 int m, fiber::ModeFamily family) {
    ModeSolution s;
    s.fiber = spec;
    s.key = fiber::ModeKey{family, p.beta, m, 1};
    s.point = p;
    s.coeffs.q = fiber::raw_coefficients(spec, p, m, family);
    s.coeffs.p = fiber::momentum_from_q(spec, p, s.coeffs.q);
    s.coeffs.norm_factor = 1.0;
    return s;
}

} // namespace detail

// I1 from the KG self-product of the unnormalized physical mode.
inline double normalization_i1_quadrature(const fiber::FiberSpec& spec,
                                          const fiber::DispersionPoint& p, int m) {
    const auto mode = detail::unnormalized(spec, p, m, fiber::ModeFamily::Physical);
    const auto r = detail::raw_product(mode, mode);
    return r.total.real() / (2.0 * spec.core_radius * spec.core_radius * p.beta * p.beta * p.omega);
}

// I2 from the KG product of the unnormalized ghost and gauge modes.
inline double normalization_i2_quadrature(const fiber::FiberSpec& spec,
                                          const fiber::DispersionPoint& p, int m) {
    const auto ghost = detail::unnormalized(spec, p, m, fiber::ModeFamily::Ghost);
    const auto gauge = detail::unnormalized(spec, p, m, fiber::ModeFamily::Gauge);
    const auto r = detail::raw_product(ghost, gauge);
    return r.total.real() / (2.0 * spec.core_radius * spec.core_radius * p.beta * p.beta * p.omega);
}

struct OrthogonalityReport {
    Eigen::MatrixXcd at_zero;
    Eigen::MatrixXcd at_later;
    Eigen::MatrixXd magnitude;
    // largest |product| over pairs with distinct omega
    double max_cross = 0.0;
    // largest |P(0) - P(1/omega)| over all pairs
    double max_time_drift = 0.0;
    bool orthogonal = false;
};

inline OrthogonalityReport orthogonality_report(const std::vector<ModeSolution>& modes,
                                                double tolerance = 1e-6) {
    const auto n = static_cast<Eigen::Index>(modes.size());
    OrthogonalityReport rep;
    rep.at_zero.resize(n, n);
    rep.at_later.resize(n, n);
    rep.magnitude.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& a = modes[i];
            const auto& b = modes[j];
            const auto p0 = reduced_kg_product(a, b, 0.0).total;
            const auto p1 = reduced_kg_product(a, b, 1.0 / a.point.omega).total;
            rep.at_zero(i, j) = p0;
            rep.at_later(i, j) = p1;
            rep.magnitude(i, j) = std::abs(p0);
            rep.max_time_drift = std::max(rep.max_time_drift, std::abs(p0 - p1));
            const double dw = std::abs(a.point.omega - b.point.omega);
            if (dw > 1e-12 * a.point.omega) rep.max_cross = std::max(rep.max_cross, std::abs(p0));
        }
    }
    rep.orthogonal = rep.max_cross <= tolerance;
    return rep;
}

} // namespace gbfiber::kg
