#pragma once

// Value types shared by the mode solver, the Klein-Gordon products and the
// gravity substitutions. Units: lengths in micrometres, c = 1, omega and beta
// in rad/um.

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "errors.hpp"
#include "specfun.hpp"

namespace gbfiber::fiber {

using cplx = std::complex<double>;
using CoeffMatrix = std::array<std::array<cplx, 4>, 2>;

// Column order of every 2x4 coefficient matrix.
enum Component : int { kT = 0, kPar = 1, kPlus = 2, kMinus = 3 };

struct FiberSpec {
    double n_core = 1.4712;
    double n_clad = 1.4659;
    double core_radius = 4.1;

    void validate() const {
        if (!(n_clad > 0.0) || !(n_core > n_clad))
            throw DomainError("FiberSpec: need n_core > n_clad > 0");
        if (!(core_radius > 0.0)) throw DomainError("FiberSpec: core radius must be positive");
    }

    double contrast() const { return n_core * n_core - n_clad * n_clad; }
    double index_sq(bool core) const { return core ? n_core * n_core : n_clad * n_clad; }
};

enum class ModeFamily { Physical, Gauge, Ghost };

inline std::string to_string(ModeFamily f) {
    switch (f) {
    case ModeFamily::Physical: return "physical";
    case ModeFamily::Gauge: return "gauge";
    case ModeFamily::Ghost: return "ghost";
    }
    return "unknown";
}

struct ModeKey {
    ModeFamily family = ModeFamily::Physical;
    double beta = 0.0;
    int m = 0;
    int kappa = 1;
};

struct DispersionPoint {
    double omega = 0.0;
    double beta = 0.0;
    double b = 0.0;
    double V = 0.0;
    double U = 0.0;
    double W = 0.0;
    double m_tilde = 0.0;

    double effective_index() const { return beta / omega; }
};

inline void check_order(int m) {
    if (std::abs(m) > specfun::kMaxOrder - 1)
        throw DomainError("azimuthal index |m| must not exceed 24");
}

inline double normalized_frequency(const FiberSpec& spec, double omega) {
    spec.validate();
    if (!(omega > 0.0)) throw DomainError("normalized_frequency: omega must be positive");
    return spec.core_radius * omega * std::sqrt(spec.contrast());
}

inline double reduced_azimuthal(int m, double beta, double omega, double U, double W) {
    return m * (beta / omega) * (1.0 / (U * U) + 1.0 / (W * W));
}

// Point on the omega = const line, parametrized by b.
inline DispersionPoint point_at_omega(const FiberSpec& spec, int m, double omega, double b) {
    if (!(b > 0.0 && b < 1.0)) throw DomainError("guide index b must lie in (0, 1)");
    DispersionPoint p;
    p.omega = omega;
    p.b = b;
    p.V = normalized_frequency(spec, omega);
    p.U = p.V * std::sqrt(1.0 - b);
    p.W = p.V * std::sqrt(b);
    p.beta = omega * std::sqrt(spec.n_clad * spec.n_clad + b * spec.contrast());
    p.m_tilde = reduced_azimuthal(m, p.beta, p.omega, p.U, p.W);
    return p;
}

// Point on the beta = const line, parametrized by b.
inline DispersionPoint point_at_beta(const FiberSpec& spec, int m, double beta, double b) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    if (!(b > 0.0 && b < 1.0)) throw DomainError("guide index b must lie in (0, 1)");
    const double nbar = std::sqrt(spec.n_clad * spec.n_clad + b * spec.contrast());
    auto p = point_at_omega(spec, m, beta / nbar, b);
    p.beta = beta;
    p.m_tilde = reduced_azimuthal(m, p.beta, p.omega, p.U, p.W);
    return p;
}

// Point from (omega, beta); requires n2^2 w^2 < beta^2 < n1^2 w^2.
inline DispersionPoint make_point(const FiberSpec& spec, int m, double omega, double beta) {
    spec.validate();
    if (!(omega > 0.0)) throw DomainError("omega must be positive");
    const double ratio = beta * beta / (omega * omega);
    if (!(ratio > spec.n_clad * spec.n_clad && ratio < spec.n_core * spec.n_core))
        throw DomainError("beta outside the guided window n2 w < beta < n1 w");
    const double b = (ratio - spec.n_clad * spec.n_clad) / spec.contrast();
    auto p = point_at_omega(spec, m, omega, b);
    p.beta = beta;
    p.m_tilde = reduced_azimuthal(m, p.beta, p.omega, p.U, p.W);
    return p;
}

// Bessel data at (U, W). jp = J_m'(U)/U and kp = K_m'(W)/W keep every
// dispersion expression free of the 1/J_m(U) pole.
struct BesselTerms {
    double J = 0.0;
    double K = 0.0;
    double jp = 0.0;
    double kp = 0.0;

    double kratio() const { return kp / K; }
};

inline BesselTerms bessel_terms(int m, double U, double W) {
    check_order(m);
    if (U > specfun::kMaxArgument || W > specfun::kMaxArgument)
        throw DomainError("transverse parameter beyond the supported Bessel argument range");
    BesselTerms t;
    t.J = specfun::detail::jn(m, U);
    t.K = specfun::detail::kn(m, W);
    t.jp = specfun::detail::jn_prime(m, U) / U;
    t.kp = specfun::detail::kn_prime(m, W) / W;
    return t;
}

// Shape of a physical mode's coefficients: q_t = c, X-terms = y. Hybrid and
// TM modes use c = 1, y = X; TE modes (m = 0, J + K = 0) use the finite
// limit c = 0, y = 1.
struct PhysicalShape {
    double c = 1.0;
    double y = 0.0;
    bool transverse_electric = false;
};

inline PhysicalShape physical_shape(const FiberSpec& spec, const DispersionPoint& p, int m) {
    const auto t = bessel_terms(m, p.U, p.W);
    const double n1 = spec.index_sq(true);
    const double n2 = spec.index_sq(false);
    const double kj = t.J * t.kratio();
    if (m == 0) {
        const double te = std::abs(t.jp + kj) / (std::abs(t.jp) + std::abs(kj));
        const double tm = std::abs(n1 * t.jp + n2 * kj) / (n1 * std::abs(t.jp) + n2 * std::abs(kj));
        if (te < tm) return {0.0, 1.0, true};
        return {1.0, 0.0, false};
    }
    // X = m~ (beta/omega) / (J + K), with J + K = (jp + J kratio) / J_m(U)
    const double x = p.m_tilde * (p.beta / p.omega) * t.J / (t.jp + kj);
    return {1.0, x, false};
}

} // namespace gbfiber::fiber
