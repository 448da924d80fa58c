#pragma once

// Weak homogeneous gravity: reduction of linearized PPN metrics to the
// Newtonian form, the n -> (1 - phi) n mode substitution, Killing labels and
// redshift of binned wave functions.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "fiber_modes.hpp"

namespace gbfiber::gravity {

using Vec3 = std::array<double, 3>;

inline constexpr double kMaxPotential = 1e-3;

struct PotentialContext {
    double phi0 = 0.0;
    // g / c^2 in 1/um
    double g_acc = 0.0;

    void validate(double core_radius) const {
        if (!(std::abs(phi0) < kMaxPotential))
            throw DomainError("PotentialContext: |phi0| must be below 1e-3");
        if (!(std::abs(g_acc * core_radius) < 1e-6))
            throw DomainError("PotentialContext: |g rho| must be below 1e-6");
    }

    double at(double z) const { return phi0 + g_acc * z; }
};

struct PpnMetric {
    double alpha_lpi = 1.0;
    double gamma = 1.0;
    PotentialContext potential;
};

// xi = (x z, y z, (z^2 - x^2 - y^2) / 2)
inline Vec3 xi(const Vec3& x) {
    return {x[0] * x[2], x[1] * x[2], 0.5 * (x[2] * x[2] - x[0] * x[0] - x[1] * x[1])};
}

// J(i, j) = d xi_i / d x_j
inline Eigen::Matrix3d xi_jacobian(const Vec3& x) {
    Eigen::Matrix3d j;
    j << x[2], 0.0, x[0],
         0.0, x[2], x[1],
         -x[0], -x[1], x[2];
    return j;
}

struct PpnResidual {
    double deviation = 0.0;
    double bound = 0.0;
    bool within_bound = false;
};

inline constexpr double kPpnBoundConstant = 10.0;

// Pulls the spatial PPN metric back along x = x' + gamma g xi(x'), divides by
// (1 - 2 gamma phi0) and reports max_ij |h_ij - delta_ij|. The deviation is
// assembled from its exactly cancelling pieces, so it carries no O(g z)
// rounding noise.
inline PpnResidual ppn_reduce(const PpnMetric& metric, const Vec3& xp) {
    const double gamma = metric.gamma;
    const double g = metric.potential.g_acc;
    const double phi0 = metric.potential.phi0;
    const double radius = std::sqrt(xp[0] * xp[0] + xp[1] * xp[1] + xp[2] * xp[2]);
    if (!(std::abs(gamma * g) * radius < 1e-3))
        throw DomainError("ppn_reduce: point outside the linearization box |gamma g x| < 1e-3");
    if (!(std::abs(phi0) < kMaxPotential))
        throw DomainError("ppn_reduce: |phi0| must be below 1e-3");

    const Vec3 s = xi(xp);
    const Eigen::Matrix3d dxi = xi_jacobian(xp);
    const Eigen::Matrix3d e = gamma * g * dxi;
    const Eigen::Matrix3d d = e + e.transpose() + e.transpose() * e;
    const double z = xp[2] + gamma * g * s[2];
    const double a = -2.0 * gamma * (phi0 + g * z);
    const double a0 = -2.0 * gamma * phi0;
    const Eigen::Matrix3d dev =
        (gamma * gamma * g * g * (dxi.transpose() * dxi - 2.0 * s[2] * Eigen::Matrix3d::Identity()) +
         a * d) / (1.0 + a0);

    PpnResidual r;
    r.deviation = dev.cwiseAbs().maxCoeff();
    const double phi = phi0 + g * z;
    r.bound = kPpnBoundConstant * gamma * gamma * (std::abs(phi0 * phi) + g * g * radius * radius);
    r.within_bound = r.deviation <= r.bound;
    return r;
}

inline void check_potential(double phi) {
    if (!(std::abs(phi) < kMaxPotential)) throw DomainError("|phi| must be below 1e-3");
}

// Mode of the same (beta, m, kappa) in a uniform potential phi: indices scale
// by (1 - phi), the coordinate frequency by 1 / (1 - phi) (so U, W, V and b
// are unchanged), the momentum by (1 + phi), and N by sqrt(1 + phi).
inline fiber::ModeSolution apply_uniform_potential(const fiber::ModeSolution& mode, double phi) {
    check_potential(phi);
    if (mode.potential != 0.0)
        throw DomainError("apply_uniform_potential: mode must be a flat-space mode");
    fiber::FiberSpec spec = mode.fiber;
    spec.n_core *= 1.0 - phi;
    spec.n_clad *= 1.0 - phi;
    const int m = mode.key.m;
    auto pt = fiber::point_at_omega(spec, m, mode.point.omega / (1.0 - phi), mode.point.b);
    pt.beta = mode.point.beta;
    pt.m_tilde = fiber::reduced_azimuthal(m, pt.beta, pt.omega, pt.U, pt.W);
    fiber::ModeSolution out;
    out.fiber = spec;
    out.key = mode.key;
    out.point = pt;
    out.coeffs = fiber::assemble_coefficients(spec, mode.key, pt, 1.0 + phi);
    out.potential = phi;
    return out;
}

// Frequency measured by a static observer at the fiber.
inline double physical_frequency(const fiber::ModeSolution& mode) {
    return (1.0 - mode.potential) * mode.point.omega;
}

// beta = (1 + phi) beta_local
inline double killing_remap(double beta_local, double phi) {
    check_potential(phi);
    return (1.0 + phi) * beta_local;
}

inline double killing_unmap(double beta_killing, double phi) {
    check_potential(phi);
    return beta_killing / (1.0 + phi);
}

// Killing propagation constant from the Killing frequency, beta = n_bar omega.
inline double killing_beta(double n_bar, double omega_killing) { return n_bar * omega_killing; }

// psi'' = sqrt(d beta' / d beta'') psi' = sqrt((1 + phi'') / (1 + phi')) psi'
inline double redshift_amplitude_factor(double phi_from, double phi_to) {
    return std::sqrt((1.0 + phi_to) / (1.0 + phi_from));
}

// alpha'(beta') = sqrt((1 + phi') / (1 + phi'')) alpha''(beta'')
inline double redshift_operator_factor(double phi_from, double phi_to) {
    return std::sqrt((1.0 + phi_from) / (1.0 + phi_to));
}

struct BinnedWavefunction {
    std::vector<double> centers;
    std::vector<double> widths;
    std::vector<std::complex<double>> amplitudes;

    double norm() const {
        double s = 0.0;
        for (std::size_t k = 0; k < amplitudes.size(); ++k) s += std::norm(amplitudes[k]) * widths[k];
        return s;
    }

    void validate() const {
        if (centers.size() != widths.size() || centers.size() != amplitudes.size())
            throw DomainError("BinnedWavefunction: mismatched bin arrays");
        for (double w : widths)
            if (!(w > 0.0)) throw DomainError("BinnedWavefunction: bin widths must be positive");
    }
};

// Re-expresses a wave function given in local beta' at phi' in local beta''
// at phi''. Bins map through the common Killing beta.
inline BinnedWavefunction redshift_wavefunction(const BinnedWavefunction& psi, double phi_from,
                                                double phi_to) {
    psi.validate();
    check_potential(phi_from);
    check_potential(phi_to);
    BinnedWavefunction out;
    const double amp = redshift_amplitude_factor(phi_from, phi_to);
    for (std::size_t k = 0; k < psi.centers.size(); ++k) {
        out.centers.push_back(killing_unmap(killing_remap(psi.centers[k], phi_from), phi_to));
        out.widths.push_back(killing_unmap(killing_remap(psi.widths[k], phi_from), phi_to));
        out.amplitudes.push_back(amp * psi.amplitudes[k]);
    }
    return out;
}

// Wave function over Killing beta bins; identical whichever local basis it
// came from.
inline BinnedWavefunction to_killing(const BinnedWavefunction& psi, double phi) {
    psi.validate();
    check_potential(phi);
    BinnedWavefunction out;
    const double amp = 1.0 / std::sqrt(1.0 + phi);
    for (std::size_t k = 0; k < psi.centers.size(); ++k) {
        out.centers.push_back(killing_remap(psi.centers[k], phi));
        out.widths.push_back(killing_remap(psi.widths[k], phi));
        out.amplitudes.push_back(amp * psi.amplitudes[k]);
    }
    return out;
}

// Delta psi = -n_bar omega g L dz (g in 1/um, lengths in um)
inline double gravitational_phase_shift(double n_bar, double omega, double g_acc, double length,
                                        double dz) {
    return -n_bar * omega * g_acc * length * dz;
}

} // namespace gbfiber::gravity
