#pragma once

// Mach-Zehnder and time-bin fiber interferometers: transfer matrices,
// coherent amplitudes and photon-counting probabilities.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "gravity.hpp"
#include "quantum_states.hpp"

namespace gbfiber::interferometry {

using cplx = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;

// Symmetric lossless beam splitter (1/sqrt 2)[[1, i], [i, 1]].
inline Matrix2 beam_splitter() {
    Matrix2 b;
    b << 1.0, cplx(0.0, 1.0), cplx(0.0, 1.0), 1.0;
    return b / std::sqrt(2.0);
}

struct MziSpec {
    // arm potentials phi' and phi''
    double phi_a = 0.0;
    double phi_b = 0.0;
    // arm phases psi' and psi'' at the second beam splitter
    double psi_a = 0.0;
    double psi_b = 0.0;

    double phase_difference() const { return psi_a - psi_b; }
};

// Phase accumulated over an arm of length L at potential phi by a mode of
// Killing propagation constant beta: the local constant beta / (1 + phi)
// times L.
inline double mzi_arm_phase(double beta_killing, double length, double phi) {
    return gravity::killing_unmap(beta_killing, phi) * length;
}

inline MziSpec mzi_from_arms(double beta_killing, double length, double phi_a, double phi_b) {
    return {phi_a, phi_b, mzi_arm_phase(beta_killing, length, phi_a),
            mzi_arm_phase(beta_killing, length, phi_b)};
}

// psi' - psi'' without subtracting two arm phases of size beta L.
inline double mzi_arm_phase_difference(double beta_killing, double length, double phi_a, double phi_b) {
    gravity::check_potential(phi_a);
    gravity::check_potential(phi_b);
    return beta_killing * length * (phi_b - phi_a) / ((1.0 + phi_a) * (1.0 + phi_b));
}

// (a_in^dagger, b_in^dagger) = T (a_out^dagger, b_out^dagger)
inline Matrix2 mzi_transfer(const MziSpec& spec) {
    const cplx ea = std::exp(cplx(0.0, spec.psi_a));
    const cplx eb = std::exp(cplx(0.0, spec.psi_b));
    const cplx i(0.0, 1.0);
    Matrix2 t;
    t << 0.5 * (ea - eb), 0.5 * i * (ea + eb),
         0.5 * i * (ea + eb), -0.5 * (ea - eb);
    return t;
}

// Beam splitter, arm phases, beam splitter.
inline Matrix2 mzi_transfer_composed(const MziSpec& spec) {
    Matrix2 phases = Matrix2::Zero();
    phases(0, 0) = std::exp(cplx(0.0, spec.psi_a));
    phases(1, 1) = std::exp(cplx(0.0, spec.psi_b));
    return beam_splitter() * phases * beam_splitter();
}

inline std::pair<cplx, cplx> coherent_transform(cplx alpha1, cplx alpha2, const MziSpec& spec) {
    const Matrix2 t = mzi_transfer(spec);
    Eigen::Vector2cd in(alpha1, alpha2);
    const Eigen::Vector2cd out = t.transpose() * in;
    return {out(0), out(1)};
}

inline double single_photon_probability(double dpsi) { return 0.5 * (1.0 - std::cos(dpsi)); }

inline double two_photon_probability(double dpsi) { return 0.5 * (1.0 - std::cos(2.0 * dpsi)); }

struct TimeBinSpec {
    // local propagation constants beta', beta'' (rad/um)
    double beta_a = 0.0;
    double beta_b = 0.0;
    // delay lengths l', l'' (um)
    double length_a = 0.0;
    double length_b = 0.0;
    // phi' - phi''
    double delta_phi = 0.0;

    void validate() const {
        if (!(length_a > 0.0 && length_b > 0.0))
            throw DomainError("TimeBinSpec: delay lengths must be positive");
    }
};

// Interferometric phase: beta' l' dphi for equal delays, else
// beta' l' - beta'' l''.
inline double time_bin_phase(const TimeBinSpec& spec) {
    spec.validate();
    if (spec.length_a == spec.length_b) return spec.beta_a * spec.length_a * spec.delta_phi;
    return spec.beta_a * spec.length_a - spec.beta_b * spec.length_b;
}

// a_in^dagger = c_a a_out^dagger + c_b b_out^dagger
inline std::pair<cplx, cplx> time_bin_transfer(const TimeBinSpec& spec) {
    spec.validate();
    const cplx ea = std::exp(cplx(0.0, spec.beta_a * spec.length_a));
    const cplx eb = std::exp(cplx(0.0, spec.beta_b * spec.length_b));
    return {0.5 * cplx(0.0, 1.0) * (ea + eb), -0.5 * (ea - eb)};
}

struct TimeBinProbabilities {
    double p_a = 0.0;
    double p_b = 0.0;
};

inline TimeBinProbabilities time_bin_probabilities(const TimeBinSpec& spec) {
    const double half = 0.5 * time_bin_phase(spec);
    const double c = std::cos(half);
    const double s = std::sin(half);
    return {c * c, s * s};
}

// Per-bin probabilities averaged with |psi|^2 delta_beta weights.
template <class F>
double bandwidth_average(const gravity::BinnedWavefunction& psi, F&& probability_at_beta) {
    psi.validate();
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < psi.centers.size(); ++k) {
        const double w = std::norm(psi.amplitudes[k]) * psi.widths[k];
        num += w * probability_at_beta(psi.centers[k]);
        den += w;
    }
    if (!(den > 0.0)) throw DomainError("bandwidth_average: wave function has zero norm");
    return num / den;
}

// Two output ports as unit-width bins of a Fock space.
inline quantum::SpacePtr output_ports() {
    quantum::ModeBin a, b;
    a.channel = "a_out";
    b.channel = "b_out";
    return quantum::make_space({a, b});
}

inline quantum::LinearCreator input_creator(const Matrix2& t, int row) {
    return {{{0, quantum::Excitation::Physical}, {1, quantum::Excitation::Physical}},
            {t(row, 0), t(row, 1)}};
}

inline quantum::KreinState fock_state(const quantum::SpacePtr& space, int a, int b) {
    quantum::KreinState s = quantum::KreinState::vacuum(space);
    for (int k = 0; k < a; ++k) s = quantum::create(s, quantum::Excitation::Physical, 0);
    for (int k = 0; k < b; ++k) s = quantum::create(s, quantum::Excitation::Physical, 1);
    double norm = 1.0;
    for (int k = 2; k <= a; ++k) norm *= k;
    for (int k = 2; k <= b; ++k) norm *= k;
    return s * cplx(1.0 / std::sqrt(norm));
}

// |1,0>_in expanded in the out basis; probability of the photon in a_out.
inline double fock_single_photon_probability(const MziSpec& spec) {
    const auto space = output_ports();
    const auto in = quantum::apply(quantum::KreinState::vacuum(space), input_creator(mzi_transfer(spec), 0));
    return std::norm(quantum::pseudo_inner(fock_state(space, 1, 0), in));
}

// |1,1>_in expanded in the out basis; probability of both photons in one port.
inline double fock_two_photon_probability(const MziSpec& spec) {
    const auto space = output_ports();
    const Matrix2 t = mzi_transfer(spec);
    const auto one = quantum::apply(quantum::KreinState::vacuum(space), input_creator(t, 1));
    const auto in = quantum::apply(one, input_creator(t, 0));
    return std::norm(quantum::pseudo_inner(fock_state(space, 2, 0), in)) +
           std::norm(quantum::pseudo_inner(fock_state(space, 0, 2), in));
}

} // namespace gbfiber::interferometry
