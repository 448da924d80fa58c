// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gbfiber/gbfiber.hpp>

using namespace gbfiber;
using fiber::ModeFamily;
using cd = std::complex<double>;

namespace {

const fiber::FiberSpec kFiber{};

double omega_at(double V) { return V / (kFiber.core_radius * std::sqrt(kFiber.contrast())); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome determinant_factorization() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> md(0, 3);
    std::uniform_real_distribution<double> bd(0.05, 0.95), vd(0.5, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int m = md(rng);
        const auto p = fiber::point_at_omega(kFiber, m, omega_at(vd(rng)), bd(rng));
        const cd det = fiber::interface_matrix(kFiber, p, m).determinant();
        const double d1 = fiber::dispersion_d1(kFiber, p, m), d2 = fiber::dispersion_d2(kFiber, p, m);
        const cd expect(0.0, d1 * d2 * d2);
        worst = std::max(worst, std::abs(det - expect) / std::abs(expect));
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-8 && t < 5.0, fmt("worst relative error %.3g, %.2f s", worst, t)};
}

Outcome mode_census() {
    const auto t0 = std::chrono::steady_clock::now();
    const double omega = units::wavelength_nm_to_omega(1550.0);
    const double V = fiber::normalized_frequency(kFiber, omega);
    auto count = [](double w, ModeFamily f, int m_only = -1) {
        std::size_t n = 0;
        for (int m = 0; m <= 6; ++m)
            if (m_only < 0 || m == m_only) n += fiber::solve_modes(kFiber, w, m, f).size();
        return n;
    };
    const bool one_physical = count(omega, ModeFamily::Physical) == 1 &&
                              count(omega, ModeFamily::Physical, 1) == 1;
    const bool one_pair = count(omega, ModeFamily::Gauge) == 1 && count(omega, ModeFamily::Ghost) == 1 &&
                          count(omega, ModeFamily::Gauge, 0) == 1 && count(omega, ModeFamily::Ghost, 0) == 1;
    const std::size_t at23 = count(omega_at(2.3), ModeFamily::Physical);
    const std::size_t at25 = count(omega_at(2.5), ModeFamily::Physical);
    const double t = seconds_since(t0);
    const bool pass = std::abs(V - 2.074) < 5e-4 && one_physical && one_pair && at23 == 1 && at25 > 1 && t < 10.0;
    return {pass, fmt("V = %.6f, physical modes at V=2.3: %g, at V=2.5: ", V, double(at23)) +
                      std::to_string(at25) + fmt(", %.2f s", t)};
}

Outcome gauge_residuals() {
    double worst_phys = 0.0, worst_ghost = 0.0;
    int n_phys = 0, n_ghost = 0;
    for (int k = 0; k < 50; ++k) {
        const double V = 0.5 + 5.5 * k / 49.0;
        for (int m = 0; m <= 2; ++m) {
            for (const auto& s : fiber::solve_modes(kFiber, omega_at(V), m, ModeFamily::Physical)) {
                const auto mode = fiber::build_mode(kFiber, s);
                worst_phys = std::max(
                    worst_phys, fiber::gauge_residual(fiber::evaluate_field(mode, fiber::default_grid(kFiber.core_radius))));
                ++n_phys;
            }
            for (const auto& s : fiber::solve_modes(kFiber, omega_at(V), m, ModeFamily::Ghost)) {
                const auto mode = fiber::build_mode(kFiber, s);
                const auto f = fiber::evaluate_field(mode, fiber::default_grid(kFiber.core_radius));
                const cd c(0.0, 2.0 * s.point.beta * s.point.beta / s.point.omega);
                double dev = 0.0, amp = 0.0;
                for (std::size_t j = 0; j < f.grid.size(); ++j) {
                    dev = std::max(dev, std::abs(f.chi[j] - c * f.a_t[j]));
                    amp = std::max(amp, std::abs(c * f.a_t[j]));
                }
                worst_ghost = std::max(worst_ghost, dev / amp);
                ++n_ghost;
            }
        }
    }
    return {worst_phys <= 1e-8 && worst_ghost <= 1e-8 && n_phys > 0 && n_ghost > 0,
            fmt("%g physical modes, worst |chi|/|A| %.3g; ", n_phys, worst_phys) +
                fmt("%g ghost modes, worst ghost deviation %.3g", n_ghost, worst_ghost)};
}

Outcome normalization() {
    double worst = 0.0;
    int n = 0;
    for (double V : {2.0736, 3.0, 4.0, 5.0, 6.0, 7.0}) {
        for (int m = 0; m <= 2 && n < 20; ++m) {
            for (auto f : {ModeFamily::Physical, ModeFamily::Gauge}) {
                for (const auto& s : fiber::solve_modes(kFiber, omega_at(V), m, f)) {
                    if (n >= 20) break;
                    const bool phys = f == ModeFamily::Physical;
                    const double analytic = phys ? kg::normalization_i1(kFiber, s.point, m)
                                                 : kg::normalization_i2(kFiber, s.point, m);
                    const double quad = phys ? kg::normalization_i1_quadrature(kFiber, s.point, m)
                                             : kg::normalization_i2_quadrature(kFiber, s.point, m);
                    worst = std::max(worst, std::abs(analytic - quad) / analytic);
                    ++n;
                }
            }
        }
    }
    // Gram of (physical, gauge, ghost) sharing (beta, m = 1)
    const double beta = omega_at(6.0) * 1.4690;
    std::vector<fiber::ModeSolution> modes;
    for (auto f : {ModeFamily::Physical, ModeFamily::Gauge, ModeFamily::Ghost})
        modes.push_back(fiber::build_mode(kFiber, fiber::solve_modes_at_beta(kFiber, beta, 1, f).at(0)));
    const double expect[3][3] = {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
    double gram_dev = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            gram_dev = std::max(gram_dev, std::abs(kg::reduced_kg_product(modes[i], modes[j]).total - expect[i][j]));
    return {n == 20 && worst <= 1e-8 && gram_dev <= 1e-6,
            fmt("%g modes, worst I quadrature mismatch %.3g, Gram deviation %.3g", n, worst, gram_dev)};
}

Outcome orthogonality() {
    const double beta = omega_at(6.0) * 1.4690;
    double cross = 0.0, drift = 0.0;
    std::size_t count = 0;
    for (int m = 0; m <= 3; ++m) {
        std::vector<fiber::ModeSolution> modes;
        for (auto f : {ModeFamily::Physical, ModeFamily::Gauge, ModeFamily::Ghost})
            for (const auto& s : fiber::solve_modes_at_beta(kFiber, beta, m, f))
                modes.push_back(fiber::build_mode(kFiber, s));
        if (modes.empty()) continue;
        count += modes.size();
        const auto rep = kg::orthogonality_report(modes);
        cross = std::max(cross, rep.max_cross);
        drift = std::max(drift, rep.max_time_drift);
    }
    return {count > 0 && cross <= 1e-6 && drift <= 1e-10,
            fmt("%g modes, max cross product %.3g, max time drift %.3g", double(count), cross, drift)};
}

Outcome krein_sector() {
    using namespace quantum;
    quantum::ModeBin b0, b1;
    b0.beta_center = 5.9;
    b1.beta_center = 6.1;
    b0.width = b1.width = 0.2;
    const auto space = make_space({b0, b1});
    const auto vac = KreinState::vacuum(space);
    const bool examples = gupta_bleuler_classify(create(vac, Excitation::Physical, 0)) == GbClass::Physical &&
                          gupta_bleuler_classify(create(vac, Excitation::Gauge, 0)) == GbClass::Gauge &&
                          gupta_bleuler_classify(create(vac, Excitation::Ghost, 0)) == GbClass::Ghost &&
                          gupta_bleuler_classify(vac) == GbClass::Physical;
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> kind(0, 1), bin(0, 1), count(1, 3);
    double min_norm = 1e300;
    bool all_ghost_free = true;
    for (int t = 0; t < 1000; ++t) {
        KreinState st = vac * cd(u(rng), u(rng));
        for (int term = 0; term < 3; ++term) {
            auto piece = vac;
            const int n = count(rng);
            for (int k = 0; k < n; ++k) piece = create(piece, static_cast<Excitation>(kind(rng)), bin(rng));
            st += piece * cd(u(rng), u(rng));
        }
        try {
            all_ghost_free = all_ghost_free && gupta_bleuler_classify(st) != GbClass::Ghost;
        } catch (const IntegrityError&) {
            all_ghost_free = false;
        }
        min_norm = std::min(min_norm, pseudo_norm(st));
    }
    const double witness = pseudo_norm(create(vac, Excitation::Gauge, 0) - create(vac, Excitation::Ghost, 0));
    return {examples && all_ghost_free && min_norm >= 0.0 && witness < 0.0,
            fmt("min pseudo-norm over 1000 GB states %.3g, (b-c)|0> pseudo-norm %.3g", min_norm, witness)};
}

Outcome interferometry_checks() {
    using namespace interferometry;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ph(-10.0, 10.0);
    bool doubling = true;
    for (int k = 0; k < 1000; ++k) {
        const double d = ph(rng);
        doubling = doubling && two_photon_probability(d) == single_photon_probability(2.0 * d);
    }
    double fock = 0.0;
    for (int k = 0; k < 50; ++k) {
        const MziSpec s{0, 0, ph(rng), ph(rng)};
        fock = std::max(fock, std::abs(fock_single_photon_probability(s) - single_photon_probability(s.phase_difference())));
        fock = std::max(fock, std::abs(fock_two_photon_probability(s) - two_photon_probability(s.phase_difference())));
    }
    double partition = 0.0;
    std::uniform_real_distribution<double> len(1.0, 1e7), dphi(-1e-6, 1e-6);
    for (int k = 0; k < 1000; ++k) {
        const double l = len(rng);
        const auto p = time_bin_probabilities({5.95, 5.95 * (1 + 1e-9), l, k % 2 ? l : len(rng), dphi(rng)});
        partition = std::max(partition, std::abs(p.p_a + p.p_b - 1.0));
    }
    // hand unit conversion in SI: n (2 pi / lambda) (g / c^2) L dz
    const double omega = units::wavelength_nm_to_omega(1550.0);
    const double nbar = fiber::solve_modes(kFiber, omega, 1, ModeFamily::Physical).at(0).point.effective_index();
    const double c = 299792458.0;
    const double oracle = nbar * (2.0 * M_PI / 1550e-9) * (9.81 / (c * c)) * 1e5 * 1.0;
    const double phase = gravity::gravitational_phase_shift(nbar, omega, units::acceleration_to_geometric(9.81),
                                                            units::metres_to_um(1e5), units::metres_to_um(1.0));
    const double rel = std::abs(std::abs(phase) - oracle) / oracle;
    const bool desk = rel <= 1e-10 && std::abs(std::abs(phase) - 6.5e-5) < 0.05e-5;
    return {doubling && fock <= 1e-12 && partition <= 1e-12 && desk,
            fmt("Fock mismatch %.3g, partition defect %.3g, ", fock, partition) +
                fmt("desk phase %.6g rad (oracle mismatch %.3g)", std::abs(phase), rel)};
}

Outcome ppn_reduction() {
    double identity = 0.0;
    for (double x = -3.0; x <= 3.0; x += 0.25)
        for (double y = -3.0; y <= 3.0; y += 0.25)
            for (double z = -3.0; z <= 3.0; z += 0.25) {
                const auto j = gravity::xi_jacobian({x, y, z});
                identity = std::max(identity,
                                    (j + j.transpose() - 2.0 * z * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
            }
    bool bounded = true;
    double worst_ratio = 0.0;
    gravity::PpnMetric metric;
    for (double g : {2e-5, 1e-5, 5e-6}) {
        metric.potential = {3e-6, g};
        for (double s = -30.0; s <= 30.0; s += 7.5) {
            const auto r = gravity::ppn_reduce(metric, {0.6 * s, -0.3 * s, s});
            bounded = bounded && r.within_bound;
            if (r.bound > 0) worst_ratio = std::max(worst_ratio, r.deviation / r.bound);
        }
    }
    return {identity <= 1e-12 && bounded,
            fmt("identity defect %.3g, worst deviation/bound %.3g", identity, worst_ratio)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 determinant factorization", determinant_factorization},
        {"2 mode census", mode_census},
        {"3 gauge-condition residual", gauge_residuals},
        {"4 normalization", normalization},
        {"5 orthogonality", orthogonality},
        {"6 Krein sector", krein_sector},
        {"7 interferometry", interferometry_checks},
        {"8 PPN reduction", ppn_reduction},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
