#pragma once

// Gauge-fixed step-index fiber modes: dispersion functions, root scans,
// the 8x8 interface system, coefficient matrices and radial profiles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "fiber_types.hpp"
#include "normalization.hpp"
#include "specfun.hpp"

namespace gbfiber::fiber {

using InterfaceMatrix = Eigen::Matrix<cplx, 8, 8>;
using InterfaceVector = Eigen::Matrix<cplx, 8, 1>;

inline constexpr double kScanLow = 1e-9;
inline constexpr double kScanHigh = 1.0 - 1e-9;
inline constexpr int kScanIntervals = 2000;
inline constexpr double kMaxDispersionResidual = 1e-8;

// D1 = J^2 K^2 [(J+K)(n1^2 J + n2^2 K) - m~^2], written with jp, kp so the
// J_m(U) = 0 points are regular.
inline double dispersion_d1(const FiberSpec& spec, const DispersionPoint& p, int m) {
    const auto t = bessel_terms(m, p.U, p.W);
    const double a = t.jp * t.K + t.J * t.kp;
    const double b = spec.index_sq(true) * t.jp * t.K + spec.index_sq(false) * t.J * t.kp;
    const double jk = t.J * t.K;
    return a * b - p.m_tilde * p.m_tilde * jk * jk;
}

// D2 = U W J K [U^2 J - W^2 K]
inline double dispersion_d2(const FiberSpec& /*spec*/, const DispersionPoint& p, int m) {
    const auto t = bessel_terms(m, p.U, p.W);
    return p.U * p.W * (p.U * p.U * t.jp * t.K - p.W * p.W * t.J * t.kp);
}

inline double dispersion_d1(const FiberSpec& spec, int m, double omega, double beta) {
    return dispersion_d1(spec, make_point(spec, m, omega, beta), m);
}

inline double dispersion_d2(const FiberSpec& spec, int m, double omega, double beta) {
    return dispersion_d2(spec, make_point(spec, m, omega, beta), m);
}

namespace detail {

// Positive multiples of D1, D2 (divided by K_m(W)^2 and K_m(W)); same roots,
// no overflow of K_m at small W.
inline double scan_d1(const FiberSpec& spec, const DispersionPoint& p, int m) {
    const auto t = bessel_terms(m, p.U, p.W);
    const double kj = t.J * t.kratio();
    return (t.jp + kj) * (spec.index_sq(true) * t.jp + spec.index_sq(false) * kj) -
           p.m_tilde * p.m_tilde * t.J * t.J;
}

inline double scan_te(const FiberSpec&, const DispersionPoint& p, int m) {
    const auto t = bessel_terms(m, p.U, p.W);
    return t.jp + t.J * t.kratio();
}

inline double scan_tm(const FiberSpec& spec, const DispersionPoint& p, int m) {
    const auto t = bessel_terms(m, p.U, p.W);
    return spec.index_sq(true) * t.jp + spec.index_sq(false) * t.J * t.kratio();
}

inline double scan_d2(const FiberSpec&, const DispersionPoint& p, int m) {
    const auto t = bessel_terms(m, p.U, p.W);
    return p.U * p.W * (p.U * p.U * t.jp - p.W * p.W * t.J * t.kratio());
}

inline double sign(double v) { return (v > 0.0) - (v < 0.0); }

// Bisection down to adjacent doubles.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double flo) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (sign(fm) == sign(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

// Sign-change scan of f on kScanIntervals uniform intervals of b.
inline std::vector<double> scan_roots(const std::function<double(double)>& f) {
    std::vector<double> roots;
    const double h = (kScanHigh - kScanLow) / kScanIntervals;
    double b_prev = kScanLow;
    double f_prev = f(b_prev);
    if (f_prev == 0.0) roots.push_back(b_prev);
    for (int i = 1; i <= kScanIntervals; ++i) {
        const double b = (i == kScanIntervals) ? kScanHigh : kScanLow + i * h;
        const double fb = f(b);
        if (fb == 0.0) {
            roots.push_back(b);
        } else if (f_prev != 0.0 && sign(fb) != sign(f_prev)) {
            roots.push_back(bisect(f, b_prev, b, f_prev));
        }
        b_prev = b;
        f_prev = fb;
    }
    return roots;
}

} // namespace detail

// Relative residual of the family's dispersion relation at p, scaled so that
// an exact root gives 0 and a generic point gives O(1).
inline double dispersion_residual(const FiberSpec& spec, const DispersionPoint& p, int m,
                                  ModeFamily family) {
    const auto t = bessel_terms(m, p.U, p.W);
    const double n1 = spec.index_sq(true);
    const double n2 = spec.index_sq(false);
    const double kj = t.J * t.kratio();
    if (family == ModeFamily::Physical) {
        const double te = std::abs(t.jp + kj) / (std::abs(t.jp) + std::abs(kj));
        const double tm = std::abs(n1 * t.jp + n2 * kj) / (n1 * std::abs(t.jp) + n2 * std::abs(kj));
        if (m == 0) return std::min(te, tm);
        const double prod = (t.jp + kj) * (n1 * t.jp + n2 * kj);
        const double mm = p.m_tilde * p.m_tilde * t.J * t.J;
        return std::abs(prod - mm) / (std::abs(prod) + mm);
    }
    const double u = p.U * p.U * t.jp;
    const double w = p.W * p.W * kj;
    return std::abs(u - w) / (std::abs(u) + std::abs(w));
}

struct SolvedMode {
    ModeKey key;
    DispersionPoint point;
};

namespace detail {

inline std::vector<SolvedMode> solve_along(const FiberSpec& spec, int m, ModeFamily family,
                                           const std::function<DispersionPoint(double)>& at) {
    spec.validate();
    check_order(m);
    std::vector<double> roots;
    auto collect = [&](double (*fn)(const FiberSpec&, const DispersionPoint&, int)) {
        auto found = scan_roots([&](double b) { return fn(spec, at(b), m); });
        roots.insert(roots.end(), found.begin(), found.end());
    };
    if (family != ModeFamily::Physical) {
        collect(&scan_d2);
    } else if (m == 0) {
        // D1 factorizes into the TE and TM factors; scanning them separately
        // keeps nearly degenerate TE/TM pairs from sharing one interval.
        collect(&scan_te);
        collect(&scan_tm);
    } else {
        collect(&scan_d1);
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    std::vector<SolvedMode> out;
    int kappa = 1;
    for (double b : roots) {
        const auto p = at(b);
        out.push_back({ModeKey{family, p.beta, m, kappa++}, p});
    }
    return out;
}

} // namespace detail

// All guided roots at fixed omega; kappa = 1 is the largest b.
inline std::vector<SolvedMode> solve_modes(const FiberSpec& spec, double omega, int m,
                                           ModeFamily family) {
    if (!(omega > 0.0)) throw DomainError("solve_modes: omega must be positive");
    return detail::solve_along(spec, m, family,
                               [&](double b) { return point_at_omega(spec, m, omega, b); });
}

// All guided roots at fixed beta (the modes that share (beta, m)).
inline std::vector<SolvedMode> solve_modes_at_beta(const FiberSpec& spec, double beta, int m,
                                                   ModeFamily family) {
    if (!(beta > 0.0)) throw DomainError("solve_modes_at_beta: beta must be positive");
    return detail::solve_along(spec, m, family,
                               [&](double b) { return point_at_beta(spec, m, beta, b); });
}

// M N with the rows: potential continuity (t, par), tangential F (two rows),
// normal G, F, G, chi. Columns: core (t, par, +, -), cladding (t, par, +, -).
inline InterfaceMatrix interface_matrix(const FiberSpec& spec, const DispersionPoint& p, int m) {
    const auto t = bessel_terms(m, p.U, p.W);
    const double U = p.U, W = p.W;
    const double rho = spec.core_radius;
    const double n1 = spec.index_sq(true), n2 = spec.index_sq(false);
    const double w = p.omega, beta = p.beta;
    const double s2 = std::sqrt(2.0);
    const cplx i(0.0, 1.0);

    // U J_pm J_m(U) and W K_pm K_m(W), pole-free
    const double ujp = U * t.jp - m * t.J / U;
    const double ujm = U * t.jp + m * t.J / U;
    const double wkp = W * t.kp - m * t.K / W;
    const double wkm = W * t.kp + m * t.K / W;
    const double u2j = U * U * t.jp;
    const double w2k = W * W * t.kp;
    const double J = t.J, K = t.K;

    InterfaceMatrix mn = InterfaceMatrix::Zero();
    mn.row(0) << J, 0, 0, 0, -K, 0, 0, 0;
    mn.row(1) << 0, J, 0, 0, 0, -K, 0, 0;
    mn.row(2) << 0, 0, -ujp, 0, 0, 0, wkp, 0;
    mn.row(3) << 0, 0, 0, ujm, 0, 0, 0, wkm;
    mn.row(4) << -n1 * u2j, 0, i * n1 * rho * w / s2 * ujp, -i * n1 * rho * w / s2 * ujm,
        n2 * w2k, 0, -i * n2 * rho * w / s2 * wkp, -i * n2 * rho * w / s2 * wkm;
    mn.row(5) << 0, 0, -i * U / s2 * J, -i * U / s2 * J, 0, 0, -i * W / s2 * K, i * W / s2 * K;
    mn.row(6) << 0, u2j, i * rho * beta / s2 * ujp, -i * rho * beta / s2 * ujm, 0, -w2k,
        -i * rho * beta / s2 * wkp, -i * rho * beta / s2 * wkm;
    mn.row(7) << i * n1 * rho * w * J, i * beta * rho * J, U / s2 * J, -U / s2 * J,
        -i * n2 * rho * w * K, -i * beta * rho * K, W / s2 * K, W / s2 * K;
    return mn;
}

inline InterfaceMatrix interface_matrix(const FiberSpec& spec, int m, double omega, double beta) {
    return interface_matrix(spec, make_point(spec, m, omega, beta), m);
}

struct ModeCoefficients {
    CoeffMatrix q{};
    CoeffMatrix p{};
    double norm_factor = 0.0;
    // I1 for physical modes, I2 for gauge and ghost modes
    double integral = 0.0;
    // Factor (1 + phi) carried by the canonical momentum in a uniform potential.
    double momentum_scale = 1.0;
};

struct ModeSolution {
    FiberSpec fiber;
    ModeKey key;
    DispersionPoint point;
    ModeCoefficients coeffs;
    double potential = 0.0;
};

// Momentum coefficients from q in the conjugate-field convention.
inline CoeffMatrix momentum_from_q(const FiberSpec& spec, const DispersionPoint& pt,
                                   const CoeffMatrix& q) {
    const double rho = spec.core_radius;
    const double s2 = std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    CoeffMatrix p{};
    for (int row = 0; row < 2; ++row) {
        const bool core = row == 0;
        const double n = spec.index_sq(core);
        const double t = (core ? pt.U : pt.W) / (s2 * rho);
        const cplx qt = std::conj(q[row][kT]), qz = std::conj(q[row][kPar]);
        const cplx qp = std::conj(q[row][kPlus]), qm = std::conj(q[row][kMinus]);
        p[row][kT] = -i * n * (n * pt.omega * qt + pt.beta * qz) +
                     (core ? n * t * (qp - qm) : -n * t * (qp + qm));
        p[row][kPar] = i * n * (pt.beta * qt + pt.omega * qz);
        p[row][kPlus] = n * (t * qt + i * pt.omega * qp);
        p[row][kMinus] = core ? -n * (t * qt - i * pt.omega * qm) : n * (t * qt + i * pt.omega * qm);
    }
    return p;
}

// Coefficient matrix before division by N.
inline CoeffMatrix raw_coefficients(const FiberSpec& spec, const DispersionPoint& pt, int m,
                                    ModeFamily family) {
    const double rho = spec.core_radius;
    const double s2 = std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    const double U = pt.U, W = pt.W, w = pt.omega, beta = pt.beta;
    CoeffMatrix q{};
    switch (family) {
    case ModeFamily::Physical: {
        const auto sh = physical_shape(spec, pt, m);
        const double n1 = spec.index_sq(true), n2 = spec.index_sq(false);
        const cplx cu = i * rho * w / (s2 * U);
        const cplx cw = i * rho * w / (s2 * W);
        q[0] = {sh.c, 0.0, -cu * (n1 * sh.c + sh.y), cu * (n1 * sh.c - sh.y)};
        q[1] = {sh.c, 0.0, cw * (n2 * sh.c + sh.y), cw * (n2 * sh.c - sh.y)};
        // TE: q_t vanishes; rotate so that the core (+) entry is real positive.
        if (sh.transverse_electric)
            for (auto& row : q)
                for (auto& v : row) v *= i;
        break;
    }
    case ModeFamily::Gauge:
        q[0] = {-i * w, i * beta, -U / (s2 * rho), U / (s2 * rho)};
        q[1] = {-i * w, i * beta, -W / (s2 * rho), -W / (s2 * rho)};
        break;
    case ModeFamily::Ghost:
        q[0] = {i * w, i * beta, U / (s2 * rho), -U / (s2 * rho)};
        q[1] = {i * w, i * beta, W / (s2 * rho), W / (s2 * rho)};
        break;
    }
    return q;
}

// Coefficients in a fiber whose momentum carries momentum_scale; N is scaled
// by sqrt(momentum_scale) so that the KG norm stays 1.
inline ModeCoefficients assemble_coefficients(const FiberSpec& spec, const ModeKey& key,
                                              const DispersionPoint& pt,
                                              double momentum_scale) {
    spec.validate();
    const double res = dispersion_residual(spec, pt, key.m, key.family);
    if (!(res <= kMaxDispersionResidual))
        throw DomainError("assemble_coefficients: dispersion residual " + std::to_string(res) +
                          " exceeds 1e-8");
    ModeCoefficients c;
    c.momentum_scale = momentum_scale;
    c.integral = key.family == ModeFamily::Physical ? kg::normalization_i1(spec, pt, key.m)
                                                    : kg::normalization_i2(spec, pt, key.m);
    c.norm_factor = std::sqrt(momentum_scale) *
                    kg::normalization_factor(spec.core_radius, pt.beta, pt.omega, c.integral);
    c.q = raw_coefficients(spec, pt, key.m, key.family);
    for (auto& row : c.q)
        for (auto& v : row) v /= c.norm_factor;
    c.p = momentum_from_q(spec, pt, c.q);
    for (auto& row : c.p)
        for (auto& v : row) v *= momentum_scale;
    if (key.family == ModeFamily::Gauge) c.p = CoeffMatrix{};
    return c;
}

inline ModeCoefficients assemble_coefficients(const FiberSpec& spec, const ModeKey& key,
                                              const DispersionPoint& pt) {
    return assemble_coefficients(spec, key, pt, 1.0);
}

inline ModeSolution build_mode(const FiberSpec& spec, const SolvedMode& s) {
    return ModeSolution{spec, s.key, s.point, assemble_coefficients(spec, s.key, s.point), 0.0};
}

// Expansion coefficients q^(1), q^(2) of J_nu and K_nu (the unknowns of the
// interface system).
inline InterfaceVector coefficient_vector(const ModeSolution& mode) {
    const auto t = bessel_terms(mode.key.m, mode.point.U, mode.point.W);
    InterfaceVector v;
    for (int k = 0; k < 4; ++k) {
        v(k) = mode.coeffs.q[0][k] / t.J;
        v(4 + k) = mode.coeffs.q[1][k] / t.K;
    }
    return v;
}

struct FieldSample {
    std::array<cplx, 4> a{};
    std::array<cplx, 4> pi{};
    cplx chi{};
};

inline std::array<int, 4> component_orders(int m) { return {m, m, m + 1, m - 1}; }

// Radial profiles at r > 0; r = rho is taken from the core side.
inline FieldSample sample_field(const ModeSolution& mode, double r) {
    if (!(r > 0.0)) throw DomainError("sample_field: radius must be positive");
    const auto& pt = mode.point;
    const int m = mode.key.m;
    const double rho = mode.fiber.core_radius;
    const bool core = r <= rho;
    const int row = core ? 0 : 1;
    const auto orders = component_orders(m);
    const double x = (core ? pt.U : pt.W) * r / rho;
    const double base = core ? specfun::detail::jn(m, pt.U) : specfun::detail::kn(m, pt.W);
    auto profile = [&](int nu) {
        return (core ? specfun::detail::jn(nu, x) : specfun::detail::kn(nu, x)) / base;
    };
    const auto& q = mode.coeffs.q[row];
    const auto& p = mode.coeffs.p[row];
    FieldSample s;
    for (int k = 0; k < 4; ++k) {
        const double f = profile(orders[k]);
        s.a[k] = q[k] * f;
        s.pi[k] = p[k] * f;
    }
    const cplx i(0.0, 1.0);
    const double n = mode.fiber.index_sq(core);
    const double s2rho = std::sqrt(2.0) * rho;
    const cplx qchi = i * (n * pt.omega * q[kT] + pt.beta * q[kPar]) +
                      (core ? pt.U / s2rho * (q[kPlus] - q[kMinus])
                            : -pt.W / s2rho * (q[kPlus] + q[kMinus]));
    s.chi = qchi * profile(m);
    return s;
}

struct RadialField {
    std::vector<double> grid;
    std::vector<cplx> a_t, a_par, a_plus, a_minus;
    std::vector<cplx> pi_t, pi_par, pi_plus, pi_minus;
    std::vector<cplx> chi;
};

inline RadialField evaluate_field(const ModeSolution& mode, const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("evaluate_field: empty grid");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!(grid[k] > 0.0)) throw DomainError("evaluate_field: radii must be positive");
        if (k > 0 && !(grid[k] > grid[k - 1]))
            throw DomainError("evaluate_field: grid must be strictly ascending");
    }
    RadialField f;
    f.grid = grid;
    for (double r : grid) {
        const auto s = sample_field(mode, r);
        f.a_t.push_back(s.a[kT]);
        f.a_par.push_back(s.a[kPar]);
        f.a_plus.push_back(s.a[kPlus]);
        f.a_minus.push_back(s.a[kMinus]);
        f.pi_t.push_back(s.pi[kT]);
        f.pi_par.push_back(s.pi[kPar]);
        f.pi_plus.push_back(s.pi[kPlus]);
        f.pi_minus.push_back(s.pi[kMinus]);
        f.chi.push_back(s.chi);
    }
    return f;
}

inline RadialField evaluate_field(const FiberSpec& spec, const ModeCoefficients& coeffs,
                                  const ModeKey& key, const DispersionPoint& point,
                                  const std::vector<double>& grid) {
    return evaluate_field(ModeSolution{spec, key, point, coeffs, 0.0}, grid);
}

// max |chi| / max |A| over the grid.
inline double gauge_residual(const RadialField& f) {
    double chi = 0.0, amp = 0.0;
    for (std::size_t k = 0; k < f.grid.size(); ++k) {
        chi = std::max(chi, std::abs(f.chi[k]));
        for (const auto* comp : {&f.a_t, &f.a_par, &f.a_plus, &f.a_minus})
            amp = std::max(amp, std::abs((*comp)[k]));
    }
    return chi / amp;
}

// Default grid: n_core points in the core, n_clad points out to 5 rho.
inline std::vector<double> default_grid(double rho, int n_core = 40, int n_clad = 80) {
    std::vector<double> g;
    for (int k = 1; k <= n_core; ++k) g.push_back(rho * k / n_core);
    for (int k = 1; k <= n_clad; ++k) g.push_back(rho * (1.0 + 4.0 * k / n_clad));
    return g;
}

} // namespace gbfiber::fiber
