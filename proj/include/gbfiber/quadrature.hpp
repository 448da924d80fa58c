#pragma once

// Adaptive Gauss-Kronrod integration for real or complex integrands.

#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"

namespace gbfiber::quadrature {

template <class T>
struct Result {
    T value{};
    double error = 0.0;
};

inline constexpr int kMaxDepth = 30;
inline constexpr int kMaxPanels = 20000;

namespace detail {

template <class T>
struct Panel {
    T value{};
    double error = 0.0;
    double l1 = 0.0;
};

template <class F>
auto panel(F& f, double a, double b) {
    using T = decltype(f(a));
    Panel<T> p;
    p.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0,
                                                                              &p.error, &p.l1);
    return p;
}

template <class F, class T>
void refine(F& f, double a, double b, const Panel<T>& whole, double abs_tol, int depth,
            Result<T>& acc, int& budget) {
    if (whole.error <= abs_tol || depth >= kMaxDepth || budget <= 0) {
        acc.value += whole.value;
        acc.error += whole.error;
        return;
    }
    const double mid = 0.5 * (a + b);
    const auto left = panel(f, a, mid);
    const auto right = panel(f, mid, b);
    budget -= 2;
    refine(f, a, mid, left, 0.5 * abs_tol, depth + 1, acc, budget);
    refine(f, mid, b, right, 0.5 * abs_tol, depth + 1, acc, budget);
}

} // namespace detail

// 31-point Gauss-Kronrod panels bisected until the error estimate is below
// max(rel_tol * L1, abs_tol), where L1 = int |f|. Measuring against L1 keeps
// integrals that cancel to ~0 from forcing maximal refinement.
// Throws ConvergenceError when the depth or panel limit leaves the target
// unmet.
template <class F>
auto integrate(F&& f, double a, double b, double rel_tol = 1e-13, double abs_tol = 0.0) {
    using T = decltype(f(a));
    const auto whole = detail::panel(f, a, b);
    const double target = std::max(rel_tol * whole.l1, abs_tol);
    Result<T> acc;
    int budget = kMaxPanels;
    detail::refine(f, a, b, whole, target, 0, acc, budget);
    if (!std::isfinite(acc.error) || acc.error > 10.0 * std::max(target, 1e-300))
        throw ConvergenceError("quadrature on [" + std::to_string(a) + ", " +
                                   std::to_string(b) + "] missed tolerance",
                               acc.error);
    return acc;
}

// Sums integrate() over consecutive breakpoints.
template <class F>
auto integrate_pieces(F&& f, const std::vector<double>& breaks, double rel_tol = 1e-13) {
    using T = decltype(f(breaks.front()));
    Result<T> total;
    // Pieces far out in a decaying tail are allowed an absolute tolerance
    // relative to the running sum.
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const auto piece = integrate(f, breaks[i], breaks[i + 1], rel_tol,
                                     rel_tol * std::abs(total.value));
        total.value += piece.value;
        total.error += piece.error;
    }
    return total;
}

// Breakpoints for a K_nu(W r / rho) tail: geometric up to x = 1, then unit
// steps in x = W r / rho until x = W + span.
inline std::vector<double> tail_breaks(double rho, double W, double span = 40.0) {
    std::vector<double> xs{W};
    double x = W;
    while (x < 1.0) {
        x = std::min(2.0 * x, 1.0);
        xs.push_back(x);
    }
    const double stop = W + span;
    while (x < stop) {
        x = std::min(x + 2.0, stop);
        xs.push_back(x);
    }
    std::vector<double> rs;
    rs.reserve(xs.size());
    for (double v : xs) rs.push_back(rho * v / W);
    return rs;
}

} // namespace gbfiber::quadrature
