#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include <gbfiber/fiber_modes.hpp>
#include <gbfiber/klein_gordon.hpp>
#include <gbfiber/units.hpp>

using namespace gbfiber;
using namespace gbfiber::fiber;
using cd = std::complex<double>;

namespace {

const FiberSpec kFiber{};
const double kOmega1550 = units::wavelength_nm_to_omega(1550.0);

double omega_at(double V) { return V / (kFiber.core_radius * std::sqrt(kFiber.contrast())); }
double beta_at(double V, double nbar) { return omega_at(V) * nbar; }

ModeSolution first(double omega, int m, ModeFamily f) {
    return build_mode(kFiber, solve_modes(kFiber, omega, m, f).at(0));
}

std::vector<ModeSolution> at_beta(double beta, int m, ModeFamily f) {
    std::vector<ModeSolution> out;
    for (const auto& s : solve_modes_at_beta(kFiber, beta, m, f)) out.push_back(build_mode(kFiber, s));
    return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST(ReducedProduct, TotalIsBulkPlusInterface) {
    const auto p = first(kOmega1550, 1, ModeFamily::Physical);
    const auto r = kg::reduced_kg_product(p, p);
    EXPECT_EQ(r.total, r.bulk + r.interface);
}

TEST(ReducedProduct, PhysicalSelfNormIsOne) {
    for (int m : {0, 1, 2}) {
        for (const auto& s : solve_modes(kFiber, omega_at(6.0), m, ModeFamily::Physical)) {
            const auto mode = build_mode(kFiber, s);
            EXPECT_LE(std::abs(kg::reduced_kg_product(mode, mode).total - 1.0), 1e-6)
                << "m=" << m << " kappa=" << s.key.kappa;
        }
    }
}

TEST(ReducedProduct, GaugeGaugeVanishes) {
    const auto g = first(kOmega1550, 0, ModeFamily::Gauge);
    EXPECT_LE(std::abs(kg::reduced_kg_product(g, g).total), 1e-8);
}

TEST(ReducedProduct, GhostGaugePairIsOne) {
    const auto g = first(kOmega1550, 0, ModeFamily::Gauge);
    const auto c = first(kOmega1550, 0, ModeFamily::Ghost);
    EXPECT_LE(std::abs(kg::reduced_kg_product(c, g).total - 1.0), 1e-6);
    EXPECT_LE(std::abs(kg::reduced_kg_product(g, c).total - 1.0), 1e-6);
}

TEST(ReducedProduct, MomentumRouteAgrees) {
    const auto p = first(kOmega1550, 1, ModeFamily::Physical);
    const auto c = first(kOmega1550, 0, ModeFamily::Ghost);
    const auto g = first(kOmega1550, 0, ModeFamily::Gauge);
    EXPECT_LE(std::abs(kg::kg_product_momentum_route(p, p) - kg::reduced_kg_product(p, p).total), 1e-8);
    EXPECT_LE(std::abs(kg::kg_product_momentum_route(c, g) - kg::reduced_kg_product(c, g).total), 1e-8);
}

TEST(ReducedProduct, ConjugateRelations) {
    const double beta = beta_at(6.0, 1.4690);
    const auto modes = at_beta(beta, 1, ModeFamily::Physical);
    ASSERT_GE(modes.size(), 2u);
    const auto& a = modes[0];
    const auto& b = modes[1];
    for (const auto* x : {&a, &b})
        for (const auto* y : {&a, &b}) {
            const cd plain = kg::kg_product_momentum_route(*x, *y, 0.3);
            const cd both = kg::kg_product_momentum_route(*x, *y, 0.3, true, true);
            EXPECT_LE(std::abs(both + std::conj(plain)), 1e-8);
            EXPECT_EQ(kg::kg_product_momentum_route(*x, *y, 0.3, false, true), cd(0.0));
        }
}

TEST(ReducedProduct, RejectsMismatchedLabels) {
    const auto a = first(kOmega1550, 1, ModeFamily::Physical);
    const auto g = first(kOmega1550, 0, ModeFamily::Gauge);
    EXPECT_THROW(kg::reduced_kg_product(a, g), DomainError);
    const auto b = first(omega_at(2.5), 1, ModeFamily::Physical);
    EXPECT_THROW(kg::reduced_kg_product(a, b), DomainError);
}

TEST(Normalization, I1ClosedFormMatchesQuadratureAtFundamental) {
    const auto p = first(kOmega1550, 1, ModeFamily::Physical);
    const double analytic = kg::normalization_i1(kFiber, p.point, 1);
    EXPECT_LE(rel(analytic, kg::normalization_i1_quadrature(kFiber, p.point, 1)), 1e-8);
    // scipy quad of the KG bulk and interface terms
    EXPECT_LE(rel(analytic, 73.71406111130858), 1e-8);
}

TEST(Normalization, I2ClosedFormMatchesIntegralForms) {
    const auto g = first(kOmega1550, 0, ModeFamily::Gauge);
    const double analytic = kg::normalization_i2(kFiber, g.point, 0);
    EXPECT_LE(rel(analytic, kg::normalization_i2_integral_form(kFiber, g.point, 0)), 1e-8);
    EXPECT_LE(rel(analytic, kg::normalization_i2_quadrature(kFiber, g.point, 0)), 1e-8);
    EXPECT_LE(rel(analytic, 6.737989380800334), 1e-10);
}

TEST(Normalization, I2AtZeroOrderHasUnitContrastFactor) {
    const auto g = first(kOmega1550, 0, ModeFamily::Gauge);
    const auto& p = g.point;
    const auto t = bessel_terms(0, p.U, p.W);
    const double jj = t.jp / t.J, kk = t.kp / t.K;
    const double expect = kFiber.index_sq(true) * p.U * p.U * jj * jj +
                          kFiber.index_sq(false) * p.W * p.W * kk * kk + kFiber.contrast() * 1.0;
    EXPECT_LE(rel(kg::normalization_i2(kFiber, p, 0), expect), 1e-13);
}

TEST(Normalization, IntegralsPositiveInWindow) {
    for (double V = 1.0; V <= 12.0; V += 1.0)
        for (int m = 0; m <= 5; ++m) {
            for (const auto& s : solve_modes(kFiber, omega_at(V), m, ModeFamily::Physical))
                EXPECT_GT(kg::normalization_i1(kFiber, s.point, m), 0.0);
            for (const auto& s : solve_modes(kFiber, omega_at(V), m, ModeFamily::Gauge))
                EXPECT_GT(kg::normalization_i2(kFiber, s.point, m), 0.0);
        }
}

TEST(Normalization, NormFactorFormula) {
    const auto p = first(kOmega1550, 1, ModeFamily::Physical);
    const double n = 2.0 * M_PI * kFiber.core_radius * p.point.beta *
                     std::sqrt(2.0 * p.point.omega * p.coeffs.integral);
    EXPECT_LE(rel(p.coeffs.norm_factor, n), 1e-15);
}

TEST(Orthogonality, DistinctFrequenciesAtV6) {
    const double beta = beta_at(6.0, 1.4690);
    for (int m : {0, 1, 2}) {
        std::vector<ModeSolution> modes;
        for (auto f : {ModeFamily::Physical, ModeFamily::Gauge, ModeFamily::Ghost})
            for (auto& s : at_beta(beta, m, f)) modes.push_back(s);
        const auto rep = kg::orthogonality_report(modes);
        EXPECT_TRUE(rep.orthogonal) << "m=" << m << " max cross " << rep.max_cross;
        EXPECT_LE(rep.max_time_drift, 1e-10);
    }
}

TEST(Orthogonality, KappaPairsAndPhysicalGhostPairs) {
    const double beta = beta_at(6.0, 1.4690);
    const auto phys = at_beta(beta, 1, ModeFamily::Physical);
    const auto ghost = at_beta(beta, 1, ModeFamily::Ghost);
    ASSERT_GE(phys.size(), 2u);
    ASSERT_GE(ghost.size(), 1u);
    EXPECT_LE(std::abs(kg::reduced_kg_product(phys[0], phys[1]).total), 1e-6);
    EXPECT_LE(std::abs(kg::reduced_kg_product(phys[0], ghost[0]).total), 1e-6);
    EXPECT_LE(std::abs(kg::reduced_kg_product(phys[0], phys[0]).total - 1.0), 1e-6);
}

TEST(Orthogonality, DeltaIdentity) {
    // (omega^2 - omega'^2) P = 0 for every pair sharing (beta, m)
    const double beta = beta_at(7.0, 1.4695);
    std::vector<ModeSolution> modes = at_beta(beta, 1, ModeFamily::Physical);
    for (auto& g : at_beta(beta, 1, ModeFamily::Ghost)) modes.push_back(g);
    for (const auto& a : modes)
        for (const auto& b : modes) {
            const double dw2 = a.point.omega * a.point.omega - b.point.omega * b.point.omega;
            const cd p = kg::reduced_kg_product(a, b).total;
            EXPECT_LE(std::abs(dw2 * p), 1e-6 * std::abs(dw2) + 1e-15);
        }
}

TEST(Orthogonality, NormalizedGramStructure) {
    const auto p = first(kOmega1550, 1, ModeFamily::Physical);
    const auto g = first(kOmega1550, 0, ModeFamily::Gauge);
    const auto c = first(kOmega1550, 0, ModeFamily::Ghost);
    const cd pp = kg::reduced_kg_product(p, p).total;
    const cd gg = kg::reduced_kg_product(g, g).total;
    const cd gc = kg::reduced_kg_product(g, c).total;
    const cd cc = kg::reduced_kg_product(c, c).total;
    EXPECT_LE(std::abs(pp - 1.0), 1e-6);
    EXPECT_LE(std::abs(gg), 1e-6);
    EXPECT_LE(std::abs(gc - 1.0), 1e-6);
    EXPECT_LE(std::abs(cc), 1e-6);
}
