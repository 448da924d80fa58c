#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include <gbfiber/quadrature.hpp>

using namespace gbfiber;

TEST(Quadrature, PolynomialIsExact) {
    auto r = quadrature::integrate([](double x) { return 3.0 * x * x - 2.0 * x + 1.0; }, -1.0, 2.0);
    EXPECT_NEAR(r.value, 9.0 - 3.0 + 3.0, 1e-13);
}

TEST(Quadrature, ExponentialTail) {
    auto r = quadrature::integrate([](double x) { return std::exp(-x); }, 0.0, 50.0);
    EXPECT_NEAR(r.value, 1.0 - std::exp(-50.0), 1e-14);
}

TEST(Quadrature, ComplexIntegrand) {
    auto r = quadrature::integrate(
        [](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0, 1.0);
    const std::complex<double> exact = (std::exp(std::complex<double>(0.0, 1.0)) - 1.0) /
                                       std::complex<double>(0.0, 1.0);
    EXPECT_LT(std::abs(r.value - exact), 1e-14);
}

TEST(Quadrature, CancellingIntegralTerminates) {
    // integral is zero; the L1-relative target keeps refinement finite
    auto r = quadrature::integrate([](double x) { return std::sin(x); }, 0.0, 2.0 * M_PI);
    EXPECT_LT(std::abs(r.value), 1e-13);
}

TEST(Quadrature, ReportsNonConvergence) {
    auto f = [](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; };
    try {
        quadrature::integrate(f, 0.0, 1.0, 1e-15);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_GT(e.achieved(), 0.0);
    }
}

TEST(Quadrature, PiecesSumToWhole) {
    auto f = [](double x) { return std::exp(-0.3 * x) * x; };
    const auto pieces = quadrature::integrate_pieces(f, quadrature::tail_breaks(2.0, 0.3));
    const double upper = 2.0 * (0.3 + 40.0) / 0.3;
    const double exact = [&] {
        auto prim = [](double x) { return -std::exp(-0.3 * x) * (x / 0.3 + 1.0 / 0.09); };
        return prim(upper) - prim(2.0);
    }();
    EXPECT_LE(std::abs(pieces.value - exact), 1e-12 * exact);
}

TEST(Quadrature, TailBreaksSpanDecayRegion) {
    const auto b = quadrature::tail_breaks(4.1, 0.2);
    EXPECT_DOUBLE_EQ(b.front(), 4.1);
    EXPECT_NEAR(b.back(), 4.1 * 40.2 / 0.2, 1e-9);
    for (std::size_t k = 1; k < b.size(); ++k) EXPECT_GT(b[k], b[k - 1]);
}
