#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hshear/analytic_core.hpp"
#include "hshear/grid.hpp"
#include "oracles.hpp"

using namespace hshear;

namespace {

const Complex I{0.0, 1.0};

} // namespace

TEST(PrincipalLog, Examples)
{
    EXPECT_LT(std::abs(principal_log(1.0)), 1e-15);
    EXPECT_LT(std::abs(principal_log(std::numbers::e) - 1.0), 1e-15);
    EXPECT_LT(std::abs(principal_log(I) - I * (kPi / 2)), 1e-15);
}

TEST(PrincipalLog, ZeroIsDomainError)
{
    EXPECT_THROW(principal_log(0.0), DomainError);
}

TEST(PrincipalLog, ArgumentInHalfOpenInterval)
{
    // negative reals, including a signed-zero imaginary part, map to +i pi
    EXPECT_DOUBLE_EQ(principal_log(Complex(-2.0, 0.0)).imag(), kPi);
    EXPECT_DOUBLE_EQ(principal_log(Complex(-2.0, -0.0)).imag(), kPi);
    for (const auto& z : oracle::disk_points(50, 5.0)) {
        if (z == Complex(0.0, 0.0))
            continue;
        const Complex l = principal_log(z);
        EXPECT_GT(l.imag(), -kPi);
        EXPECT_LE(l.imag(), kPi);
        EXPECT_LT(std::abs(std::exp(l) - z), 1e-14 * std::max(1.0, std::abs(z)));
    }
}

TEST(PrincipalPow, Examples)
{
    EXPECT_LT(std::abs(principal_pow(4.0, 0.5) - 2.0), 1e-15);
    const Complex z{0.3, 0.4};
    EXPECT_LT(std::abs(principal_pow(z, 1.0) - z), 1e-15);
    EXPECT_LT(std::abs(principal_pow(I, 2.0) + 1.0), 1e-15);
}

TEST(PrincipalPow, ZeroBase)
{
    EXPECT_EQ(principal_pow(0.0, 0.5), Complex(0.0, 0.0));
    EXPECT_THROW(principal_pow(0.0, 0.0), DomainError);
    EXPECT_THROW(principal_pow(0.0, -1.0), DomainError);
}

TEST(PrincipalPow, ExponentAdditivityInRightHalfPlane)
{
    for (const auto& w : oracle::disk_points(40, 0.95)) {
        const Complex z = 1.0 + w; // Re z > 0
        for (double c1 : {0.3, 1.7, -0.4})
            for (double c2 : {0.25, -1.1, 2.0}) {
                const Complex lhs = principal_pow(z, c1 + c2);
                const Complex rhs = principal_pow(z, c1) * principal_pow(z, c2);
                EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::abs(lhs));
            }
    }
}

TEST(PrincipalPow, IntegerExponentMatchesRepeatedProduct)
{
    const Complex z{-0.7, 0.2};
    Complex p = 1.0;
    for (int k = 1; k <= 6; ++k) {
        p *= z;
        EXPECT_LT(std::abs(principal_pow(z, k) - p), 1e-14);
    }
}

TEST(Cayley, Examples)
{
    EXPECT_LT(std::abs(cayley(DiskPoint(0.0, 0.0)) - 1.0), 1e-15);
    EXPECT_LT(std::abs(cayley(DiskPoint(0.5, 0.0)) - 3.0), 1e-15);
    const Complex z = 0.99 * I;
    EXPECT_LT(std::abs(cayley(DiskPoint(z)) - (1.0 + z) / (1.0 - z)), 1e-15);
    EXPECT_LT(std::abs(cayley(DiskPoint(z)) - I), 0.011); // tends to i as z -> i
}

TEST(Cayley, RightHalfPlane)
{
    for (const auto& p : GridSpec{8, 16, 0.999}.nodes())
        EXPECT_GT(cayley(p).real(), 0.0);
}

TEST(DiskPoint, RejectsOutsideAndNonFinite)
{
    EXPECT_THROW(DiskPoint(1.0, 0.0), DomainError);
    EXPECT_THROW(DiskPoint(0.8, 0.6), DomainError);
    EXPECT_THROW(DiskPoint(std::nan(""), 0.0), DomainError);
    EXPECT_NO_THROW(DiskPoint(0.6, 0.6));
}

TEST(BranchSafety, LinearFactorsHavePositiveRealPart)
{
    for (const auto& p : GridSpec{12, 36, 0.999}.nodes())
        for (int k = 0; k < 24; ++k) {
            const Complex e = std::polar(1.0, 2.0 * kPi * k / 24);
            EXPECT_GT((1.0 - p.value() * e).real(), 0.0);
        }
}

TEST(QuadratureConfig, Validation)
{
    EXPECT_THROW((QuadratureConfig{0.0, 1e-12, 10}.validate()), DomainError);
    EXPECT_THROW((QuadratureConfig{1e-12, -1.0, 10}.validate()), DomainError);
    EXPECT_THROW((QuadratureConfig{1e-12, 1e-12, 0}.validate()), DomainError);
    EXPECT_NO_THROW(QuadratureConfig{}.validate());
}

TEST(IntegrateSegment, Examples)
{
    const Complex one = integrate_segment([](Complex) { return Complex(1.0, 0.0); }, 0.0, Complex(0.5, 0.5));
    EXPECT_LT(std::abs(one - Complex(0.5, 0.5)), 1e-15);
    const Complex lin = integrate_segment([](Complex t) { return t; }, 0.0, 0.6);
    EXPECT_LT(std::abs(lin - 0.18), 1e-15);
    // antiderivative (1 - t)^-1 - 1
    const Complex pole = integrate_segment([](Complex t) { return 1.0 / ((1.0 - t) * (1.0 - t)); }, 0.0, 0.5);
    EXPECT_LT(std::abs(pole - 1.0), 1e-13);
}

TEST(IntegrateSegment, AgreesWithTanhSinhOracle)
{
    auto f = [](Complex t) { return std::exp(t) / (1.0 - t * t * t); };
    for (const auto& z : oracle::disk_points(20, 0.97)) {
        const Complex lib = integrate_segment(f, 0.0, z);
        const Complex ref = oracle::segment_integral(f, 0.0, z, 9);
        EXPECT_LT(std::abs(lib - ref), 1e-11 * std::max(1.0, std::abs(ref)));
    }
}

TEST(IntegrateSegment, Additivity)
{
    auto f = [](Complex t) { return std::pow(1.0 - t, -2.5) * std::exp(I * t); };
    const QuadratureConfig cfg;
    const Complex z0{-0.2, 0.1};
    const Complex z1{0.9, 0.3};
    const Complex whole = integrate_segment(f, z0, z1, cfg);
    for (double s : {0.1, 0.37, 0.5, 0.93}) {
        const Complex zm = z0 + s * (z1 - z0);
        const Complex parts = integrate_segment(f, z0, zm, cfg) + integrate_segment(f, zm, z1, cfg);
        EXPECT_LT(std::abs(whole - parts), 2.0 * cfg.abs_tol + 1e-12 * std::abs(whole));
    }
}

TEST(IntegrateSegment, ConvergenceErrorWhenSubdivisionsExhausted)
{
    auto f = [](Complex t) { return std::pow(1.0 - t, -1.9); };
    EXPECT_THROW(integrate_segment(f, 0.0, 0.999999, QuadratureConfig{1e-14, 1e-14, 3}), ConvergenceError);
}

TEST(IntegrateSegment, PropagatesIntegrandErrors)
{
    auto f = [](Complex t) -> Complex {
        if (t.real() > 0.3)
            throw InvalidDilatationError("boom");
        return t;
    };
    EXPECT_THROW(integrate_segment(f, 0.0, 0.5), InvalidDilatationError);
    auto nan = [](Complex) { return Complex(std::nan(""), 0.0); };
    EXPECT_THROW(integrate_segment(nan, 0.0, 0.5), DomainError);
}

TEST(IntegrateSegment, EmptySegment)
{
    EXPECT_EQ(integrate_segment([](Complex t) { return t; }, 0.3, 0.3), Complex(0.0, 0.0));
}

TEST(Derivatives, CauchyContourIsSpectrallyAccurate)
{
    auto f = [](Complex z) { return z / ((1.0 - z) * (1.0 - z) * (1.0 - z)); };
    auto df = [](Complex z) { return (1.0 + 2.0 * z) / std::pow(1.0 - z, 4); };
    for (const auto& p : GridSpec{9, 12, 0.9}.nodes()) {
        const Complex exact = df(p.value());
        EXPECT_LT(std::abs(disk_derivative(f, p) - exact), 1e-12 * std::max(1.0, std::abs(exact)));
    }
}

TEST(Derivatives, CentralDifferenceNearTheCenter)
{
    auto f = [](Complex z) { return std::exp(z); };
    EXPECT_LT(std::abs(central_difference(f, Complex(0.1, 0.2)) - std::exp(Complex(0.1, 0.2))), 1e-9);
}

TEST(ShortestString, RoundTrips)
{
    EXPECT_EQ(shortest_string(0.3), "0.3");
    EXPECT_EQ(shortest_string(2.0), "2");
}
