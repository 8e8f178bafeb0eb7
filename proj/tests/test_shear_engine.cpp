#include <gtest/gtest.h>

#include <cmath>

#include "hshear/mapping_catalog.hpp"
#include "hshear/shear_engine.hpp"
#include "oracles.hpp"

using namespace hshear;

namespace {

const Complex I{0.0, 1.0};

DilatationSpec zero_dilatation()
{
    return DilatationSpec::from_function([](Complex) { return Complex(0.0, 0.0); });
}

} // namespace

TEST(ShearAt, ZeroDilatationReturnsPrevertex)
{
    const MapSample s = shear_at(PrevertexSpec::koebe(1.0), zero_dilatation(), DiskPoint(0.5, 0.0));
    EXPECT_LT(std::abs(s.h - 1.0), 1e-13);
    EXPECT_LT(std::abs(s.g), 1e-13);
    EXPECT_LT(std::abs(s.f() - 1.0), 1e-13);
    EXPECT_EQ(s.source, SampleSource::shear_oracle);
}

TEST(ShearAt, IdentityDilatationWithCustomDerivative)
{
    const auto phi = PrevertexSpec::from_functions({}, [](Complex z) { return 1.0 / ((1.0 - z) * (1.0 - z)); });
    const MapSample s = shear_at(phi, DilatationSpec::power(1), DiskPoint(0.5, 0.0));
    // h' = (1 - z)^-3, h = ((1 - z)^-2 - 1) / 2
    EXPECT_LT(std::abs(s.h - 1.5), 1e-12);
    EXPECT_LT(std::abs(s.g - 0.5), 1e-12);
}

TEST(ShearAt, StripMappingOnRealAxis)
{
    const MapSample s = shear_at(PrevertexSpec::koebe(0.0), DilatationSpec::power(2), DiskPoint(0.5, 0.0));
    EXPECT_LT(std::abs(s.f() - 2.0 / 3.0), 1e-12);
}

TEST(ShearAt, Normalization)
{
    for (const auto& fp : {FamilyParams::make_F_a(0.3), FamilyParams::make_F_1a(-0.4), FamilyParams::make_f_2n(3),
                             FamilyParams::make_F_ca(0.7, 0.5)}) {
        const auto phi = family_prevertex(fp);
        const auto omega = family_dilatation(fp);
        const MapSample s = shear_at(phi, omega, DiskPoint(0.0, 0.0));
        EXPECT_EQ(s.h, Complex(0.0, 0.0));
        EXPECT_EQ(s.g, Complex(0.0, 0.0));
        EXPECT_LT(std::abs(shear_hprime(phi, omega, 0.0) - 1.0), 1e-15);
    }
}

TEST(ShearAt, PrevertexIdentityIsExact)
{
    const auto phi = PrevertexSpec::koebe(1.5);
    const auto omega = DilatationSpec::mobius(0.6);
    for (const auto& z : oracle::disk_points(30, 0.95)) {
        const MapSample s = shear_at(phi, omega, DiskPoint(z));
        EXPECT_LT(std::abs((s.h - s.g) - phi(z)), 1e-12 * std::max(1.0, std::abs(phi(z))));
        EXPECT_NEAR(s.v, phi(z).imag(), 1e-12 * std::max(1.0, std::abs(phi(z))));
    }
}

TEST(ShearAt, ShearSystemResiduals)
{
    const auto phi = PrevertexSpec::koebe(0.5);
    const auto omega = DilatationSpec::power(3);
    auto h = [&](Complex z) { return shear_at(phi, omega, DiskPoint(z)).h; };
    auto g = [&](Complex z) { return shear_at(phi, omega, DiskPoint(z)).g; };
    for (const auto& z : oracle::disk_points(6, 0.8)) {
        const DiskPoint p(z);
        const Complex hp = disk_derivative(h, p);
        const Complex gp = disk_derivative(g, p);
        EXPECT_LT(std::abs(hp - shear_hprime(phi, omega, z)), 1e-8);
        EXPECT_LT(std::abs(gp - omega(z) * hp), 1e-8);
        EXPECT_LT(std::abs(hp - gp - phi.d(z)), 1e-8);
    }
}

TEST(ShearAt, JacobianPositive)
{
    const auto phi = PrevertexSpec::koebe(2.0);
    const auto omega = DilatationSpec::mobius(-0.8);
    for (const auto& p : GridSpec{10, 24, 0.95}.nodes()) {
        const Complex hp = shear_hprime(phi, omega, p.value());
        const Complex gp = omega(p.value()) * hp;
        EXPECT_GT(std::norm(hp) - std::norm(gp), 0.0);
    }
}

TEST(ShearAt, Errors)
{
    EXPECT_THROW(shear_at(PrevertexSpec::koebe(1.0), DilatationSpec::power(2), DiskPoint(0.9995, 0.0)), DomainError);
    const auto bad = DilatationSpec::from_function([](Complex z) { return 2.0 * z; });
    EXPECT_THROW(shear_at(PrevertexSpec::koebe(1.0), bad, DiskPoint(0.7, 0.0)), InvalidDilatationError);
    EXPECT_THROW(validate_dilatation(bad), InvalidDilatationError);
    const auto offset = DilatationSpec::from_function([](Complex z) { return 0.5 + 0.1 * z; });
    EXPECT_THROW(validate_dilatation(offset), InvalidDilatationError);
    EXPECT_NO_THROW(validate_dilatation(offset, false));
    EXPECT_THROW(PrevertexSpec::koebe(2.5), DomainError);
    EXPECT_THROW(validate_prevertex(PrevertexSpec::from_functions({}, [](Complex z) { return z; })), DomainError);
    EXPECT_NO_THROW(validate_prevertex(PrevertexSpec::koebe(0.0)));
}

TEST(DilatationSpec, KindsAndSquareRoots)
{
    const Complex z{0.3, -0.4};
    EXPECT_LT(std::abs(DilatationSpec::power(4)(z) - std::pow(z, 4)), 1e-15);
    EXPECT_LT(std::abs(DilatationSpec::mobius(0.5)(z) - z * (z + 0.5) / (1.0 + 0.5 * z)), 1e-15);
    const auto sq = DilatationSpec::square_of([](Complex w) { return 0.5 * w; });
    EXPECT_LT(std::abs(sq(z) - 0.25 * z * z), 1e-15);

    const auto r4 = DilatationSpec::power(4).square_root();
    ASSERT_TRUE(r4.has_value());
    EXPECT_LT(std::abs((*r4)(z) - z * z), 1e-15);
    EXPECT_FALSE(DilatationSpec::power(3).square_root().has_value());
    const auto r0 = DilatationSpec::mobius(0.0).square_root();
    ASSERT_TRUE(r0.has_value());
    EXPECT_LT(std::abs((*r0)(z) - z), 1e-15);
    EXPECT_FALSE(DilatationSpec::mobius(0.5).square_root().has_value());
    EXPECT_TRUE(sq.square_root().has_value());
    EXPECT_THROW(DilatationSpec::mobius(1.5), DomainError);
    EXPECT_THROW(DilatationSpec::power(0), DomainError);
}

TEST(LiftThirdCoordinate, TrivialCases)
{
    auto hp = [](Complex z) { return k_c_derivative(2.0, z) / (1.0 - z * z); };
    auto q = [](Complex z) { return z; };
    EXPECT_EQ(lift_third_coordinate(hp, q, DiskPoint(0.0, 0.0)), 0.0);
    EXPECT_NEAR(lift_third_coordinate(hp, q, DiskPoint(0.6, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(lift_third_coordinate(hp, q, DiskPoint(-0.6, 0.0)), 0.0, 1e-15);
}

TEST(LiftThirdCoordinate, SlitSurfaceClosedFormUpToMirror)
{
    // The slit-domain surface formula Im{z(2-z)/(1-z)^2 - 2z(z^2-3z+3)/(3(1-z)^3)}
    // is the reflection F -> -F of 2 Im of the integral of h' q with q = z.
    auto hp = [](Complex z) { return k_c_derivative(2.0, z) / (1.0 - z * z); };
    auto q = [](Complex z) { return z; };
    auto reference = [](Complex z) {
        const Complex w = 1.0 - z;
        return (z * (2.0 - z) / (w * w) - 2.0 * z * (z * z - 3.0 * z + 3.0) / (3.0 * w * w * w)).imag();
    };
    const Complex z{0.3, 0.4};
    const double F = lift_third_coordinate(hp, q, DiskPoint(z));
    EXPECT_NEAR(F, -reference(z), 1e-9);
    EXPECT_GT(std::abs(F - reference(z)), 0.1);
    for (const auto& w : oracle::disk_points(20, 0.9))
        EXPECT_NEAR(lift_third_coordinate(hp, q, DiskPoint(w)), -reference(w), 1e-9 * std::max(1.0, std::abs(reference(w))));
}

TEST(SampleGrid, OneRingOfKoebe)
{
    const auto s = sample_grid(PrevertexSpec::koebe(1.0), zero_dilatation(), GridSpec{1, 4, 0.5});
    ASSERT_EQ(s.size(), 4u);
    const Complex expect[] = {0.5, 0.5 * I, -0.5, -0.5 * I};
    for (int j = 0; j < 4; ++j) {
        EXPECT_LT(std::abs(s[j].z.value() - expect[j]), 1e-15);
        EXPECT_LT(std::abs(s[j].h - expect[j] / (1.0 - expect[j])), 1e-13);
    }
}

TEST(SampleGrid, DeterministicRingMajorOrder)
{
    const GridSpec grid{2, 8, 0.9};
    const auto phi = PrevertexSpec::koebe(0.5);
    const auto omega = DilatationSpec::mobius(0.2);
    const auto a = sample_grid(phi, omega, grid);
    const auto b = sample_grid(phi, omega, grid);
    ASSERT_EQ(a.size(), 16u);
    for (std::size_t k = 0; k < a.size(); ++k) {
        const int ring = static_cast<int>(k) / 8 + 1;
        const int spoke = static_cast<int>(k) % 8;
        EXPECT_EQ(a[k].z.value(), grid.node(ring, spoke).value());
        EXPECT_EQ(a[k].u, b[k].u);
        EXPECT_EQ(a[k].v, b[k].v);
    }
}

TEST(SampleGrid, MatchesSlitClosedForm)
{
    const auto s = sample_grid(PrevertexSpec::koebe(2.0), DilatationSpec::power(2), GridSpec{1, 12, 0.5});
    for (const auto& m : s)
        EXPECT_LT(std::abs(m.f() - eval_f2n(2, m.z).f()), 1e-9);
}

TEST(SampleGrid, ReportsOffendingPoint)
{
    const auto bad = DilatationSpec::from_function([](Complex z) { return 1.5 * z; });
    try {
        sample_grid(PrevertexSpec::koebe(1.0), bad, GridSpec{2, 4, 0.9});
        FAIL() << "expected an error";
    } catch (const InvalidDilatationError& e) {
        EXPECT_NE(std::string(e.what()).find("at z="), std::string::npos);
    }
}
