#include <gtest/gtest.h>

#include <cmath>

#include "hshear/verification.hpp"

using namespace hshear;

namespace {

const GridSpec kGrid{10, 24, 0.9};

Family fam(const FamilyParams& fp) { return Family(fp); }

} // namespace

TEST(Report, PassIffResidualWithinTolerance)
{
    VerificationReport r;
    r.max_residual = 1.0;
    r.tolerance = 1.0;
    r.finalize();
    EXPECT_TRUE(r.passed);
    r.max_residual = std::nextafter(1.0, 2.0);
    r.finalize();
    EXPECT_FALSE(r.passed);
    r.max_residual = std::nan("");
    r.finalize();
    EXPECT_FALSE(r.passed);
}

TEST(OracleEquivalence, Examples)
{
    const auto a = check_oracle_equivalence(fam(FamilyParams::make_f_1n(2)), kGrid);
    EXPECT_TRUE(a.passed);
    EXPECT_LT(a.max_residual, 1e-8);
    EXPECT_LT(check_oracle_equivalence(fam(FamilyParams::make_f_2n(3)), kGrid).max_residual, 1e-8);
    const auto c = check_oracle_equivalence(fam(FamilyParams::make_f_cn(0.5, 3)), kGrid);
    EXPECT_LT(c.max_residual, 1e-6);
    EXPECT_TRUE(c.passed);
}

TEST(OracleEquivalence, ZeroToleranceFails)
{
    const auto r = check_oracle_equivalence(fam(FamilyParams::make_F_ca(1.3, 0.2)), kGrid, 0.0);
    EXPECT_GT(r.max_residual, 0.0);
    EXPECT_FALSE(r.passed);
}

TEST(OracleEquivalence, TighterQuadratureDoesNotIncreaseResidual)
{
    const Family f(FamilyParams::make_f_2n(4));
    const GridSpec g{4, 8, 0.9};
    double previous = std::numeric_limits<double>::infinity();
    for (double t : {1e-8, 1e-10, 1e-12}) {
        const auto r = check_oracle_equivalence(f, g, std::nullopt, QuadratureConfig{t, t, 2000});
        EXPECT_LE(r.max_residual, 2.0 * previous + 1e-14) << t;
        previous = r.max_residual;
    }
}

TEST(Dilatation, Examples)
{
    EXPECT_LT(check_dilatation(fam(FamilyParams::make_F_ca(2.0, 0.5)), kGrid).max_residual, 1e-8);
    EXPECT_LT(check_dilatation(fam(FamilyParams::make_f_2n(4)), kGrid).max_residual, 1e-8);
    EXPECT_TRUE(check_dilatation(fam(FamilyParams::make_f_cn(0.5, 4)), GridSpec{4, 8, 0.9}).passed);
}

TEST(Prevertex, AllFamilies)
{
    for (const auto& fp : {FamilyParams::make_F_a(0.3), FamilyParams::make_F_0a(-1.0), FamilyParams::make_F_1a(1.0),
                           FamilyParams::make_F_ca(0.4, 0.6), FamilyParams::make_f_0n(5), FamilyParams::make_f_1n(6),
                           FamilyParams::make_f_2n(7), FamilyParams::make_f_cn(1.5, 3)}) {
        const auto r = check_prevertex(fam(fp), kGrid);
        EXPECT_TRUE(r.passed) << fp.label() << ' ' << r.max_residual;
    }
}

TEST(Jacobian, PositiveOnGrids)
{
    const auto r = check_jacobian_positive(fam(FamilyParams::make_f_2n(2)), GridSpec{10, 24, 0.95});
    EXPECT_TRUE(r.passed);
    ASSERT_TRUE(r.detail("min_jacobian").has_value());
    EXPECT_GT(*r.detail("min_jacobian"), 0.0);
    EXPECT_DOUBLE_EQ(r.max_residual, -*r.detail("min_jacobian"));
    EXPECT_TRUE(check_jacobian_positive(fam(FamilyParams::make_F_1a(-0.5)), kGrid).passed);
}

TEST(Jacobian, InvalidDilatationRejectedUpstream)
{
    const auto bad = DilatationSpec::from_function([](Complex z) { return 2.0 * z; });
    EXPECT_THROW(validate_dilatation(bad), InvalidDilatationError);
}

TEST(StripBound, Examples)
{
    const auto r0 = check_strip_bound(0.0, GridSpec{20, 48, 0.999});
    EXPECT_TRUE(r0.passed);
    EXPECT_LT(*r0.detail("sup_abs_v"), kPi / 4);
    const auto r1 = check_strip_bound(1.0, GridSpec{20, 48, 0.999});
    EXPECT_TRUE(r1.passed);
    EXPECT_GT(*r1.detail("min_u"), -0.5);
    const auto rm = check_strip_bound(-1.0, GridSpec{20, 48, 0.999});
    EXPECT_TRUE(rm.passed);
    EXPECT_LT(*rm.detail("max_u"), 0.5);
    EXPECT_EQ(eval_F_0a(0.3, DiskPoint(0.0, 0.0)).v, 0.0);
    EXPECT_FALSE(check_strip_bound(0.0, kGrid, -1.0).passed);
}

TEST(Symmetry, Examples)
{
    const auto a = check_symmetry(fam(FamilyParams::make_F_a(0.3)), kGrid);
    EXPECT_TRUE(a.passed);
    EXPECT_LT(a.max_residual, 1e-12);
    const auto b = check_symmetry(fam(FamilyParams::make_F_1a(0.4)), kGrid);
    EXPECT_TRUE(b.passed);
    EXPECT_EQ(eval_F_1a(0.4, DiskPoint(0.6, 0.0)).v, 0.0);
}

TEST(SlitLimit, Endpoints)
{
    for (auto [a, target] : {std::pair{1.0, -1.0 / 6.0}, {0.0, -1.0 / 3.0}, {-1.0, -0.5}}) {
        const auto r = check_slit_limit(fam(FamilyParams::make_F_ca(2.0, a)));
        EXPECT_TRUE(r.passed) << a << ' ' << r.max_residual;
        EXPECT_DOUBLE_EQ(*r.detail("target"), target);
        EXPECT_EQ(*r.detail("monotone"), 1.0);
    }
    EXPECT_TRUE(check_slit_limit(fam(FamilyParams::make_f_2n(2))).passed);
    EXPECT_TRUE(check_slit_limit(fam(FamilyParams::make_f_2n(1))).passed);
    EXPECT_THROW(check_slit_limit(fam(FamilyParams::make_F_ca(1.5, 0.0))), UnsupportedParameterError);
}

TEST(SlitLimit, NonMonotoneSequenceFails)
{
    const auto r = check_slit_limit(fam(FamilyParams::make_F_ca(2.0, 0.0)), {0.9999, 0.99});
    EXPECT_FALSE(r.passed);
    EXPECT_TRUE(std::isinf(r.max_residual));
}

TEST(Chd, FamiliesPassCrescentFails)
{
    EXPECT_TRUE(check_chd_heuristic(fam(FamilyParams::make_F_0a(0.3)), GridSpec{10, 24, 0.98}).passed);
    EXPECT_TRUE(check_chd_heuristic(fam(FamilyParams::make_f_2n(4)), GridSpec{10, 24, 0.98}).passed);
    const auto bad = check_chd_polyline(crescent_fixture());
    EXPECT_FALSE(bad.passed);
    EXPECT_EQ(bad.max_residual, 4.0);
}

TEST(Chd, ScanCountsCrossings)
{
    const std::vector<Complex> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    EXPECT_EQ(chd_scan(square, 10).max_crossings, 2);
    EXPECT_THROW(chd_scan({{0, 0}, {1, 1}}, 10), DomainError);
}

TEST(Surface, Examples)
{
    const auto a = check_surface(fam(FamilyParams::make_f_2n(2)), kGrid);
    EXPECT_TRUE(a.passed) << a.max_residual;
    EXPECT_LT(*a.detail("isothermal"), 1e-5);
    EXPECT_LT(*a.detail("projection"), 1e-10);
    EXPECT_TRUE(check_surface(fam(FamilyParams::make_f_0n(4)), kGrid).passed);
    const auto r = check_surface(fam(FamilyParams::make_f_1n(4)), GridSpec{10, 24, 0.98});
    EXPECT_TRUE(r.passed) << r.max_residual;
    for (const char* key : {"laplacian_ratio_u", "laplacian_ratio_v", "laplacian_ratio_F3"}) {
        EXPECT_GE(*r.detail(key), 3.0);
        EXPECT_LE(*r.detail(key), 5.0);
    }
    EXPECT_THROW(check_surface(fam(FamilyParams::make_f_1n(3)), kGrid), InvalidDilatationError);
    EXPECT_THROW(check_surface(fam(FamilyParams::make_f_1n(2)), GridSpec{1, 8, 0.5}), DomainError);
}

TEST(Dispatch, Applicability)
{
    EXPECT_TRUE(check_applicable("strip_bound", FamilyParams::make_F_0a(0.2)));
    EXPECT_FALSE(check_applicable("strip_bound", FamilyParams::make_F_1a(0.2)));
    EXPECT_TRUE(check_applicable("slit_limit", FamilyParams::make_F_ca(2.0, 0.3)));
    EXPECT_FALSE(check_applicable("slit_limit", FamilyParams::make_f_2n(4)));
    EXPECT_TRUE(check_applicable("surface", FamilyParams::make_f_2n(4)));
    EXPECT_FALSE(check_applicable("surface", FamilyParams::make_f_2n(3)));
    EXPECT_FALSE(check_applicable("bogus", FamilyParams::make_f_2n(3)));
    const auto names = applicable_checks(FamilyParams::make_f_0n(3));
    EXPECT_EQ(std::count(names.begin(), names.end(), "surface"), 0);
    EXPECT_EQ(std::count(names.begin(), names.end(), "oracle_equivalence"), 1);
    EXPECT_THROW(run_check("strip_bound", fam(FamilyParams::make_f_0n(3)), kGrid), UnsupportedParameterError);
}

TEST(Dispatch, ReportsAreReproducible)
{
    const Family f(FamilyParams::make_F_1a(0.3));
    for (const auto& name : applicable_checks(f.params())) {
        if (name == "surface")
            continue;
        const auto a = run_check(name, f, GridSpec{4, 8, 0.9});
        const auto b = run_check(name, f, GridSpec{4, 8, 0.9});
        EXPECT_EQ(a.max_residual, b.max_residual) << name;
        EXPECT_EQ(a.worst_point.value(), b.worst_point.value()) << name;
        EXPECT_EQ(a.check_name, name);
    }
}
