#include "case_data.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace egr;
using egr::testing::shipped_case;

namespace {

std::vector<std::string> labels(const std::vector<MordellClass>& v)
{
    std::vector<std::string> out;
    for (const auto& c : v) {
        out.push_back(to_string(c));
    }
    return out;
}

FilterSpec spec_with_row(std::array<long, 4> h, bool cubic = false)
{
    return FilterSpec{RayClassRow{0, h}, cubic, std::nullopt};
}

} // namespace

TEST(ClassifySqrtDisc, Examples)
{
    EXPECT_EQ(classify_sqrt_disc(1, 0), SqrtDiscField::K);
    EXPECT_EQ(classify_sqrt_disc(-1, 0), SqrtDiscField::KSqrtMinus1);
    EXPECT_EQ(classify_sqrt_disc(1, 3), SqrtDiscField::KSqrtEps);
    EXPECT_EQ(classify_sqrt_disc(-1, 3), SqrtDiscField::KSqrtMinusEps);
    EXPECT_EQ(classify_sqrt_disc(-1, 8), SqrtDiscField::KSqrtMinus1);
    EXPECT_EQ(to_string(SqrtDiscField::KSqrtMinusEps), "K(sqrt(-eps))");
}

TEST(ClassifySqrtDisc, DependsOnlyOnSignAndParity)
{
    for (int sign : {1, -1}) {
        for (long n = 0; n < 24; ++n) {
            EXPECT_EQ(classify_sqrt_disc(sign, n), classify_sqrt_disc(sign, n + 2));
            EXPECT_EQ(classify_sqrt_disc(sign, n), classify_sqrt_disc(sign, n % 2));
        }
    }
}

TEST(AdmissibleCurves, ShippedFields)
{
    const std::map<long, std::vector<std::string>> expected = {
        {43, {"E_0^+", "E_2^+", "E_4^+"}},
        {46, {"E_3^+"}},
        {59, {"E_0^+", "E_3^-"}},
        {62, {"E_3^-"}},
        {67, {"E_0^+"}},
        {71, {"E_3^-"}},
    };
    for (const auto& [m, want] : expected) {
        EXPECT_EQ(labels(admissible_curves(shipped_case(m).filter)), want) << "m = " << m;
    }
}

TEST(AdmissibleCurves, ExternalConstraintOnlyRemoves)
{
    FilterSpec spec = shipped_case(43).filter;
    ASSERT_TRUE(spec.external.has_value());
    auto with = admissible_curves(spec);
    spec.external.reset();
    auto without = admissible_curves(spec);
    for (const auto& c : with) {
        EXPECT_NE(std::find(without.begin(), without.end(), c), without.end());
    }
    ExternalConstraint odd{-1, 2, 1, ""};
    spec.external = odd;
    EXPECT_TRUE(admissible_curves(spec).empty());
}

TEST(AdmissibleCurves, CubicFlagOnlyRemoves)
{
    auto plain = admissible_curves(spec_with_row({3, 3, 3, 3}));
    auto cubic = admissible_curves(spec_with_row({3, 3, 3, 3}, true));
    EXPECT_EQ(plain.size(), 12u);
    EXPECT_EQ(labels(cubic), (std::vector<std::string>{"E_0^+", "E_0^-", "E_3^+", "E_3^-"}));
}

TEST(AdmissibleCurves, EmptyWithoutMultiplesOfThree)
{
    EXPECT_TRUE(admissible_curves(spec_with_row({1, 2, 4, 5})).empty());
    EXPECT_TRUE(admissible_curves(spec_with_row({1, 1, 1, 1}, true)).empty());
}

TEST(AdmissibleCurves, RejectsMissingOrInvalidRow)
{
    EXPECT_THROW(admissible_curves(FilterSpec{}), std::invalid_argument);
    EXPECT_THROW(admissible_curves(spec_with_row({0, 3, 3, 3})), std::invalid_argument);
}

TEST(AdmissibleCurves, RandomRowsAreSortedDistinctAndConsistent)
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> h(1, 12);
    for (int trial = 0; trial < 1000; ++trial) {
        std::array<long, 4> row{h(rng), h(rng), h(rng), h(rng)};
        bool cubic = trial % 2 == 1;
        auto out = admissible_curves(spec_with_row(row, cubic));
        std::set<MordellClass> seen(out.begin(), out.end());
        EXPECT_EQ(seen.size(), out.size());
        for (std::size_t i = 1; i < out.size(); ++i) {
            EXPECT_TRUE(out[i - 1].n < out[i].n || (out[i - 1].n == out[i].n && out[i - 1].sign > out[i].sign));
        }
        for (const auto& c : out) {
            EXPECT_GE(c.n, 0);
            EXPECT_LT(c.n, 6);
            // E_n^s comes from Delta = -s*eps^n, which lies in the same class as n + 6
            EXPECT_EQ(row[static_cast<std::size_t>(classify_sqrt_disc(-c.sign, c.n))] % 3, 0);
            if (cubic) {
                EXPECT_EQ(c.n % 3, 0);
            }
        }
    }
}
