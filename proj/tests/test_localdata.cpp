#include "case_data.hpp"
#include "egr/tate.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace egr;

namespace {

struct TateRow {
    long m;
    const char* a[5];
    long p;
    long residue;
    const char* kodaira;
    int f;
    int vmin;
};

const TateRow tate_rows[] = {
#include "oracle/tate_oracle_table.inc"
};

Curve curve_from_row(const TateRow& row)
{
    QuadField K(row.m);
    return Curve(parse_elem(row.a[0], K), parse_elem(row.a[1], K), parse_elem(row.a[2], K), parse_elem(row.a[3], K),
                 parse_elem(row.a[4], K));
}

PrimeIdeal prime_from_row(const TateRow& row)
{
    QuadField K(row.m);
    for (const auto& P : factor_rational_prime(K, row.p)) {
        if (row.residue < 0 || P.omega_residue == row.residue) {
            return P;
        }
    }
    throw std::logic_error("no prime matches oracle row");
}

} // namespace

TEST(Tate, MatchesOracleTable)
{
    int checked = 0;
    for (const auto& row : tate_rows) {
        Curve E = curve_from_row(row);
        PrimeIdeal P = prime_from_row(row);
        LocalData ld = tate_local(E, P);
        SCOPED_TRACE(to_string(E) + " at " + to_string(P));
        EXPECT_EQ(ld.kodaira.to_string(), row.kodaira);
        EXPECT_EQ(ld.f_exp, row.f);
        EXPECT_EQ(ld.v_min_disc, row.vmin);
        ++checked;
    }
    EXPECT_EQ(checked, 400);
}

TEST(Tate, LocalModelIsMinimalImage)
{
    for (std::size_t i = 0; i < std::size(tate_rows); i += 7) {
        Curve E = curve_from_row(tate_rows[i]);
        PrimeIdeal P = prime_from_row(tate_rows[i]);
        LocalData ld = tate_local(E, P);
        EXPECT_EQ(E.transform(ld.to_minimal), ld.local_model);
        EXPECT_TRUE(is_integral_at(ld.local_model, P));
        EXPECT_EQ(valuation(ld.local_model.discriminant(), P), ld.v_min_disc);
    }
}

TEST(Tate, GoodReductionExample)
{
    QuadField K(43);
    Curve E = Curve::short_form(FieldElem(K), FieldElem(K, 1728));
    auto P5 = factor_rational_prime(K, 5);
    LocalData ld = tate_local(E, P5.front());
    EXPECT_EQ(ld.kodaira.to_string(), "I0");
    EXPECT_EQ(ld.f_exp, 0);
}

TEST(Tate, KodairaParseRoundTrip)
{
    for (const char* s : {"I0", "I7", "II", "III", "IV", "I0*", "I3*", "IV*", "III*", "II*"}) {
        EXPECT_EQ(Kodaira::parse(s).to_string(), s);
    }
    EXPECT_THROW(Kodaira::parse("V"), ParseError);
}

TEST(Tate, OggFormulaOnOracleRows)
{
    for (const auto& row : tate_rows) {
        Kodaira k = Kodaira::parse(row.kodaira);
        int components = 0;
        switch (k.kind) {
        case KodairaKind::I0: components = 1; break;
        case KodairaKind::In: components = k.n; break;
        case KodairaKind::II: components = 1; break;
        case KodairaKind::III: components = 2; break;
        case KodairaKind::IV: components = 3; break;
        case KodairaKind::I0Star: components = 5; break;
        case KodairaKind::InStar: components = k.n + 5; break;
        case KodairaKind::IVStar: components = 7; break;
        case KodairaKind::IIIStar: components = 8; break;
        case KodairaKind::IIStar: components = 9; break;
        }
        EXPECT_EQ(row.f, row.vmin - components + 1) << row.kodaira;
    }
}

TEST(Conductor, MordellCandidateIsNontrivial)
{
    QuadField K(43);
    Curve E = Curve::short_form(FieldElem(K, 324), FieldElem(K));
    Conductor N = conductor(E);
    EXPECT_FALSE(N.is_trivial());
    EXPECT_FALSE(is_everywhere_good(E));
}

TEST(Tate, LocalDataInvariantsOnOracleRows)
{
    for (const auto& row : tate_rows) {
        LocalData ld = tate_local(curve_from_row(row), prime_from_row(row));
        EXPECT_EQ(ld.f_exp == 0, ld.kodaira.is_good());
        EXPECT_EQ(ld.f_exp == 1, ld.kodaira.is_multiplicative());
        if (ld.prime.p >= 5) {
            EXPECT_LE(ld.f_exp, 2);
            if (ld.kodaira.is_additive()) {
                EXPECT_EQ(ld.f_exp, 2);
            }
        }
        EXPECT_GE(ld.v_min_disc, ld.f_exp);
    }
}

TEST(Tate, MinimalityIdempotent)
{
    for (const auto& row : tate_rows) {
        LocalData ld = tate_local(curve_from_row(row), prime_from_row(row));
        LocalData again = tate_local(ld.local_model, ld.prime);
        EXPECT_EQ(again.kodaira, ld.kodaira);
        EXPECT_EQ(again.v_min_disc, ld.v_min_disc);
        EXPECT_EQ(again.f_exp, ld.f_exp);
    }
}

TEST(Tate, CandidateAtRamifiedTwo)
{
    QuadField K(43);
    Curve EC = Curve::short_form(FieldElem(K, 324), FieldElem(K));
    LocalData ld = tate_local(EC, factor_rational_prime(K, 2).front());
    EXPECT_GE(ld.f_exp, 1);
    EXPECT_EQ(to_string(ld).substr(0, 8), "{prime: ");
}

TEST(Tate, GoodReductionLeavesModel)
{
    QuadField K(43);
    Curve E = Curve::short_form(FieldElem(K, 1), FieldElem(K, 1));
    for (long p : {5L, 7L, 11L}) {
        for (const auto& P : factor_rational_prime(K, p)) {
            if (valuation(E.discriminant(), P) != 0) {
                continue;
            }
            LocalData ld = tate_local(E, P);
            EXPECT_TRUE(ld.kodaira.is_good());
            EXPECT_EQ(ld.f_exp, 0);
            EXPECT_EQ(ld.local_model, E);
        }
    }
}

TEST(Conductor, PositiveControl)
{
    QuadField K(29);
    FieldElem eps = fundamental_unit(K);
    Curve E(FieldElem(K, 1), FieldElem(K), eps * eps, FieldElem(K), FieldElem(K));
    EXPECT_TRUE(is_unit(E.discriminant()));
    EXPECT_TRUE(conductor(E).is_trivial());
    EXPECT_TRUE(is_everywhere_good(E));
    Curve EC = curve_from_c4c6(E.c4(), E.c6());
    Conductor N = conductor(EC);
    EXPECT_TRUE(N.is_trivial());
    EXPECT_FALSE(N.local.empty());
    EXPECT_TRUE(is_everywhere_good(EC));
}

TEST(Conductor, SupportAboveTwoAndThree)
{
    QuadField K(43);
    Conductor N = conductor(Curve::short_form(FieldElem(K), FieldElem(K, 1)));
    EXPECT_FALSE(N.is_trivial());
    for (const auto& [P, e] : N.factors) {
        EXPECT_TRUE(P.p == 2 || P.p == 3) << to_string(P);
    }
}

TEST(Conductor, NonExistenceExamples)
{
    QuadField K(46);
    FieldElem eps = fundamental_unit(K);
    EXPECT_FALSE(is_everywhere_good(curve_from_c4c6(Rat(-12) * eps, FieldElem(K))));
    EXPECT_THROW(Curve::short_form(FieldElem(K), FieldElem(K)), SingularCurve);
}

namespace {

std::map<std::string, int> exponents(const Conductor& N)
{
    std::map<std::string, int> out;
    for (const auto& [P, e] : N.factors) {
        out[to_string(P)] = e;
    }
    return out;
}

} // namespace

TEST(Conductor, InvariantUnderIntegralIsomorphisms)
{
    std::mt19937_64 rng(2023);
    std::uniform_int_distribution<long> coord(-5, 5), power(-2, 2), sign(0, 1);
    int candidates = 0;
    for (auto [c, cd] : egr::testing::all_datasets()) {
        MordellCurve mc = egr::testing::case_curve(*c, *cd);
        const QuadField& K = mc.field;
        IntegralPointSet S = combine_and_filter(mc, cd->generators, 5);
        for (const auto& ip : S.points) {
            if (ip.point.infinity) {
                continue;
            }
            Curve EC = curve_from_c4c6(ip.point.x, ip.point.y);
            auto reference = exponents(conductor(EC));
            ASSERT_FALSE(reference.empty());
            for (int i = 0; i < 100; ++i) {
                FieldElem u = mc.epsilon.pow(power(rng)) * Rat(sign(rng) ? 1 : -1);
                auto integral = [&] { return AlgInt{K, Int(coord(rng)), Int(coord(rng))}.to_elem(); };
                Curve F = EC.transform(Isomorphism{u, integral(), integral(), integral()});
                ASSERT_EQ(exponents(conductor(F)), reference) << to_string(ip.point);
            }
            ++candidates;
        }
    }
    EXPECT_EQ(candidates, 23);
}
