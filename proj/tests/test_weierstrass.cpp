#include "case_data.hpp"
#include "egr/reduction.hpp"
#include "egr/torsion.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace egr;
using egr::testing::all_datasets;
using egr::testing::case_curve;
using egr::testing::shipped_case;

namespace {

Rat random_rat(std::mt19937_64& rng, long range = 30, long den = 8)
{
    std::uniform_int_distribution<long> n(-range, range), d(1, den);
    return make_rat(Int(n(rng)), Int(d(rng)));
}

FieldElem random_elem(const QuadField& K, std::mt19937_64& rng) { return {K, random_rat(rng), random_rat(rng)}; }

FieldElem random_integral(const QuadField& K, std::mt19937_64& rng, long range = 6)
{
    std::uniform_int_distribution<long> c(-range, range);
    return AlgInt{K, Int(c(rng)), Int(c(rng))}.to_elem();
}

Point point(const QuadField& K, const char* text) { return parse_point(text, K); }

Curve mordell(long m, long B) { return Curve::short_form(FieldElem(QuadField(m)), FieldElem(QuadField(m), B)); }

Int naive_count(const ResidueCurve& rc)
{
    Int n = 1;
    auto elems = all_elements(rc.prime.residue);
    for (const auto& x : elems) {
        for (const auto& y : elems) {
            if (rc.contains(ResiduePoint::affine(x, y))) {
                ++n;
            }
        }
    }
    return n;
}

} // namespace

TEST(Invariants, MordellExample)
{
    Curve E = mordell(43, 1728);
    EXPECT_TRUE(E.c4().is_zero());
    EXPECT_EQ(E.c6(), FieldElem(E.field(), -1492992));
    EXPECT_EQ(E.discriminant(), FieldElem(E.field(), -1289945088));
}

TEST(Invariants, IdentitiesOnRandomCurves)
{
    std::mt19937_64 rng(1728);
    const long fields[] = {43, 46, 59, 62, 67, 71, 29, 5};
    int checked = 0;
    while (checked < 10000) {
        QuadField K(fields[checked % 8]);
        AInvariants<FieldElem> A{random_elem(K, rng), random_elem(K, rng), random_elem(K, rng), random_elem(K, rng),
                                 random_elem(K, rng)};
        auto inv = compute_invariants(A);
        if (inv.disc.is_zero()) {
            EXPECT_THROW(Curve{A}, SingularCurve);
            continue;
        }
        ASSERT_TRUE((1728 * inv.disc - inv.c4 * inv.c4 * inv.c4 + inv.c6 * inv.c6).is_zero());
        ASSERT_EQ(4 * inv.b8, inv.b2 * inv.b6 - inv.b4 * inv.b4);
        ++checked;
    }
}

TEST(Invariants, SingularCurveRejected)
{
    QuadField K(43);
    EXPECT_THROW(Curve::short_form(FieldElem(K), FieldElem(K)), SingularCurve);
    EXPECT_THROW(Curve::short_form(FieldElem(K, -3), FieldElem(K, 2)), SingularCurve);
}

TEST(Invariants, CandidateCurveScaling)
{
    std::mt19937_64 rng(6);
    QuadField K(46);
    FieldElem eps = fundamental_unit(K);
    for (int i = 0; i < 100; ++i) {
        FieldElem c4 = random_integral(K, rng, 50), c6 = random_integral(K, rng, 50);
        if ((c4 * c4 * c4 - c6 * c6).is_zero()) {
            continue;
        }
        Curve EC = curve_from_c4c6(c4, c6);
        EXPECT_EQ(EC.discriminant() * Rat(1728), Rat(pow_int(Int(6), 12)) * (c4 * c4 * c4 - c6 * c6));
    }
    Curve E = curve_from_c4c6(FieldElem(K, -12), FieldElem(K));
    EXPECT_EQ(E, Curve::short_form(FieldElem(K, 324), FieldElem(K)));
    Curve E46 = curve_from_c4c6(Rat(-12) * eps, FieldElem(K));
    EXPECT_EQ(E46, Curve::short_form(Rat(324) * eps, FieldElem(K)));
    EXPECT_THROW(curve_from_c4c6(FieldElem(K, 1), FieldElem(K, 1)), SingularCurve);
}

TEST(Points, OnCurveExamples)
{
    Curve E = mordell(43, 1728);
    const QuadField& K = E.field();
    EXPECT_TRUE(E.contains(point(K, "(-12, 0)")));
    EXPECT_TRUE(E.contains(point(K, "(-104/9, -56/27*sqrt(43))")));
    EXPECT_FALSE(E.contains(point(K, "(0, 0)")));
    EXPECT_TRUE(E.contains(Point::at_infinity()));
    EXPECT_EQ(to_string(point(K, "(-104/9, -56/27*sqrt(43))")), "(-104/9, 0 + -56/27*sqrt(43))");
    EXPECT_EQ(to_string(Point::at_infinity()), "O");
    EXPECT_THROW(parse_point("(1, 2, 3)", K), ParseError);
    EXPECT_THROW(parse_point("1, 2", K), ParseError);
}

TEST(Points, GroupLawExamples)
{
    Curve E = mordell(43, 1728);
    const QuadField& K = E.field();
    Point T = point(K, "(-12, 0)");
    Point P = point(K, "(-104/9, -56/27*sqrt(43))");
    EXPECT_TRUE(E.multiply(2, T).infinity);
    EXPECT_EQ(E.multiply(1, P), P);
    EXPECT_TRUE(E.add(P, E.negate(P)).infinity);
    Point S = E.add(T, P);
    EXPECT_TRUE(E.contains(S));
    EXPECT_TRUE(is_integral_point(S));
    EXPECT_EQ(S, point(K, "(960, 4536*sqrt(43))"));
    EXPECT_EQ(E.add(T, E.negate(P)), point(K, "(960, -4536*sqrt(43))"));
}

TEST(Points, CommutativeAssociativeClosed)
{
    std::mt19937_64 rng(1000);
    std::uniform_int_distribution<long> k(-3, 3);
    int triples = 0;
    for (auto [c, cd] : all_datasets()) {
        MordellCurve mc = case_curve(*c, *cd);
        const Curve& E = mc.curve;
        std::vector<Point> base;
        if (cd->generators.torsion) {
            base.push_back(cd->generators.torsion->point);
        }
        for (const auto& g : cd->generators.free_gens) {
            base.push_back(g.point);
        }
        auto sample = [&] {
            Point acc = Point::at_infinity();
            for (const auto& b : base) {
                acc = E.add(acc, E.multiply(k(rng), b));
            }
            return acc;
        };
        const int per_curve = c->m == 71 || (c->m == 59 && cd->n == 3) ? 80 : 120;
        for (int i = 0; i < per_curve; ++i) {
            Point P = sample(), Q = sample(), R = sample();
            ASSERT_EQ(E.add(P, Q), E.add(Q, P));
            Point lhs = E.add(E.add(P, Q), R);
            ASSERT_EQ(lhs, E.add(P, E.add(Q, R)));
            ASSERT_TRUE(E.contains(lhs));
            ASSERT_TRUE(E.contains(E.multiply(-2, P)));
            ++triples;
        }
    }
    EXPECT_GE(triples, 1000);
}

TEST(Points, TwoTorsionOfPublishedData)
{
    for (auto [c, cd] : all_datasets()) {
        if (!cd->generators.torsion) {
            continue;
        }
        MordellCurve mc = case_curve(*c, *cd);
        const Point& T = cd->generators.torsion->point;
        EXPECT_FALSE(T.infinity);
        EXPECT_TRUE(mc.curve.multiply(2, T).infinity) << cd->generators.torsion->name;
    }
}

TEST(Transform, IdentityAndUnitScaling)
{
    QuadField K(43);
    Curve E = mordell(43, 1728);
    EXPECT_EQ(E.transform(Isomorphism::identity(K)), E);
    FieldElem eps = fundamental_unit(K);
    Curve E9 = Curve::short_form(FieldElem(K), Rat(1728) * eps.pow(9));
    Curve E3 = Curve::short_form(FieldElem(K), Rat(1728) * eps.pow(3));
    EXPECT_EQ(E9.transform(eps, FieldElem(K), FieldElem(K), FieldElem(K)), E3);
    EXPECT_THROW(E.transform(FieldElem(K), FieldElem(K), FieldElem(K), FieldElem(K)), std::invalid_argument);
}

TEST(Transform, RandomRoundTrips)
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 300; ++i) {
        QuadField K(i % 2 ? 43 : 29);
        Curve E = Curve::short_form(random_elem(K, rng), random_elem(K, rng) + 1);
        FieldElem u = random_elem(K, rng);
        if (u.is_zero()) {
            continue;
        }
        Isomorphism iso{u, random_elem(K, rng), random_elem(K, rng), random_elem(K, rng)};
        Curve F = E.transform(iso);
        EXPECT_EQ(F.discriminant() * u.pow(12), E.discriminant());
        EXPECT_EQ(F.c4() * u.pow(4), E.c4());
        EXPECT_EQ(F.c6() * u.pow(6), E.c6());
        EXPECT_EQ(F.transform(iso.inverse()), E);
        Isomorphism iso2{random_elem(K, rng) + 100, random_elem(K, rng), random_elem(K, rng), random_elem(K, rng)};
        EXPECT_EQ(E.transform(iso.then(iso2)), F.transform(iso2));
    }
}

TEST(Transform, MapPointFollowsCurve)
{
    std::mt19937_64 rng(99);
    MordellCurve mc = case_curve(shipped_case(43), shipped_case(43).curves.front());
    const Curve& E = mc.curve;
    const QuadField& K = E.field();
    Point P = shipped_case(43).curves.front().generators.free_gens.front().point;
    for (int i = 0; i < 50; ++i) {
        FieldElem u = random_elem(K, rng);
        if (u.is_zero()) {
            continue;
        }
        Isomorphism iso{u, random_elem(K, rng), random_elem(K, rng), random_elem(K, rng)};
        Curve F = E.transform(iso);
        Point Q = map_point(iso, P);
        EXPECT_TRUE(F.contains(Q));
        EXPECT_EQ(map_point(iso, E.multiply(3, P)), F.multiply(3, Q));
        EXPECT_EQ(map_point(iso.inverse(), Q), P);
    }
}

TEST(Reduction, GoodAndBadPrimes)
{
    Curve E = mordell(43, 1728);
    const QuadField& K = E.field();
    auto P7 = factor_rational_prime(K, 7);
    ASSERT_EQ(P7.size(), 2u);
    ResidueCurve rc = reduce_curve(E, P7.front());
    EXPECT_FALSE(rc.discriminant().is_zero());
    EXPECT_EQ(count_points(rc), naive_count(rc));
    EXPECT_THROW(reduce_curve(E, factor_rational_prime(K, 2).front()), BadReduction);
    Curve nonintegral = Curve::short_form(FieldElem(K, make_rat(1, 7)), FieldElem(K, 1));
    EXPECT_THROW(reduce_curve(nonintegral, P7.front()), BadReduction);
}

TEST(Reduction, CountPointsExample)
{
    QuadField K(46);
    auto P5 = factor_rational_prime(K, 5);
    ASSERT_EQ(P5.size(), 2u);
    Curve E = Curve::short_form(FieldElem(K), FieldElem(K, 1));
    EXPECT_EQ(count_points(reduce_curve(E, P5.front())), 6);
}

TEST(Reduction, CountMatchesNaiveAndHasse)
{
    std::mt19937_64 rng(5);
    int checked = 0;
    for (long m : {43L, 46L, 59L, 29L, 17L}) {
        QuadField K(m);
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L}) {
            for (const auto& P : factor_rational_prime(K, p)) {
                for (int i = 0; i < 4; ++i) {
                    Curve E(random_integral(K, rng), random_integral(K, rng), random_integral(K, rng),
                            random_integral(K, rng), random_integral(K, rng) + 1);
                    if (valuation(E.discriminant(), P) != 0) {
                        continue;
                    }
                    ResidueCurve rc = reduce_curve(E, P);
                    Int N = count_points(rc);
                    Int q = P.norm;
                    Int d = N - q - 1;
                    EXPECT_LE(d * d, 4 * q) << to_string(E) << " at " << to_string(P);
                    if (q <= 121) {
                        EXPECT_EQ(N, naive_count(rc));
                    }
                    ++checked;
                }
            }
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(Reduction, GroupHomomorphism)
{
    for (auto [c, cd] : all_datasets()) {
        MordellCurve mc = case_curve(*c, *cd);
        const Curve& E = mc.curve;
        std::vector<Point> pts;
        if (cd->generators.torsion) {
            pts.push_back(cd->generators.torsion->point);
        }
        for (const auto& g : cd->generators.free_gens) {
            pts.push_back(g.point);
            pts.push_back(E.multiply(2, g.point));
        }
        for (long p : {5L, 7L, 11L, 13L, 17L}) {
            for (const auto& P : factor_rational_prime(E.field(), p)) {
                if (valuation(E.discriminant(), P) != 0) {
                    continue;
                }
                ResidueCurve rc = reduce_curve(E, P);
                for (const auto& A : pts) {
                    for (const auto& B : pts) {
                        EXPECT_EQ(reduce_point(E.add(A, B), P), rc.add(reduce_point(A, P), reduce_point(B, P)));
                    }
                    EXPECT_TRUE(rc.contains(reduce_point(A, P)));
                }
            }
        }
    }
}

TEST(Torsion, Examples)
{
    QuadField K43(43), K46(46);
    auto t0 = torsion_subgroup(mordell(43, 1728));
    EXPECT_EQ(t0.structure, "Z/2Z");
    ASSERT_EQ(t0.generators.size(), 1u);
    EXPECT_EQ(t0.generators.front(), point(K43, "(-12, 0)"));

    FieldElem eps43 = fundamental_unit(K43);
    auto t2 = torsion_subgroup(Curve::short_form(FieldElem(K43), Rat(1728) * eps43.pow(2)));
    EXPECT_EQ(t2.structure, "trivial");
    EXPECT_EQ(t2.bound, 1);

    FieldElem eps46 = fundamental_unit(K46);
    auto t46 = torsion_subgroup(Curve::short_form(FieldElem(K46), Rat(1728) * eps46.pow(3)));
    EXPECT_EQ(t46.structure, "Z/2Z");
    ASSERT_EQ(t46.generators.size(), 1u);
    EXPECT_EQ(t46.generators.front(), Point::affine(Rat(-12) * eps46, FieldElem(K46)));
}

TEST(Torsion, FullTwoTorsion)
{
    // y^2 = x(x - 1)(x + 2) has all three roots rational
    QuadField K(43);
    Curve E(FieldElem(K), FieldElem(K, 1), FieldElem(K), FieldElem(K, -2), FieldElem(K));
    auto two = two_torsion_points(E);
    EXPECT_EQ(two.size(), 3u);
    for (const auto& T : two) {
        EXPECT_TRUE(E.multiply(2, T).infinity);
    }
    // x^3 - 43 x splits over K_43 as x (x - sqrt(43)) (x + sqrt(43))
    Curve F = Curve::short_form(FieldElem(K, -43), FieldElem(K));
    EXPECT_EQ(two_torsion_points(F).size(), 3u);
}

TEST(Torsion, ReductionCountsDivisibleByTorsionOrder)
{
    for (auto [c, cd] : all_datasets()) {
        MordellCurve mc = case_curve(*c, *cd);
        auto t = torsion_subgroup(mc.curve);
        EXPECT_EQ(t.order(), cd->generators.torsion ? 2 : 1);
        EXPECT_GE(t.counts.size(), static_cast<std::size_t>(min_torsion_primes));
        for (const auto& n : t.counts) {
            EXPECT_EQ(n % t.order(), 0);
        }
    }
}
