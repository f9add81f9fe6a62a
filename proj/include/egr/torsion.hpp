#pragma once

// Torsion subgroups of curves whose torsion has exponent dividing 2: an upper
// bound from point counts at good primes, and the 2-torsion found exactly.

#include "egr/polyroots.hpp"
#include "egr/reduction.hpp"

namespace egr {

class TorsionInconclusive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TorsionInfo {
    Int bound;                  // gcd of |E(F_P)| over the primes used
    std::vector<Int> counts;    // the individual |E(F_P)|
    std::vector<Point> points;  // exhibited subgroup, O first
    std::vector<Point> generators;
    std::string structure;

    long order() const { return static_cast<long>(points.size()); }
};

// Integral model E' = E scaled by (x, y) -> (d^2 x, d^3 y).
inline std::pair<Curve, Isomorphism> integral_model(const Curve& E)
{
    const QuadField& K = E.field();
    Int d = 1;
    for (const FieldElem* c : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()}) {
        d = lcm(d, denominator(*c));
    }
    Isomorphism iso{FieldElem(K, make_rat(1, d)), FieldElem(K), FieldElem(K), FieldElem(K)};
    return {E.transform(iso), iso};
}

inline constexpr int min_torsion_primes = 5;
inline constexpr int max_torsion_primes = 40;

// gcd of |E(F_P)| over unramified primes of residue characteristic >= 5 and
// good reduction, taking at least min_count of them; stops early once the gcd
// reaches stop_at.
inline std::pair<Int, std::vector<Int>> torsion_bound(const Curve& E, int min_count = min_torsion_primes,
                                                      const Int& stop_at = 0)
{
    auto [Ei, iso] = integral_model(E);
    Rat nd = Ei.discriminant().norm();
    Int disc_norm = Int(nd.get_num());
    Int g = 0;
    std::vector<Int> counts;
    for (Int p = 5; static_cast<int>(counts.size()) < max_torsion_primes; p = next_prime(p)) {
        if (disc_norm % p == 0 || Int(Ei.field().disc()) % p == 0) {
            continue;
        }
        for (const auto& P : factor_rational_prime(Ei.field(), p)) {
            if (P.norm > Int(static_cast<unsigned long>(max_count_field_size))) {
                continue;
            }
            Int n = count_points(reduce_curve(Ei, P));
            counts.push_back(n);
            g = gcd(g, n);
        }
        if (static_cast<int>(counts.size()) >= min_count && (g == 1 || g == stop_at)) {
            break;
        }
    }
    return {g, counts};
}

// K-rational points of order 2, via the roots of X^3 + b2 X^2 + 8 b4 X + 16 b6
// (X = 4x) on an integral model.
inline std::vector<Point> two_torsion_points(const Curve& E)
{
    auto [Ei, iso] = integral_model(E);
    const QuadField& K = E.field();
    Poly cubic{16 * Ei.b6(), 8 * Ei.b4(), Ei.b2(), FieldElem(K, 1)};
    Isomorphism back = iso.inverse();
    std::vector<Point> out;
    for (const auto& X : integral_roots(cubic)) {
        FieldElem x = X * Rat(1, 4);
        FieldElem y = -(Ei.a1() * x + Ei.a3()) * Rat(1, 2);
        Point T = map_point(back, Point::affine(x, y));
        if (!E.contains(T)) {
            throw std::logic_error("2-torsion root does not give a point on the curve");
        }
        out.push_back(T);
    }
    std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) { return to_string(a) < to_string(b); });
    return out;
}

inline TorsionInfo torsion_subgroup(const Curve& E)
{
    TorsionInfo info;
    auto two = two_torsion_points(E);
    const Int exhibited = static_cast<long>(two.size()) + 1;
    std::tie(info.bound, info.counts) = torsion_bound(E, min_torsion_primes, exhibited);
    info.points.push_back(Point::at_infinity());
    for (const auto& T : two) {
        info.points.push_back(T);
    }
    if (two.size() == 0) {
        info.structure = "trivial";
    } else if (two.size() == 1) {
        info.structure = "Z/2Z";
        info.generators = two;
    } else {
        info.structure = "Z/2Z x Z/2Z";
        info.generators = {two[0], two[1]};
    }
    if (info.bound != exhibited) {
        throw TorsionInconclusive("torsion bound " + info.bound.get_str() + " exceeds the exhibited subgroup of order " +
                                  exhibited.get_str());
    }
    return info;
}

// Order of P if it divides max_order, else nullopt.
inline std::optional<long> point_order(const Curve& E, const Point& P, long max_order)
{
    Point Q = P;
    for (long k = 1; k <= max_order; ++k) {
        if (Q.infinity) {
            return k;
        }
        Q = E.add(Q, P);
    }
    return std::nullopt;
}

} // namespace egr
