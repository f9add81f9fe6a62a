#pragma once

// Reduction of curves and points modulo a prime of good reduction, and point
// counting over the residue field.

#include "egr/curve.hpp"
#include "egr/ideal.hpp"

namespace egr {

using ResiduePoint = BasicPoint<ResidueElem>;

struct ResidueCurve {
    PrimeIdeal prime;
    AInvariants<ResidueElem> a;

    ResidueElem discriminant() const { return compute_invariants(a).disc; }
    bool contains(const ResiduePoint& P) const { return on_curve(a, P); }
    ResiduePoint add(const ResiduePoint& P, const ResiduePoint& Q) const { return egr::add(a, P, Q); }
};

class BadReduction : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline bool is_integral_at(const Curve& E, const PrimeIdeal& P)
{
    for (const FieldElem* c : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()}) {
        if (valuation(*c, P) < 0) {
            return false;
        }
    }
    return true;
}

inline ResidueCurve reduce_curve(const Curve& E, const PrimeIdeal& P)
{
    if (!is_integral_at(E, P)) {
        throw BadReduction("model is not integral at " + to_string(P));
    }
    if (valuation(E.discriminant(), P) != 0) {
        throw BadReduction("bad reduction at " + to_string(P));
    }
    const auto& A = E.a();
    return {P, {reduce_mod(A.a1, P), reduce_mod(A.a2, P), reduce_mod(A.a3, P), reduce_mod(A.a4, P), reduce_mod(A.a6, P)}};
}

// A point with a coordinate of negative valuation reduces to infinity.
inline ResiduePoint reduce_point(const Point& Q, const PrimeIdeal& P)
{
    if (Q.infinity || valuation(Q.x, P) < 0 || valuation(Q.y, P) < 0) {
        return ResiduePoint::at_infinity();
    }
    return ResiduePoint::affine(reduce_mod(Q.x, P), reduce_mod(Q.y, P));
}

inline constexpr std::uint64_t max_count_field_size = 1000000;

// |E(F_q)| including the point at infinity.
inline Int count_points(const ResidueCurve& rc)
{
    const ResidueField& F = rc.prime.residue;
    if (F.size() > max_count_field_size) {
        throw std::invalid_argument("count_points: residue field of size " + std::to_string(F.size()) +
                                    " exceeds the desk-scale limit");
    }
    const auto& A = rc.a;
    const auto elems = all_elements(F);
    Int count = 1;
    if (F.p == 2) {
        for (const auto& x : elems) {
            for (const auto& y : elems) {
                if (on_curve(A, ResiduePoint::affine(x, y))) {
                    ++count;
                }
            }
        }
        return count;
    }
    // y^2 + (a1 x + a3) y = g(x) has 1 + chi((a1 x + a3)^2 + 4 g(x)) solutions.
    for (const auto& x : elems) {
        ResidueElem h = A.a1 * x + A.a3;
        ResidueElem g = ((x + A.a2) * x + A.a4) * x + A.a6;
        count += 1 + (h * h + 4 * g).quadratic_character();
    }
    return count;
}

} // namespace egr
