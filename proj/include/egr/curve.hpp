#pragma once

// Long Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
// Formulas are written once over a generic field type F (FieldElem for K,
// ResidueElem for O_K/P).

#include "egr/quadfield.hpp"

#include <array>
#include <optional>

namespace egr {

class SingularCurve : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

template <class F>
struct AInvariants {
    F a1, a2, a3, a4, a6;
};

template <class F>
struct Invariants {
    F b2, b4, b6, b8, c4, c6, disc;
};

template <class F>
Invariants<F> compute_invariants(const AInvariants<F>& A)
{
    const auto& [a1, a2, a3, a4, a6] = A;
    Invariants<F> I;
    I.b2 = a1 * a1 + 4 * a2;
    I.b4 = 2 * a4 + a1 * a3;
    I.b6 = a3 * a3 + 4 * a6;
    I.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    I.c4 = I.b2 * I.b2 - 24 * I.b4;
    I.c6 = -(I.b2 * I.b2 * I.b2) + 36 * I.b2 * I.b4 - 216 * I.b6;
    I.disc = -(I.b2 * I.b2 * I.b8) - 8 * (I.b4 * I.b4 * I.b4) - 27 * I.b6 * I.b6 + 9 * I.b2 * I.b4 * I.b6;
    return I;
}

template <class F>
struct BasicPoint {
    bool infinity = true;
    F x{}, y{};

    static BasicPoint at_infinity() { return {}; }
    static BasicPoint affine(F x, F y) { return {false, std::move(x), std::move(y)}; }

    friend bool operator==(const BasicPoint& p, const BasicPoint& q)
    {
        if (p.infinity || q.infinity) {
            return p.infinity == q.infinity;
        }
        return p.x == q.x && p.y == q.y;
    }
};

template <class F>
bool on_curve(const AInvariants<F>& A, const BasicPoint<F>& P)
{
    if (P.infinity) {
        return true;
    }
    const F& x = P.x;
    const F& y = P.y;
    F lhs = y * y + A.a1 * x * y + A.a3 * y;
    F rhs = x * x * x + A.a2 * x * x + A.a4 * x + A.a6;
    return (lhs - rhs).is_zero();
}

template <class F>
BasicPoint<F> negate(const AInvariants<F>& A, const BasicPoint<F>& P)
{
    if (P.infinity) {
        return P;
    }
    return BasicPoint<F>::affine(P.x, -P.y - A.a1 * P.x - A.a3);
}

// Chord-and-tangent addition.
template <class F>
BasicPoint<F> add(const AInvariants<F>& A, const BasicPoint<F>& P, const BasicPoint<F>& Q)
{
    if (P.infinity) {
        return Q;
    }
    if (Q.infinity) {
        return P;
    }
    F lambda, nu;
    if (P.x == Q.x) {
        F ysum = P.y + Q.y + A.a1 * Q.x + A.a3;
        if (ysum.is_zero()) {
            return BasicPoint<F>::at_infinity();
        }
        F num = 3 * P.x * P.x + 2 * A.a2 * P.x + A.a4 - A.a1 * P.y;
        F den = 2 * P.y + A.a1 * P.x + A.a3;
        lambda = num / den;
        nu = (-(P.x * P.x * P.x) + A.a4 * P.x + 2 * A.a6 - A.a3 * P.y) / den;
    } else {
        F dx = Q.x - P.x;
        lambda = (Q.y - P.y) / dx;
        nu = (P.y * Q.x - Q.y * P.x) / dx;
    }
    F x3 = lambda * lambda + A.a1 * lambda - A.a2 - P.x - Q.x;
    F y3 = -(lambda + A.a1) * x3 - nu - A.a3;
    return BasicPoint<F>::affine(std::move(x3), std::move(y3));
}

// Double-and-add; negative k uses -P.
template <class F>
BasicPoint<F> multiply(const AInvariants<F>& A, long k, const BasicPoint<F>& P)
{
    BasicPoint<F> base = k < 0 ? negate(A, P) : P;
    unsigned long n = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1 : static_cast<unsigned long>(k);
    BasicPoint<F> result = BasicPoint<F>::at_infinity();
    while (n > 0) {
        if (n & 1) {
            result = add(A, result, base);
        }
        base = add(A, base, base);
        n >>= 1;
    }
    return result;
}

using Point = BasicPoint<FieldElem>;

// Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct Isomorphism {
    FieldElem u, r, s, t;

    static Isomorphism identity(const QuadField& K) { return {FieldElem(K, 1), FieldElem(K), FieldElem(K), FieldElem(K)}; }

    // Apply *this, then next.
    Isomorphism then(const Isomorphism& next) const
    {
        return {u * next.u, r + u * u * next.r, s + u * next.s, t + u * u * s * next.r + u * u * u * next.t};
    }

    Isomorphism inverse() const
    {
        FieldElem ui = u.inverse();
        return {ui, -r * ui * ui, -s * ui, (r * s - t) * ui * ui * ui};
    }
};

class Curve {
public:
    Curve(FieldElem a1, FieldElem a2, FieldElem a3, FieldElem a4, FieldElem a6)
        : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)}
    {
        const QuadField& K = a_.a1.field();
        for (const FieldElem* c : {&a_.a2, &a_.a3, &a_.a4, &a_.a6}) {
            if (!(c->field() == K)) {
                throw std::invalid_argument("curve coefficients from different fields");
            }
        }
        inv_ = compute_invariants(a_);
        if (inv_.disc.is_zero()) {
            throw SingularCurve("singular Weierstrass model (discriminant 0)");
        }
        if (!(1728 * inv_.disc - inv_.c4 * inv_.c4 * inv_.c4 + inv_.c6 * inv_.c6).is_zero()) {
            throw std::logic_error("invariant identity 1728*disc = c4^3 - c6^2 violated");
        }
    }

    explicit Curve(const AInvariants<FieldElem>& A) : Curve(A.a1, A.a2, A.a3, A.a4, A.a6) {}

    static Curve short_form(const FieldElem& a4, const FieldElem& a6)
    {
        FieldElem z(a4.field());
        return Curve(z, z, z, a4, a6);
    }

    const QuadField& field() const { return a_.a1.field(); }
    const AInvariants<FieldElem>& a() const { return a_; }
    const FieldElem& a1() const { return a_.a1; }
    const FieldElem& a2() const { return a_.a2; }
    const FieldElem& a3() const { return a_.a3; }
    const FieldElem& a4() const { return a_.a4; }
    const FieldElem& a6() const { return a_.a6; }
    const Invariants<FieldElem>& invariants() const { return inv_; }
    const FieldElem& b2() const { return inv_.b2; }
    const FieldElem& b4() const { return inv_.b4; }
    const FieldElem& b6() const { return inv_.b6; }
    const FieldElem& b8() const { return inv_.b8; }
    const FieldElem& c4() const { return inv_.c4; }
    const FieldElem& c6() const { return inv_.c6; }
    const FieldElem& discriminant() const { return inv_.disc; }
    FieldElem j_invariant() const { return inv_.c4 * inv_.c4 * inv_.c4 / inv_.disc; }

    bool contains(const Point& P) const { return on_curve(a_, P); }
    Point add(const Point& P, const Point& Q) const { return egr::add(a_, P, Q); }
    Point negate(const Point& P) const { return egr::negate(a_, P); }
    Point multiply(long k, const Point& P) const { return egr::multiply(a_, k, P); }

    // Model in the new coordinates of iso.
    Curve transform(const Isomorphism& iso) const
    {
        const auto& [u, r, s, t] = iso;
        if (u.is_zero()) {
            throw std::invalid_argument("transform: u must be nonzero");
        }
        const auto& [a1, a2, a3, a4, a6] = a_;
        FieldElem u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
        FieldElem n1 = (a1 + 2 * s) / u;
        FieldElem n2 = (a2 - s * a1 + 3 * r - s * s) / u2;
        FieldElem n3 = (a3 + r * a1 + 2 * t) / u3;
        FieldElem n4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4;
        FieldElem n6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6;
        return Curve(n1, n2, n3, n4, n6);
    }

    Curve transform(const FieldElem& u, const FieldElem& r, const FieldElem& s, const FieldElem& t) const
    {
        return transform(Isomorphism{u, r, s, t});
    }

    bool operator==(const Curve& o) const
    {
        return a_.a1 == o.a_.a1 && a_.a2 == o.a_.a2 && a_.a3 == o.a_.a3 && a_.a4 == o.a_.a4 && a_.a6 == o.a_.a6;
    }

private:
    AInvariants<FieldElem> a_;
    Invariants<FieldElem> inv_;
};

inline Point map_point(const Isomorphism& iso, const Point& P)
{
    if (P.infinity) {
        return P;
    }
    FieldElem ui = iso.u.inverse();
    FieldElem xr = P.x - iso.r;
    FieldElem x = xr * ui * ui;
    FieldElem y = (P.y - iso.s * xr - iso.t) * ui * ui * ui;
    return Point::affine(x, y);
}

inline bool is_integral_point(const Point& P)
{
    return !P.infinity && is_integral(P.x) && is_integral(P.y);
}

// ---- text forms -------------------------------------------------------------

inline std::string to_string(const Point& P)
{
    if (P.infinity) {
        return "O";
    }
    return "(" + to_string(P.x) + ", " + to_string(P.y) + ")";
}

inline std::string to_string(const Curve& E)
{
    return "[" + to_string(E.a1()) + ", " + to_string(E.a2()) + ", " + to_string(E.a3()) + ", " + to_string(E.a4()) +
           ", " + to_string(E.a6()) + "]";
}

// "(x, y)" or "O".
inline Point parse_point(std::string_view text, const QuadField& K)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
            s.remove_prefix(1);
        }
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
            s.remove_suffix(1);
        }
        return s;
    };
    std::string_view s = trim(text);
    if (s == "O") {
        return Point::at_infinity();
    }
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
        throw ParseError("cannot parse point '" + std::string(text) + "'");
    }
    s = s.substr(1, s.size() - 2);
    // split at the top-level comma (sqrt(m) contains no commas)
    auto comma = s.find(',');
    if (comma == std::string_view::npos || s.find(',', comma + 1) != std::string_view::npos) {
        throw ParseError("cannot parse point '" + std::string(text) + "'");
    }
    return Point::affine(parse_elem(trim(s.substr(0, comma)), K), parse_elem(trim(s.substr(comma + 1)), K));
}

} // namespace egr
