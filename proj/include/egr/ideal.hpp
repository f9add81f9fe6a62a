#pragma once

// Prime ideals of O_K in two-generator form (p, alpha), P-adic valuations
// and reduction to the residue field.

#include "egr/quadfield.hpp"
#include "egr/residue.hpp"

#include <limits>

namespace egr {

inline constexpr int infinite_valuation = std::numeric_limits<int>::max();

struct PrimeIdeal {
    QuadField field;
    Int p;
    int e = 1;            // ramification index
    int f = 1;            // residue degree
    AlgInt second_gen;    // P = (p, second_gen)
    Int norm;             // p^f
    Int omega_residue;    // omega mod P when f = 1 (in [0, p))
    FieldElem uniformizer;
    ResidueField residue;

    bool is_split() const { return e == 1 && f == 1; }
    bool is_inert() const { return f == 2; }
    bool is_ramified() const { return e == 2; }

    friend bool operator==(const PrimeIdeal& x, const PrimeIdeal& y)
    {
        return x.field == y.field && x.p == y.p && x.e == y.e && x.f == y.f && x.omega_residue == y.omega_residue;
    }
};

inline std::string to_string(const PrimeIdeal& P)
{
    return "(" + P.p.get_str() + ", " + to_string(P.second_gen.to_elem()) + ")";
}

namespace detail {

// x^2 - t x + n, the minimal polynomial of omega, evaluated at r.
inline Int omega_minpoly(const QuadField& K, const Int& r) { return r * r - K.omega_trace() * r + K.omega_norm(); }

inline PrimeIdeal make_prime(const QuadField& K, const Int& p, int e, int f, const Int& r)
{
    PrimeIdeal P;
    P.field = K;
    P.p = p;
    P.e = e;
    P.f = f;
    P.norm = pow_int(p, static_cast<unsigned long>(f));
    P.residue.p = to_word(p);
    P.residue.f = f;
    if (f == 2) {
        P.omega_residue = -1;
        P.residue.t = reduce_word(Int(K.omega_trace()), P.residue.p);
        P.residue.n = reduce_word(Int(K.omega_norm()), P.residue.p);
        P.second_gen = AlgInt{K, p, 0};
        P.uniformizer = FieldElem(K, Rat(p));
        return P;
    }
    P.omega_residue = mod_floor(r, p);
    // Choose alpha = omega - s with s = r mod p and v_P(alpha) = 1.
    Int s = P.omega_residue;
    if (valuation(omega_minpoly(K, s), p) != 1) {
        s += p;
    }
    if (valuation(omega_minpoly(K, s), p) != 1) {
        throw std::logic_error("no degree-one uniformizer above " + p.get_str());
    }
    P.second_gen = AlgInt{K, -s, 1};
    P.uniformizer = (e == 2) ? P.second_gen.to_elem() : FieldElem(K, Rat(p));
    return P;
}

} // namespace detail

// Kummer-Dedekind on the minimal polynomial of omega.
inline std::vector<PrimeIdeal> factor_rational_prime(const QuadField& K, const Int& p)
{
    if (!is_prime(p)) {
        throw std::invalid_argument(p.get_str() + " is not prime");
    }
    std::vector<Int> roots;
    if (p == 2) {
        for (long r = 0; r < 2; ++r) {
            if (detail::omega_minpoly(K, Int(r)) % 2 == 0) {
                roots.emplace_back(r);
            }
        }
        if (roots.size() == 1) {
            return {detail::make_prime(K, p, 2, 1, roots[0])};
        }
    } else {
        // roots (t +- sqrt(D)) / 2 with D = t^2 - 4n
        Int D = Int(K.omega_trace() * K.omega_trace()) - 4 * Int(K.omega_norm());
        Int inv2 = (p + 1) / 2;
        int ls = legendre(D, p);
        if (ls == 0) {
            return {detail::make_prime(K, p, 2, 1, mod_floor(Int(K.omega_trace()) * inv2, p))};
        }
        if (ls == 1) {
            Int s = sqrt_mod(D, p);
            roots.push_back(mod_floor((K.omega_trace() + s) * inv2, p));
            roots.push_back(mod_floor((K.omega_trace() - s) * inv2, p));
        }
    }
    if (roots.empty()) {
        return {detail::make_prime(K, p, 1, 2, 0)};
    }
    std::sort(roots.begin(), roots.end());
    return {detail::make_prime(K, p, 1, 1, roots[0]), detail::make_prime(K, p, 1, 1, roots[1])};
}

inline std::vector<PrimeIdeal> factor_rational_prime(const QuadField& K, long p)
{
    return factor_rational_prime(K, Int(p));
}

namespace detail {

inline bool algint_in_prime(const AlgInt& y, const PrimeIdeal& P)
{
    if (P.f == 2) {
        return y.u % P.p == 0 && y.v % P.p == 0;
    }
    return mod_floor(y.u + y.v * P.omega_residue, P.p) == 0;
}

} // namespace detail

// v_P(x); infinite_valuation for x = 0.
inline int valuation(const FieldElem& x, const PrimeIdeal& P)
{
    if (x.is_zero()) {
        return infinite_valuation;
    }
    Int d = denominator(x);
    AlgInt y = AlgInt::from_elem(x * Rat(d));
    // common power of p in the coordinates
    int ku = y.u == 0 ? std::numeric_limits<int>::max() : valuation(y.u, P.p);
    int kv = y.v == 0 ? std::numeric_limits<int>::max() : valuation(y.v, P.p);
    int k = std::min(ku, kv);
    Int pk = pow_int(P.p, static_cast<unsigned long>(k));
    y.u /= pk;
    y.v /= pk;
    int v = P.e * k - P.e * valuation(d, P.p);
    if (P.f == 1 && detail::algint_in_prime(y, P)) {
        // p does not divide y, so y lies in no other prime above p and
        // all of p | N(y) comes from P.
        Rat n = y.to_elem().norm();
        v += valuation(Int(n.get_num()), P.p);
    }
    return v;
}

inline int valuation(long x, const PrimeIdeal& P) { return valuation(FieldElem(P.field, x), P); }

namespace detail {

inline ResidueElem reduce_algint(const AlgInt& y, const PrimeIdeal& P)
{
    const ResidueField& F = P.residue;
    if (P.f == 2) {
        return {F, reduce_word(y.u, F.p), reduce_word(y.v, F.p)};
    }
    return ResidueElem::from_int(F, y.u + y.v * P.omega_residue);
}

} // namespace detail

// Reduction O_{K,P} -> O_K/P.
inline ResidueElem reduce_mod(const FieldElem& x, const PrimeIdeal& P)
{
    const ResidueField& F = P.residue;
    if (x.is_zero()) {
        return {F, 0};
    }
    if (valuation(x, P) < 0) {
        throw std::domain_error("reduce_mod: element has negative valuation at " + to_string(P));
    }
    Int d = denominator(x);
    int k = valuation(d, P.p);
    FieldElem z = x;
    ResidueElem scale(F, 1);
    if (k > 0) {
        // Only split primes reach this: v_P(x) >= 0 with p | den(x) forces a
        // second prime above p. s = conj(alpha) is a P-unit lying in the
        // conjugate prime, so x*s^k is integral at both primes above p.
        FieldElem s = P.second_gen.to_elem().conj();
        z *= s.pow(k);
        scale = reduce_mod(s, P).pow(Int(-k));
        d = denominator(z);
    }
    AlgInt y = AlgInt::from_elem(z * Rat(d));
    return detail::reduce_algint(y, P) * ResidueElem::from_int(F, d).inverse() * scale;
}

inline ResidueElem reduce_mod(long x, const PrimeIdeal& P) { return reduce_mod(FieldElem(P.field, x), P); }

// Canonical representative in O_K of a residue class.
inline FieldElem lift(const ResidueElem& r, const PrimeIdeal& P)
{
    AlgInt a{P.field, Int(static_cast<unsigned long>(r.c0())), Int(static_cast<unsigned long>(r.c1()))};
    return a.to_elem();
}

// Primes of norm <= bound, by increasing rational prime.
inline std::vector<PrimeIdeal> primes_up_to(const QuadField& K, const Int& bound)
{
    std::vector<PrimeIdeal> out;
    for (Int p = 2; p <= bound; p = next_prime(p)) {
        for (auto& P : factor_rational_prime(K, p)) {
            if (P.norm <= bound) {
                out.push_back(std::move(P));
            }
        }
    }
    return out;
}

} // namespace egr
