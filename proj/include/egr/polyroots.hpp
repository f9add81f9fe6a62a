#pragma once

// Roots in O_K of monic polynomials with coefficients in O_K.
//
// Real roots of the two embedded polynomials are isolated exactly with a
// Sturm sequence over K (signs of elements of K under either embedding are
// decidable), narrowed by bisection, and every integral element compatible
// with a pair of isolating intervals is tested exactly.

#include "egr/quadfield.hpp"

#include <vector>

namespace egr {

using Poly = std::vector<FieldElem>; // low degree first

namespace detail {

inline void trim(Poly& f)
{
    while (!f.empty() && f.back().is_zero()) {
        f.pop_back();
    }
}

inline FieldElem eval(const Poly& f, const FieldElem& x)
{
    FieldElem acc(x.field());
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

inline Poly derivative(const Poly& f)
{
    Poly d;
    for (std::size_t i = 1; i < f.size(); ++i) {
        d.push_back(static_cast<long>(i) * f[i]);
    }
    trim(d);
    return d;
}

// (quotient, remainder) of f by g, g nonzero.
inline std::pair<Poly, Poly> divmod(Poly f, const Poly& g)
{
    const QuadField& K = g.back().field();
    if (f.size() < g.size()) {
        return {Poly{}, f};
    }
    Poly q(f.size() - g.size() + 1, FieldElem(K));
    const FieldElem lead_inv = g.back().inverse();
    for (std::size_t i = f.size(); i-- >= g.size();) {
        FieldElem c = f[i] * lead_inv;
        std::size_t shift = i - (g.size() - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < g.size(); ++j) {
            f[shift + j] -= c * g[j];
        }
    }
    f.resize(g.size() - 1, FieldElem(K));
    trim(f);
    return {q, f};
}

inline Poly poly_gcd(Poly a, Poly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline std::vector<Poly> sturm_sequence(const Poly& f)
{
    std::vector<Poly> seq{f, derivative(f)};
    while (!seq.back().empty()) {
        Poly r = divmod(seq[seq.size() - 2], seq.back()).second;
        for (auto& c : r) {
            c = -c;
        }
        seq.push_back(std::move(r));
    }
    seq.pop_back();
    return seq;
}

inline int embedded_sign(const FieldElem& x, int embedding) { return embedding > 0 ? x.sign() : x.conj_sign(); }

inline int sign_variations(const std::vector<Poly>& seq, const Rat& at, int embedding)
{
    const QuadField& K = seq.front().front().field();
    FieldElem x(K, at);
    int prev = 0, changes = 0;
    for (const auto& s : seq) {
        int sg = embedded_sign(eval(s, x), embedding);
        if (sg == 0) {
            continue;
        }
        if (prev != 0 && sg != prev) {
            ++changes;
        }
        prev = sg;
    }
    return changes;
}

// Rational bounds lo <= sqrt(m) <= hi with hi - lo = 2^-bits.
inline std::pair<Rat, Rat> sqrt_bounds(long m, unsigned long bits)
{
    Int scale = pow_int(Int(2), bits);
    Int r = isqrt(Int(m) * scale * scale);
    return {make_rat(r, scale), make_rat(r + 1, scale)};
}

// Bound on |sigma(c)| for both embeddings.
inline Rat abs_bound(const FieldElem& c)
{
    Rat sq = Rat(isqrt(Int(c.field().m())) + 1);
    return Rat(abs(c.a()) + abs(c.b()) * sq);
}

struct Interval {
    Rat lo, hi;
};

// Isolating intervals of width <= width for the real roots of sigma(f), f squarefree.
inline std::vector<Interval> isolate_real_roots(const Poly& f, int embedding, const Rat& width)
{
    const auto seq = sturm_sequence(f);
    // Cauchy bound on the embedded polynomial: 1 + max |c_i| / |c_n|. The
    // leading coefficient is 1 here (monic input).
    Rat bound = 1;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        Rat b = abs_bound(f[i]);
        if (b > bound) {
            bound = b;
        }
    }
    bound += 1;
    std::vector<Interval> out;
    std::vector<Interval> work{{-bound, bound}};
    // invariant: roots counted in (lo, hi]
    while (!work.empty()) {
        Interval I = work.back();
        work.pop_back();
        int n = sign_variations(seq, I.lo, embedding) - sign_variations(seq, I.hi, embedding);
        if (n == 0) {
            continue;
        }
        if (n == 1 && I.hi - I.lo <= width) {
            out.push_back(I);
            continue;
        }
        Rat mid = (I.lo + I.hi) / 2;
        work.push_back({I.lo, mid});
        work.push_back({mid, I.hi});
    }
    return out;
}

} // namespace detail

// All roots in O_K of a monic polynomial with O_K coefficients (each root
// listed once).
inline std::vector<FieldElem> integral_roots(Poly f)
{
    detail::trim(f);
    if (f.size() < 2) {
        return {};
    }
    if (!(f.back() == FieldElem(f.back().field(), 1))) {
        throw std::invalid_argument("integral_roots: polynomial must be monic");
    }
    for (const auto& c : f) {
        if (!is_integral(c)) {
            throw std::invalid_argument("integral_roots: coefficients must be integral");
        }
    }
    const QuadField& K = f.back().field();
    // squarefree part, made monic
    Poly g = detail::poly_gcd(f, detail::derivative(f));
    if (g.size() > 1) {
        f = detail::divmod(f, g).first;
        FieldElem lead_inv = f.back().inverse();
        for (auto& c : f) {
            c *= lead_inv;
        }
    }
    const Rat width(1, 16);
    auto roots1 = detail::isolate_real_roots(f, +1, width);
    auto roots2 = detail::isolate_real_roots(f, -1, width);
    Rat span = 1;
    for (const auto& I : roots1) {
        span = std::max(span, Rat(abs(I.lo) + abs(I.hi)));
    }
    for (const auto& I : roots2) {
        span = std::max(span, Rat(abs(I.lo) + abs(I.hi)));
    }
    unsigned long bits = 16 + mpz_sizeinbase(ceil_rat(span).get_mpz_t(), 2);
    auto [sq_lo, sq_hi] = detail::sqrt_bounds(K.m(), bits);
    auto div_sqrt = [&](const Rat& x, bool upper) {
        // bound of x / sqrt(m) from below (upper = false) or above
        if (sgn(x) >= 0) {
            return upper ? Rat(x / sq_lo) : Rat(x / sq_hi);
        }
        return upper ? Rat(x / sq_hi) : Rat(x / sq_lo);
    };
    const bool half = K.basis() == BasisKind::OneHalfOnePlusSqrtM;
    std::vector<FieldElem> found;
    for (const auto& I1 : roots1) {
        for (const auto& I2 : roots2) {
            // sigma1 - sigma2 = 2b sqrt(m), sigma1 + sigma2 = 2a
            Rat dlo = I1.lo - I2.hi, dhi = I1.hi - I2.lo;
            Rat vscale = half ? Rat(1) : Rat(1, 2);
            Int vmin = ceil_rat(div_sqrt(dlo, false) * vscale);
            Int vmax = floor_rat(div_sqrt(dhi, true) * vscale);
            for (Int v = vmin; v <= vmax; ++v) {
                Rat slo = I1.lo + I2.lo, shi = I1.hi + I2.hi;
                // 2a = 2u (+ v in the half basis)
                Rat off = half ? Rat(v) : Rat(0);
                Int umin = ceil_rat((slo - off) / 2);
                Int umax = floor_rat((shi - off) / 2);
                for (Int u = umin; u <= umax; ++u) {
                    FieldElem x = AlgInt{K, u, v}.to_elem();
                    if (detail::eval(f, x).is_zero() &&
                        std::find(found.begin(), found.end(), x) == found.end()) {
                        found.push_back(x);
                    }
                }
            }
        }
    }
    return found;
}

} // namespace egr
