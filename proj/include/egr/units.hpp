#pragma once

// Fundamental units and the class-number-one test for real quadratic fields.

#include "egr/ideal.hpp"

namespace egr {

inline bool is_unit(const FieldElem& x)
{
    if (x.is_zero() || !is_integral(x)) {
        return false;
    }
    Rat n = x.norm();
    return n == 1 || n == -1;
}

// Representative of {u, -u, 1/u, -1/u} that is > 1 under sqrt(m) > 0.
inline FieldElem normalize_unit(const FieldElem& u)
{
    if (!is_unit(u)) {
        throw std::domain_error(to_string(u) + " is not a unit");
    }
    FieldElem x = u.sign() < 0 ? -u : u;
    // x > 1 iff x - 1 > 0
    if ((x - 1).sign() < 0) {
        x = x.inverse();
    }
    return x;
}

// epsilon > 1 generating O_K^x / {+-1}, read off from the first convergent
// p/q of the continued fraction of omega with N(p - q*omega) = +-1.
inline FieldElem fundamental_unit(const QuadField& K)
{
    const Int d = K.m();
    const Int sqrt_d = isqrt(d);
    Int P = K.basis() == BasisKind::OneSqrtM ? 0 : 1;
    Int Q = K.basis() == BasisKind::OneSqrtM ? 1 : 2;
    Int p_prev = 1, q_prev = 0, p_cur, q_cur;
    const Int t = K.omega_trace(), n = K.omega_norm();
    for (long k = 0;; ++k) {
        Int a = floor_div(P + sqrt_d, Q);
        if (k == 0) {
            p_cur = a;
            q_cur = 1;
        } else {
            Int pn = a * p_cur + p_prev;
            Int qn = a * q_cur + q_prev;
            p_prev = p_cur;
            q_prev = q_cur;
            p_cur = pn;
            q_cur = qn;
        }
        Int nrm = p_cur * p_cur - t * p_cur * q_cur + n * q_cur * q_cur;
        if (nrm == 1 || nrm == -1) {
            FieldElem alpha = FieldElem(K, Rat(p_cur)) - Rat(q_cur) * omega(K);
            return normalize_unit(alpha);
        }
        P = a * Q - P;
        Q = (d - P * P) / Q;
    }
}

// Is u = +-eps^(+-1) for the fundamental unit eps?
inline bool is_fundamental_unit(const FieldElem& u)
{
    return is_unit(u) && normalize_unit(u) == fundamental_unit(u.field());
}

// Upper integer bound for a positive element under sqrt(m) > 0.
inline Int ceil_upper(const FieldElem& x)
{
    Rat sq_hi = Rat(isqrt(Int(x.field().m())) + 1);
    Rat sq_lo = Rat(isqrt(Int(x.field().m())));
    Rat bound = x.a() + x.b() * (sgn(x.b()) >= 0 ? sq_hi : sq_lo);
    return ceil_rat(bound);
}

// Is the prime ideal P principal? Searches generators up to the unit-group
// fundamental domain |sigma_i(alpha)| <= sqrt(N(P) * eps).
inline std::optional<FieldElem> principal_generator(const PrimeIdeal& P, const FieldElem& eps)
{
    const QuadField& K = P.field;
    const Int m = K.m();
    const bool half = K.basis() == BasisKind::OneHalfOnePlusSqrtM;
    const Int scale = half ? 2 : 1;
    const Int target = scale * scale * P.norm;
    // |B| <= scale * sqrt(N eps / m)
    Int bmax = scale * isqrt(P.norm * ceil_upper(eps) / m + 1) + 2;
    for (Int B = 0; B <= bmax; ++B) {
        for (int sgn_n : {1, -1}) {
            Int rhs = m * B * B + sgn_n * target;
            auto A = exact_sqrt(rhs);
            if (!A) {
                continue;
            }
            if (half && (*A - B) % 2 != 0) {
                continue;
            }
            for (const Int& a : {*A, Int(-*A)}) {
                FieldElem alpha(K, make_rat(a, scale), make_rat(B, scale));
                if (!is_integral(alpha)) {
                    continue;
                }
                if (valuation(alpha, P) >= 1) {
                    return alpha;
                }
            }
        }
    }
    return std::nullopt;
}

// h(K) = 1 iff every prime of norm up to the Minkowski bound sqrt(disc)/2 is principal.
inline bool class_number_is_one(const QuadField& K)
{
    const Int disc = K.disc();
    const FieldElem eps = fundamental_unit(K);
    for (Int p = 2; 4 * p * p <= disc; p = next_prime(p)) {
        for (const auto& P : factor_rational_prime(K, p)) {
            if (4 * P.norm * P.norm > disc) {
                continue;
            }
            if (!principal_generator(P, eps)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace egr
