#pragma once

// Integer helpers on top of GMP: valuations, exact roots, factoring and
// small modular arithmetic.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace egr {

using Int = mpz_class;
using Rat = mpq_class;

inline int sgn(const Int& x) { return mpz_sgn(x.get_mpz_t()); }
inline int sgn(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Rat make_rat(const Int& num, const Int& den)
{
    if (den == 0) {
        throw std::domain_error("zero denominator");
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int floor_div(const Int& a, const Int& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int ceil_div(const Int& a, const Int& b)
{
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int mod_floor(const Int& a, const Int& p)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

inline Int floor_rat(const Rat& x) { return floor_div(x.get_num(), x.get_den()); }
inline Int ceil_rat(const Rat& x) { return ceil_div(x.get_num(), x.get_den()); }

inline Int isqrt(const Int& n)
{
    if (n < 0) {
        throw std::domain_error("isqrt of negative integer");
    }
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline std::optional<Int> exact_sqrt(const Int& n)
{
    if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t())) {
        return std::nullopt;
    }
    return isqrt(n);
}

// Non-negative rational square root, if it exists.
inline std::optional<Rat> exact_sqrt(const Rat& x)
{
    auto n = exact_sqrt(Int(x.get_num()));
    if (!n) {
        return std::nullopt;
    }
    auto d = exact_sqrt(Int(x.get_den()));
    if (!d) {
        return std::nullopt;
    }
    return make_rat(*n, *d);
}

inline Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int pow_int(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int powmod(const Int& base, const Int& e, const Int& mod)
{
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    return r;
}

inline bool is_prime(const Int& n)
{
    return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline Int next_prime(const Int& n)
{
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// v_p(n) for n != 0.
inline int valuation(const Int& n, const Int& p)
{
    if (n == 0) {
        throw std::domain_error("valuation of zero");
    }
    Int rest;
    return static_cast<int>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

inline int valuation(const Rat& x, const Int& p)
{
    return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
}

inline bool is_squarefree(long long n)
{
    if (n == 0) {
        return false;
    }
    if (n < 0) {
        n = -n;
    }
    for (long long d = 2; d * d <= n; ++d) {
        if (n % (d * d) == 0) {
            return false;
        }
    }
    return true;
}

// Legendre symbol (a/p), p an odd prime.
inline int legendre(const Int& a, const Int& p)
{
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

// Tonelli-Shanks: some x with x^2 = a mod p, p an odd prime, a a square mod p.
inline Int sqrt_mod(const Int& a_in, const Int& p)
{
    Int a = mod_floor(a_in, p);
    if (a == 0) {
        return 0;
    }
    if (legendre(a, p) != 1) {
        throw std::domain_error("sqrt_mod: not a quadratic residue");
    }
    if (mod_floor(p, 4) == 3) {
        return powmod(a, (p + 1) / 4, p);
    }
    Int q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (legendre(z, p) != -1) {
        ++z;
    }
    Int c = powmod(z, q, p);
    Int x = powmod(a, (q + 1) / 2, p);
    Int t = powmod(a, q, p);
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Int tt = t;
        while (tt != 1) {
            tt = mod_floor(tt * tt, p);
            ++i;
        }
        Int b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) {
            b = mod_floor(b * b, p);
        }
        x = mod_floor(x * b, p);
        c = mod_floor(b * b, p);
        t = mod_floor(t * c, p);
        m = i;
    }
    return x;
}

namespace detail {

inline Int pollard_brent(const Int& n, unsigned long seed)
{
    if (mpz_even_p(n.get_mpz_t())) {
        return 2;
    }
    Int y = seed % 1000 + 2;
    Int c = seed % 97 + 1;
    Int g = 1, r = 1, q = 1, x, ys;
    const unsigned long batch = 128;
    auto f = [&](const Int& v) { return mod_floor(v * v + c, n); };
    while (g == 1) {
        x = y;
        for (Int i = 0; i < r; ++i) {
            y = f(y);
        }
        Int k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < batch && k + i < r; ++i) {
                y = f(y);
                q = mod_floor(q * abs_int(x - y), n);
            }
            g = gcd(q, n);
            k += batch;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd(abs_int(x - ys), n);
        } while (g == 1);
    }
    return g;
}

inline void factor_into(const Int& n, std::map<Int, int>& out)
{
    if (n == 1) {
        return;
    }
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    for (unsigned long seed = 1;; ++seed) {
        Int d = pollard_brent(n, seed);
        if (d != n && d != 1) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
    }
}

} // namespace detail

// Prime factorization of |n|, n != 0, primes ascending.
inline std::vector<std::pair<Int, int>> factor(const Int& n_in)
{
    if (n_in == 0) {
        throw std::domain_error("factor of zero");
    }
    Int n = abs_int(n_in);
    std::map<Int, int> found;
    for (unsigned long p = 2; p < 10000 && n > 1; p = (p == 2 ? 3 : p + 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                n /= p;
                ++e;
            }
            found[Int(p)] = e;
        }
    }
    detail::factor_into(n, found);
    return {found.begin(), found.end()};
}

inline std::vector<Int> prime_divisors(const Int& n)
{
    std::vector<Int> out;
    for (const auto& [p, e] : factor(n)) {
        out.push_back(p);
    }
    return out;
}

// Arithmetic modulo a word-sized prime.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    std::uint64_t s = a + b;
    return (s >= p || s < a) ? s - p : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t to_word(const Int& x)
{
    if (x < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 62) {
        throw std::domain_error("value does not fit the residue word size");
    }
    return static_cast<std::uint64_t>(mpz_get_ui(x.get_mpz_t()));
}

inline std::uint64_t reduce_word(const Int& x, std::uint64_t p)
{
    Int r = mod_floor(x, Int(static_cast<unsigned long>(p)));
    return static_cast<std::uint64_t>(mpz_get_ui(r.get_mpz_t()));
}

} // namespace egr
