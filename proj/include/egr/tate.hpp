#pragma once

// Tate's algorithm at a prime of O_K: Kodaira symbol, conductor exponent and a
// P-minimal model, for residue fields of any characteristic (including the
// ramified prime above 2).

#include "egr/reduction.hpp"

namespace egr {

enum class KodairaKind { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };

struct Kodaira {
    KodairaKind kind = KodairaKind::I0;
    int n = 0; // for In and In*

    static Kodaira parse(std::string_view s)
    {
        static const std::pair<std::string_view, KodairaKind> fixed[] = {
            {"I0", KodairaKind::I0},         {"II", KodairaKind::II},         {"III", KodairaKind::III},
            {"IV", KodairaKind::IV},         {"I0*", KodairaKind::I0Star},    {"IV*", KodairaKind::IVStar},
            {"III*", KodairaKind::IIIStar},  {"II*", KodairaKind::IIStar},
        };
        for (const auto& [name, kind] : fixed) {
            if (s == name) {
                return {kind, 0};
            }
        }
        if (s.size() >= 2 && s[0] == 'I') {
            bool star = s.back() == '*';
            std::string digits(s.substr(1, s.size() - 1 - (star ? 1 : 0)));
            if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
                return {star ? KodairaKind::InStar : KodairaKind::In, std::stoi(digits)};
            }
        }
        throw ParseError("unknown Kodaira symbol '" + std::string(s) + "'");
    }

    std::string to_string() const
    {
        switch (kind) {
        case KodairaKind::I0: return "I0";
        case KodairaKind::In: return "I" + std::to_string(n);
        case KodairaKind::II: return "II";
        case KodairaKind::III: return "III";
        case KodairaKind::IV: return "IV";
        case KodairaKind::I0Star: return "I0*";
        case KodairaKind::InStar: return "I" + std::to_string(n) + "*";
        case KodairaKind::IVStar: return "IV*";
        case KodairaKind::IIIStar: return "III*";
        case KodairaKind::IIStar: return "II*";
        }
        return "?";
    }

    bool is_good() const { return kind == KodairaKind::I0; }
    bool is_multiplicative() const { return kind == KodairaKind::In; }
    bool is_additive() const { return !is_good() && !is_multiplicative(); }

    bool operator==(const Kodaira&) const = default;
};

struct LocalData {
    PrimeIdeal prime;
    Kodaira kodaira;
    int f_exp = 0;          // conductor exponent
    int v_min_disc = 0;     // v_P of the discriminant of the P-minimal model
    Curve local_model;      // P-minimal model reached
    Isomorphism to_minimal; // from the input model to local_model
};

namespace detail {

class TateRunner {
public:
    TateRunner(const PrimeIdeal& P) : P_(P), K_(P.field), pi_(P.uniformizer) {}

    LocalData run(const Curve& input)
    {
        Isomorphism total = Isomorphism::identity(K_);
        Curve C = input;
        // P-integral model: scale by pi^e.
        int e = 0;
        const FieldElem* coeffs[] = {&C.a1(), &C.a2(), &C.a3(), &C.a4(), &C.a6()};
        const int weights[] = {1, 2, 3, 4, 6};
        for (int i = 0; i < 5; ++i) {
            int v = val(*coeffs[i]);
            if (v < 0) {
                e = std::max(e, (-v + weights[i] - 1) / weights[i]);
            }
        }
        if (e > 0) {
            apply(C, total, {pi_.pow(-e), zero(), zero(), zero()});
        }
        const FieldElem pi2 = pi_ * pi_, pi3 = pi2 * pi_, pi4 = pi3 * pi_;
        const bool char2 = P_.p == 2, char3 = P_.p == 3;
        const FieldElem halfmodp = char2 ? zero() : pinv(FieldElem(K_, 2));
        int last_vd = -1;
        for (;;) {
            const int vd = val(C.discriminant());
            if (last_vd >= 0 && vd != last_vd - 12) {
                throw std::logic_error("Tate: non-minimal step did not lower v(disc) by 12");
            }
            last_vd = vd;
            if (vd == 0) {
                return finish(C, total, {KodairaKind::I0, 0}, 0, vd);
            }
            // Move the singular point to (0, 0): P | a3, a4, a6.
            FieldElem r(K_), t(K_);
            {
                const Curve& E = C;
                if (char2) {
                    if (pdiv(E.b2())) {
                        r = proot(E.a4());
                        t = proot(((r + E.a2()) * r + E.a4()) * r + E.a6());
                    } else {
                        FieldElem tmp = pinv(E.a1());
                        r = tmp * E.a3();
                        t = tmp * (E.a4() + r * r);
                    }
                } else if (char3) {
                    r = pdiv(E.b2()) ? proot(-E.b6()) : -pinv(E.b2()) * E.b4();
                    t = E.a1() * r + E.a3();
                } else {
                    if (pdiv(E.c4())) {
                        r = -pinv(FieldElem(K_, 12)) * E.b2();
                    } else {
                        r = -pinv(12 * E.c4()) * (E.c6() + E.b2() * E.c4());
                    }
                    t = -halfmodp * (E.a1() * r + E.a3());
                }
            }
            r = preduce(r);
            t = preduce(t);
            apply(C, total, {one(), r, zero(), t});
            require(val(C.a3()) >= 1 && val(C.a4()) >= 1 && val(C.a6()) >= 1, "P does not divide a3, a4, a6");

            if (!pdiv(C.c4())) {
                return finish(C, total, {KodairaKind::In, vd}, 1, vd);
            }
            if (val(C.a6()) < 2) {
                return finish(C, total, {KodairaKind::II, 0}, vd, vd);
            }
            if (val(C.b8()) < 3) {
                return finish(C, total, {KodairaKind::III, 0}, vd - 1, vd);
            }
            if (val(C.b6()) < 3) {
                return finish(C, total, {KodairaKind::IV, 0}, vd - 2, vd);
            }

            // P | a1, a2; P^2 | a3, a4; P^3 | a6.
            FieldElem s(K_);
            if (char2) {
                s = proot(C.a2());
                t = pi_ * proot(C.a6() / pi2);
            } else if (char3) {
                s = C.a1();
                t = C.a3();
            } else {
                s = -C.a1() * halfmodp;
                t = -C.a3() * halfmodp;
            }
            apply(C, total, {one(), zero(), s, t});
            require(val(C.a1()) >= 1 && val(C.a2()) >= 1 && val(C.a3()) >= 2 && val(C.a4()) >= 2 && val(C.a6()) >= 3,
                    "second transform failed");

            // Roots of T^3 + b T^2 + c T + d mod P.
            const FieldElem b = preduce(C.a2() / pi_);
            const FieldElem c = preduce(C.a4() / pi2);
            const FieldElem d = preduce(C.a6() / pi3);
            const FieldElem bb = b * b, cc = c * c, bc = b * c;
            const FieldElem w = 27 * d * d - bb * cc + 4 * b * bb * d - 18 * bc * d + 4 * c * cc;
            const FieldElem x = 3 * c - bb;
            const int sw = pdiv(w) ? (pdiv(x) ? 3 : 2) : 1;

            if (sw == 1) {
                return finish(C, total, {KodairaKind::I0Star, 0}, vd - 4, vd);
            }
            if (sw == 2) {
                // Move the double root to T = 0, then peel off powers of pi.
                if (char2) {
                    r = proot(c);
                } else if (char3) {
                    r = c * pinv(b);
                } else {
                    r = (bc - 9 * d) * pinv(2 * x);
                }
                r = pi_ * preduce(r);
                apply(C, total, {one(), r, zero(), zero()});
                int ix = 3, iy = 3;
                FieldElem mx = pi2, my = pi2;
                for (;;) {
                    FieldElem a2t = preduce(C.a2() / pi_);
                    FieldElem a3t = preduce(C.a3() / my);
                    FieldElem a4t = preduce(C.a4() / (pi_ * mx));
                    FieldElem a6t = preduce(C.a6() / (mx * my));
                    if (!pdiv(a3t * a3t + 4 * a6t)) {
                        break;
                    }
                    t = char2 ? my * proot(a6t) : my * preduce(-a3t * halfmodp);
                    apply(C, total, {one(), zero(), zero(), t});
                    my *= pi_;
                    ++iy;
                    a2t = preduce(C.a2() / pi_);
                    a3t = preduce(C.a3() / my);
                    a4t = preduce(C.a4() / (pi_ * mx));
                    a6t = preduce(C.a6() / (mx * my));
                    if (!pdiv(a4t * a4t - 4 * a6t * a2t)) {
                        break;
                    }
                    r = char2 ? mx * proot(a6t * pinv(a2t)) : mx * preduce(-a4t * pinv(2 * a2t));
                    apply(C, total, {one(), r, zero(), zero()});
                    mx *= pi_;
                    ++ix;
                }
                return finish(C, total, {KodairaKind::InStar, ix + iy - 5}, vd - ix - iy + 1, vd);
            }

            // Triple root: move it to T = 0.
            if (char2) {
                r = b;
            } else if (char3) {
                r = proot(-d);
            } else {
                r = -b * pinv(FieldElem(K_, 3));
            }
            r = pi_ * preduce(r);
            apply(C, total, {one(), r, zero(), zero()});
            require(val(C.a2()) >= 2 && val(C.a4()) >= 3 && val(C.a6()) >= 4, "triple root not moved to 0");
            const FieldElem a3t = preduce(C.a3() / pi2);
            const FieldElem a6t = preduce(C.a6() / pi4);
            if (!pdiv(a3t * a3t + 4 * a6t)) {
                return finish(C, total, {KodairaKind::IVStar, 0}, vd - 6, vd);
            }
            t = char2 ? -pi2 * proot(a6t) : pi2 * preduce(-a3t * halfmodp);
            apply(C, total, {one(), zero(), zero(), t});
            if (val(C.a4()) < 4) {
                return finish(C, total, {KodairaKind::IIIStar, 0}, vd - 7, vd);
            }
            if (val(C.a6()) < 6) {
                return finish(C, total, {KodairaKind::IIStar, 0}, vd - 8, vd);
            }
            // Non-minimal: divide a_i by pi^i.
            apply(C, total, {pi_, zero(), zero(), zero()});
        }
    }

private:
    FieldElem zero() const { return FieldElem(K_); }
    FieldElem one() const { return FieldElem(K_, 1); }
    int val(const FieldElem& x) const { return valuation(x, P_); }
    bool pdiv(const FieldElem& x) const { return x.is_zero() || val(x) > 0; }
    ResidueElem red(const FieldElem& x) const { return reduce_mod(x, P_); }
    FieldElem preduce(const FieldElem& x) const { return lift(red(x), P_); }
    FieldElem pinv(const FieldElem& x) const { return lift(red(x).inverse(), P_); }
    // p-th root in the residue field (p = 2 or 3), lifted.
    FieldElem proot(const FieldElem& x) const { return lift(red(x).frobenius_inverse(), P_); }

    void apply(Curve& C, Isomorphism& total, const Isomorphism& step) const
    {
        C = C.transform(step);
        total = total.then(step);
    }

    static void require(bool ok, const char* what)
    {
        if (!ok) {
            throw std::logic_error(std::string("Tate: ") + what);
        }
    }

    LocalData finish(const Curve& C, const Isomorphism& total, Kodaira k, int f, int vd) const
    {
        return LocalData{P_, k, f, vd, C, total};
    }

    const PrimeIdeal& P_;
    QuadField K_;
    FieldElem pi_;
};

} // namespace detail

inline LocalData tate_local(const Curve& E, const PrimeIdeal& P)
{
    if (!(E.field() == P.field)) {
        throw std::invalid_argument("tate_local: prime of a different field");
    }
    return detail::TateRunner(P).run(E);
}

inline std::string to_string(const LocalData& ld)
{
    return "{prime: " + to_string(ld.prime) + ", kodaira: " + ld.kodaira.to_string() +
           ", f: " + std::to_string(ld.f_exp) + ", v_disc: " + std::to_string(ld.v_min_disc) + "}";
}

struct Conductor {
    std::vector<std::pair<PrimeIdeal, int>> factors; // exponents >= 1
    std::vector<LocalData> local;                    // every prime that was examined

    bool is_trivial() const { return factors.empty(); }

    Int norm() const
    {
        Int n = 1;
        for (const auto& [P, e] : factors) {
            n *= pow_int(P.norm, static_cast<unsigned long>(e));
        }
        return n;
    }
};

// Rational primes below which the model can have bad reduction: those
// dividing N(disc) or a coefficient denominator.
inline std::vector<Int> bad_rational_primes(const Curve& E)
{
    Rat nd = E.discriminant().norm();
    Int acc = abs_int(Int(nd.get_num())) * Int(nd.get_den());
    for (const FieldElem* c : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()}) {
        acc *= denominator(*c);
    }
    return prime_divisors(acc);
}

inline Conductor conductor(const Curve& E)
{
    Conductor N;
    for (const auto& p : bad_rational_primes(E)) {
        for (const auto& P : factor_rational_prime(E.field(), p)) {
            if (is_integral_at(E, P) && valuation(E.discriminant(), P) == 0) {
                continue;
            }
            LocalData ld = tate_local(E, P);
            if (ld.f_exp > 0) {
                N.factors.emplace_back(P, ld.f_exp);
            }
            N.local.push_back(std::move(ld));
        }
    }
    return N;
}

inline bool is_everywhere_good(const Curve& E)
{
    Conductor N = conductor(E);
    bool unit_min_disc = std::all_of(N.local.begin(), N.local.end(), [](const LocalData& ld) { return ld.v_min_disc == 0; });
    if (unit_min_disc != N.is_trivial()) {
        throw std::logic_error("conductor and minimal discriminant disagree");
    }
    return N.is_trivial();
}

} // namespace egr
