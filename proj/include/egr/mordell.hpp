#pragma once

// Mordell curves y^2 = x^3 + sign*1728*eps^n and their integral points.

#include "egr/torsion.hpp"
#include "egr/units.hpp"

#include <map>
#include <set>

namespace egr {

struct MordellCurve {
    QuadField field;
    int sign = 1;
    int n = 0;
    FieldElem epsilon;
    Curve curve;

    // Discriminant of any curve whose (c4, c6) is an integral point: -sign*eps^n.
    FieldElem discriminant_class() const { return Rat(-sign) * epsilon.pow(n); }

    std::string label() const
    {
        return "E_" + std::to_string(n) + "^" + (sign > 0 ? "+" : "-") + "(K_" + std::to_string(field.m()) + ")";
    }
};

inline MordellCurve build_mordell(const QuadField& K, int sign, int n, const std::optional<FieldElem>& unit = std::nullopt)
{
    if (n < 0 || n >= 12) {
        throw std::invalid_argument("Mordell exponent must satisfy 0 <= n < 12, got " + std::to_string(n));
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("Mordell sign must be +1 or -1");
    }
    FieldElem eps = unit ? *unit : fundamental_unit(K);
    if (!(eps.field() == K) || !is_unit(eps)) {
        throw std::invalid_argument(to_string(eps) + " is not a unit of Q(sqrt(" + std::to_string(K.m()) + "))");
    }
    FieldElem k = Rat(sign * 1728) * eps.pow(n);
    return {K, sign, n, eps, Curve::short_form(FieldElem(K), k)};
}

struct NamedPoint {
    std::string name;
    Point point;
};

struct GeneratorData {
    std::optional<NamedPoint> torsion;
    std::vector<NamedPoint> free_gens;
    int claimed_rank = 0;
    std::string provenance;
};

struct GeneratorReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<std::string> checks;
    Int torsion_bound;
    std::string torsion_structure;
    std::string status; // "verified-under-rank-assumption" or "failed"
};

inline constexpr long independence_scan = 8;

inline GeneratorReport verify_generators(const MordellCurve& mc, const GeneratorData& gd)
{
    const Curve& E = mc.curve;
    GeneratorReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.failures.push_back(std::move(msg));
    };
    auto all_points = gd.free_gens;
    if (gd.torsion) {
        all_points.insert(all_points.begin(), *gd.torsion);
    }
    for (const auto& np : all_points) {
        if (np.point.infinity) {
            fail(np.name + " is the point at infinity");
        } else if (!E.contains(np.point)) {
            fail(np.name + " " + to_string(np.point) + " is not on " + mc.label());
        } else {
            rep.checks.push_back(np.name + " lies on " + mc.label());
        }
    }
    if (!rep.ok) {
        rep.status = "failed";
        return rep;
    }
    TorsionInfo tors;
    try {
        tors = torsion_subgroup(E);
    } catch (const TorsionInconclusive& ex) {
        fail(std::string("torsion: ") + ex.what());
        rep.status = "failed";
        return rep;
    }
    rep.torsion_bound = tors.bound;
    rep.torsion_structure = tors.structure;
    if (gd.torsion) {
        const Point& T = gd.torsion->point;
        if (!E.multiply(2, T).infinity) {
            fail(gd.torsion->name + " does not have order 2");
        } else {
            rep.checks.push_back(gd.torsion->name + " has order exactly 2");
        }
    }
    if (static_cast<long>(tors.points.size()) != (gd.torsion ? 2 : 1)) {
        fail("torsion subgroup " + tors.structure + " does not match the supplied torsion data");
    }
    const long B = tors.bound.get_si();
    for (const auto& g : gd.free_gens) {
        if (E.multiply(B, g.point).infinity) {
            fail(g.name + " is a torsion point");
        } else {
            rep.checks.push_back(g.name + " is non-torsion (" + std::to_string(B) + "*P != O)");
        }
    }
    if (static_cast<int>(gd.free_gens.size()) != gd.claimed_rank) {
        fail("claimed rank " + std::to_string(gd.claimed_rank) + " but " + std::to_string(gd.free_gens.size()) +
             " free generators supplied");
    }
    // a*P_i + b*P_j must avoid the torsion subgroup for small (a, b) != (0, 0).
    for (std::size_t i = 0; i < gd.free_gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gd.free_gens.size(); ++j) {
            const Point& Pi = gd.free_gens[i].point;
            const Point& Pj = gd.free_gens[j].point;
            std::vector<Point> mi, mj;
            for (long k = -independence_scan; k <= independence_scan; ++k) {
                mi.push_back(E.multiply(k, Pi));
                mj.push_back(E.multiply(k, Pj));
            }
            bool dependent = false;
            for (long a = -independence_scan; a <= independence_scan && !dependent; ++a) {
                for (long b = -independence_scan; b <= independence_scan && !dependent; ++b) {
                    if (a == 0 && b == 0) {
                        continue;
                    }
                    Point S = E.add(mi[a + independence_scan], mj[b + independence_scan]);
                    if (std::find(tors.points.begin(), tors.points.end(), S) != tors.points.end()) {
                        dependent = true;
                        fail(gd.free_gens[i].name + " and " + gd.free_gens[j].name + " are dependent: " +
                             std::to_string(a) + "*P + " + std::to_string(b) + "*Q is torsion");
                    }
                }
            }
            if (!dependent) {
                rep.checks.push_back(gd.free_gens[i].name + ", " + gd.free_gens[j].name +
                                     " independent modulo torsion for coefficients up to " +
                                     std::to_string(independence_scan));
            }
        }
    }
    rep.status = rep.ok ? "verified-under-rank-assumption" : "failed";
    return rep;
}

// An integral point together with one combination sum(m_i P_i) + t*T giving it.
struct IntegralPoint {
    Point point;
    std::vector<long> coeffs;
    long torsion_coeff = 0;
};

struct IntegralPointSet {
    std::vector<IntegralPoint> points; // sorted by serialized coordinates, unique

    std::set<std::string> keys() const
    {
        std::set<std::string> out;
        for (const auto& ip : points) {
            out.insert(to_string(ip.point));
        }
        return out;
    }
    bool contains(const Point& P) const { return keys().count(to_string(P)) > 0; }
    std::size_t size() const { return points.size(); }
};

namespace detail {

inline IntegralPointSet finalize(std::map<std::string, IntegralPoint> found)
{
    IntegralPointSet out;
    for (auto& [key, ip] : found) {
        out.points.push_back(std::move(ip));
    }
    return out;
}

// Prefer the combination with the smallest sum of |coefficients|.
inline long weight(const IntegralPoint& ip)
{
    long w = ip.torsion_coeff;
    for (long c : ip.coeffs) {
        w += std::labs(c);
    }
    return w;
}

} // namespace detail

inline IntegralPointSet combine_and_filter(const MordellCurve& mc, const GeneratorData& gd, long M)
{
    if (M < 1) {
        throw std::invalid_argument("combine_and_filter: M must be >= 1");
    }
    const Curve& E = mc.curve;
    const std::size_t r = gd.free_gens.size();
    // multiples[i][k + M] = k * P_i
    std::vector<std::vector<Point>> multiples(r);
    for (std::size_t i = 0; i < r; ++i) {
        const Point& P = gd.free_gens[i].point;
        std::vector<Point> pos{Point::at_infinity()};
        for (long k = 1; k <= M; ++k) {
            pos.push_back(E.add(pos.back(), P));
        }
        for (long k = -M; k <= M; ++k) {
            multiples[i].push_back(k >= 0 ? pos[k] : E.negate(pos[-k]));
        }
    }
    std::map<std::string, IntegralPoint> found;
    auto consider = [&](const Point& S, const std::vector<long>& coeffs, long t) {
        if (!S.infinity && !is_integral_point(S)) {
            return;
        }
        IntegralPoint ip{S, coeffs, t};
        auto key = to_string(S);
        auto it = found.find(key);
        if (it == found.end() || detail::weight(ip) < detail::weight(it->second)) {
            found[key] = std::move(ip);
        }
    };
    std::vector<long> coeffs(r, -M);
    const long torsion_max = gd.torsion ? 1 : 0;
    for (;;) {
        Point S = Point::at_infinity();
        for (std::size_t i = 0; i < r; ++i) {
            S = E.add(S, multiples[i][coeffs[i] + M]);
        }
        for (long t = 0; t <= torsion_max; ++t) {
            consider(t == 0 ? S : E.add(S, gd.torsion->point), coeffs, t);
        }
        std::size_t i = 0;
        while (i < r && coeffs[i] == M) {
            coeffs[i] = -M;
            ++i;
        }
        if (i == r) {
            break;
        }
        ++coeffs[i];
    }
    return detail::finalize(std::move(found));
}

inline constexpr long max_search_box = 10000;

// Does z have a square root in K? Returns one if so.
inline std::optional<FieldElem> sqrt_in_field(const FieldElem& z)
{
    const QuadField& K = z.field();
    if (z.is_zero()) {
        return z;
    }
    auto n = exact_sqrt(z.norm());
    if (!n) {
        return std::nullopt;
    }
    // y = s + w sqrt(m): s^2 + m w^2 = a, s^2 - m w^2 = +-n, 2 s w = b
    for (int sg : {1, -1}) {
        Rat s2 = (z.a() + sg * *n) / 2;
        Rat w2 = (z.a() - sg * *n) / (2 * Rat(K.m()));
        auto s = exact_sqrt(s2);
        auto w = exact_sqrt(w2);
        if (!s || !w) {
            continue;
        }
        for (int ws : {1, -1}) {
            FieldElem y(K, *s, ws * *w);
            if (y * y == z) {
                return y;
            }
        }
    }
    return std::nullopt;
}

// All integral points (x, y) with x = u + v*omega, |u|, |v| <= H, found by
// testing x^3 + k for squares; x runs over 64 x^3 + 64 k in integer arithmetic.
inline IntegralPointSet brute_search_integral(const MordellCurve& mc, long H)
{
    if (H < 0 || H > max_search_box) {
        throw std::invalid_argument("brute_search_integral: H must lie in [0, " + std::to_string(max_search_box) + "]");
    }
    const QuadField& K = mc.field;
    const FieldElem& k = mc.curve.a6();
    if (!is_integral(k)) {
        throw std::invalid_argument("brute_search_integral: constant term must be integral");
    }
    const Int m = K.m();
    const bool half = K.basis() == BasisKind::OneHalfOnePlusSqrtM;
    // 64k = ka + kb sqrt(m) with integer ka, kb
    const Int ka = Rat(64 * k.a()).get_num();
    const Int kb = Rat(64 * k.b()).get_num();
    std::map<std::string, IntegralPoint> found;
    found.emplace("O", IntegralPoint{Point::at_infinity(), {}, 0});
    Int A, B, A2, B2, ZA, ZB, N, tmp;
    for (long u = -H; u <= H; ++u) {
        for (long v = -H; v <= H; ++v) {
            // X = 4x = A + B sqrt(m)
            if (half) {
                A = 4 * u + 2 * v;
                B = 2 * v;
            } else {
                A = 4 * u;
                B = 4 * v;
            }
            A2 = A * A;
            B2 = m * B * B;
            // X^3 = A (A^2 + 3 m B^2) + B (3 A^2 + m B^2) sqrt(m)
            ZA = A * (A2 + 3 * B2) + ka;
            ZB = B * (3 * A2 + B2) + kb;
            N = ZA * ZA - m * ZB * ZB;
            if (sgn(N) < 0 || !mpz_perfect_square_p(N.get_mpz_t())) {
                continue;
            }
            FieldElem x = AlgInt{K, Int(u), Int(v)}.to_elem();
            FieldElem z = x * x * x + k;
            auto y = sqrt_in_field(z);
            if (!y) {
                continue;
            }
            for (const FieldElem& yy : {*y, -*y}) {
                Point P = Point::affine(x, yy);
                found.emplace(to_string(P), IntegralPoint{P, {}, 0});
            }
        }
    }
    return detail::finalize(std::move(found));
}

// Is P = (u + v*omega, y) inside the search box |u|, |v| <= H?
inline bool in_search_box(const Point& P, long H)
{
    if (P.infinity) {
        return true;
    }
    if (!is_integral(P.x)) {
        return false;
    }
    AlgInt c = AlgInt::from_elem(P.x);
    return abs_int(c.u) <= H && abs_int(c.v) <= H;
}

inline std::set<std::string> restrict_to_box(const IntegralPointSet& S, long H)
{
    std::set<std::string> out;
    for (const auto& ip : S.points) {
        if (in_search_box(ip.point, H)) {
            out.insert(to_string(ip.point));
        }
    }
    return out;
}

// E_C: y^2 = x^3 - 27 c4 x - 54 c6, the short model with invariants (6^4 c4, 6^6 c6).
inline Curve curve_from_c4c6(const FieldElem& c4, const FieldElem& c6)
{
    FieldElem base = c4 * c4 * c4 - c6 * c6;
    if (base.is_zero()) {
        throw SingularCurve("c4^3 - c6^2 = 0");
    }
    Curve E = Curve::short_form(Rat(-27) * c4, Rat(-54) * c6);
    FieldElem expected = make_rat(pow_int(Int(6), 12), 1728) * base;
    if (!(E.discriminant() == expected)) {
        throw std::logic_error("curve_from_c4c6: discriminant identity violated");
    }
    return E;
}

} // namespace egr
