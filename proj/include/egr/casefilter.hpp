#pragma once

// Discriminant-class elimination for everywhere-good curves with unit
// discriminant sign*eps^n.

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace egr {

enum class SqrtDiscField { K, KSqrtMinus1, KSqrtEps, KSqrtMinusEps };

inline std::string to_string(SqrtDiscField f)
{
    switch (f) {
    case SqrtDiscField::K: return "K";
    case SqrtDiscField::KSqrtMinus1: return "K(sqrt(-1))";
    case SqrtDiscField::KSqrtEps: return "K(sqrt(eps))";
    case SqrtDiscField::KSqrtMinusEps: return "K(sqrt(-eps))";
    }
    return "?";
}

// K(sqrt(Delta)) for Delta = sign*eps^n.
inline SqrtDiscField classify_sqrt_disc(int sign, long n)
{
    bool odd = n % 2 != 0;
    if (sign > 0) {
        return odd ? SqrtDiscField::KSqrtEps : SqrtDiscField::K;
    }
    return odd ? SqrtDiscField::KSqrtMinusEps : SqrtDiscField::KSqrtMinus1;
}

// Ray class numbers modulo the product of primes above 2 of K, K(sqrt(-1)),
// K(sqrt(eps)), K(sqrt(-eps)).
struct RayClassRow {
    long m = 0;
    std::array<long, 4> h{};

    long at(SqrtDiscField f) const { return h[static_cast<std::size_t>(f)]; }
};

// Delta = sign*eps^n is only allowed for n = residue mod modulus.
struct ExternalConstraint {
    int sign = -1;
    long modulus = 1;
    long residue = 0;
    std::string provenance;

    bool allows(int s, long n) const { return s == sign && ((n - residue) % modulus + modulus) % modulus == 0; }
};

struct FilterSpec {
    std::optional<RayClassRow> ray_row;
    bool cubic_flag = false;
    std::optional<ExternalConstraint> external;
};

// A surviving Mordell curve E_n^sign with n in 0..5.
struct MordellClass {
    int sign = 1;
    long n = 0;

    bool operator==(const MordellClass&) const = default;
    auto operator<=>(const MordellClass&) const = default;
};

inline std::string to_string(const MordellClass& c)
{
    return "E_" + std::to_string(c.n) + "^" + (c.sign > 0 ? "+" : "-");
}

// Delta = sign*eps^n (n mod 12) survives the filter; y^2 = x^3 - 1728*Delta
// gives E_n^{-sign}, and (x, y) -> (eps^2 x, eps^3 y) identifies n with n + 6.
inline std::vector<MordellClass> admissible_curves(const FilterSpec& spec)
{
    if (!spec.ray_row) {
        throw std::invalid_argument("admissible_curves: ray class row missing");
    }
    for (long h : spec.ray_row->h) {
        if (h < 1) {
            throw std::invalid_argument("admissible_curves: ray class numbers must be >= 1");
        }
    }
    std::vector<MordellClass> out;
    for (int sign : {1, -1}) {
        for (long n = 0; n < 12; ++n) {
            if (spec.ray_row->at(classify_sqrt_disc(sign, n)) % 3 != 0) {
                continue;
            }
            if (spec.cubic_flag && n % 3 != 0) {
                continue;
            }
            if (spec.external && !spec.external->allows(sign, n)) {
                continue;
            }
            MordellClass c{-sign, n % 6};
            if (std::find(out.begin(), out.end(), c) == out.end()) {
                out.push_back(c);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const MordellClass& a, const MordellClass& b) {
        return a.n != b.n ? a.n < b.n : a.sign > b.sign;
    });
    return out;
}

} // namespace egr
