#pragma once

// Finite fields F_p and F_{p^2} arising as residue fields O_K / P.

#include "egr/numtheory.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace egr {

// F_p (f = 1) or F_p[theta]/(theta^2 - t*theta + n) (f = 2).
struct ResidueField {
    std::uint64_t p = 2;
    int f = 1;
    std::uint64_t t = 0;
    std::uint64_t n = 0;

    std::uint64_t size() const { return f == 1 ? p : p * p; }
    bool operator==(const ResidueField&) const = default;
};

class ResidueElem {
public:
    ResidueElem() = default;
    ResidueElem(const ResidueField& F, std::uint64_t c0, std::uint64_t c1 = 0) : F_(F), c0_(c0 % F.p), c1_(c1 % F.p) {}

    static ResidueElem from_int(const ResidueField& F, const Int& k) { return {F, reduce_word(k, F.p)}; }

    const ResidueField& field() const { return F_; }
    std::uint64_t c0() const { return c0_; }
    std::uint64_t c1() const { return c1_; }

    bool is_zero() const { return c0_ == 0 && c1_ == 0; }
    bool is_one() const { return c0_ == 1 && c1_ == 0; }

    friend bool operator==(const ResidueElem& x, const ResidueElem& y)
    {
        return x.F_ == y.F_ && x.c0_ == y.c0_ && x.c1_ == y.c1_;
    }

    ResidueElem operator-() const { return {F_, submod(0, c0_, F_.p), submod(0, c1_, F_.p)}; }

    friend ResidueElem operator+(const ResidueElem& x, const ResidueElem& y)
    {
        const auto p = x.F_.p;
        return {x.F_, addmod(x.c0_, y.c0_, p), addmod(x.c1_, y.c1_, p)};
    }
    friend ResidueElem operator-(const ResidueElem& x, const ResidueElem& y)
    {
        const auto p = x.F_.p;
        return {x.F_, submod(x.c0_, y.c0_, p), submod(x.c1_, y.c1_, p)};
    }
    friend ResidueElem operator*(const ResidueElem& x, const ResidueElem& y)
    {
        const auto& F = x.F_;
        const auto p = F.p;
        if (F.f == 1) {
            return {F, mulmod(x.c0_, y.c0_, p)};
        }
        std::uint64_t hh = mulmod(x.c1_, y.c1_, p);
        std::uint64_t r0 = submod(mulmod(x.c0_, y.c0_, p), mulmod(F.n, hh, p), p);
        std::uint64_t r1 = addmod(addmod(mulmod(x.c0_, y.c1_, p), mulmod(x.c1_, y.c0_, p), p), mulmod(F.t, hh, p), p);
        return {F, r0, r1};
    }
    friend ResidueElem operator*(long k, const ResidueElem& x) { return from_int(x.F_, Int(k)) * x; }
    ResidueElem& operator+=(const ResidueElem& y) { return *this = *this + y; }
    ResidueElem& operator-=(const ResidueElem& y) { return *this = *this - y; }
    ResidueElem& operator*=(const ResidueElem& y) { return *this = *this * y; }

    ResidueElem pow(Int e) const
    {
        if (e < 0) {
            return inverse().pow(-e);
        }
        ResidueElem result(F_, 1), base = *this;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) {
                result *= base;
            }
            base *= base;
            e /= 2;
        }
        return result;
    }

    ResidueElem inverse() const
    {
        if (is_zero()) {
            throw std::domain_error("inverse of zero in residue field");
        }
        const auto p = F_.p;
        if (F_.f == 1) {
            return pow(Int(static_cast<unsigned long>(p - 2)));
        }
        // (c0 + c1 theta)(c0 + c1 theta') = c0^2 + t c0 c1 + n c1^2, theta' = t - theta
        std::uint64_t nrm = addmod(addmod(mulmod(c0_, c0_, p), mulmod(F_.t, mulmod(c0_, c1_, p), p), p),
                                   mulmod(F_.n, mulmod(c1_, c1_, p), p), p);
        ResidueElem inv_n = ResidueElem(F_, nrm).pow(Int(static_cast<unsigned long>(p - 2)));
        ResidueElem conj(F_, addmod(c0_, mulmod(F_.t, c1_, p), p), submod(0, c1_, p));
        return conj * inv_n;
    }

    friend ResidueElem operator/(const ResidueElem& x, const ResidueElem& y) { return x * y.inverse(); }

    // Inverse Frobenius x^(1/p) = x^(p^(f-1)); used for square roots in
    // characteristic 2 and cube roots in characteristic 3.
    ResidueElem frobenius_inverse() const
    {
        return F_.f == 1 ? *this : pow(Int(static_cast<unsigned long>(F_.p)));
    }

    bool is_square() const
    {
        if (is_zero() || F_.p == 2) {
            return true;
        }
        Int q = Int(static_cast<unsigned long>(F_.size()));
        return pow((q - 1) / 2).is_one();
    }

    // Quadratic character: 0, 1 or -1 (odd characteristic).
    int quadratic_character() const
    {
        if (is_zero()) {
            return 0;
        }
        return is_square() ? 1 : -1;
    }

    std::string to_string() const
    {
        if (F_.f == 1 || c1_ == 0) {
            return std::to_string(c0_);
        }
        return std::to_string(c0_) + " + " + std::to_string(c1_) + "*w";
    }

private:
    ResidueField F_;
    std::uint64_t c0_ = 0;
    std::uint64_t c1_ = 0;
};

inline std::vector<ResidueElem> all_elements(const ResidueField& F)
{
    std::vector<ResidueElem> out;
    out.reserve(F.size());
    for (std::uint64_t c1 = 0; c1 < (F.f == 1 ? 1 : F.p); ++c1) {
        for (std::uint64_t c0 = 0; c0 < F.p; ++c0) {
            out.emplace_back(F, c0, c1);
        }
    }
    return out;
}

} // namespace egr
