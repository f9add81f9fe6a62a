#pragma once

// Exact arithmetic in K = Q(sqrt(m)) for square-free m > 1.

#include "egr/numtheory.hpp"

#include <cctype>
#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace egr {

enum class BasisKind {
    OneSqrtM,            // O_K = Z[sqrt(m)],          m = 2, 3 mod 4
    OneHalfOnePlusSqrtM, // O_K = Z[(1 + sqrt(m))/2],  m = 1 mod 4
};

class QuadField {
public:
    QuadField() = default;

    explicit QuadField(long m) : m_(m)
    {
        if (m <= 1) {
            throw std::invalid_argument("Q(sqrt(m)) requires m > 1, got " + std::to_string(m));
        }
        if (!is_squarefree(m)) {
            throw std::invalid_argument("m must be square-free, got " + std::to_string(m));
        }
        basis_ = (m % 4 == 1) ? BasisKind::OneHalfOnePlusSqrtM : BasisKind::OneSqrtM;
        disc_ = (m % 4 == 1) ? m : 4 * m;
    }

    long m() const { return m_; }
    long disc() const { return disc_; }
    BasisKind basis() const { return basis_; }

    // omega = sqrt(m) or (1 + sqrt(m))/2 is a root of x^2 - trace*x + norm.
    long omega_trace() const { return basis_ == BasisKind::OneSqrtM ? 0 : 1; }
    long omega_norm() const { return basis_ == BasisKind::OneSqrtM ? -m_ : (1 - m_) / 4; }

    bool operator==(const QuadField&) const = default;

private:
    long m_ = 0;
    long disc_ = 0;
    BasisKind basis_ = BasisKind::OneSqrtM;
};

inline QuadField make_field(long m) { return QuadField(m); }

// a + b*sqrt(m) with rational a, b.
class FieldElem {
public:
    FieldElem() = default;
    explicit FieldElem(const QuadField& K) : K_(K) {}
    FieldElem(const QuadField& K, Rat a, Rat b = 0) : K_(K), a_(std::move(a)), b_(std::move(b))
    {
        a_.canonicalize();
        b_.canonicalize();
    }
    FieldElem(const QuadField& K, long a) : K_(K), a_(a), b_(0) {}

    const QuadField& field() const { return K_; }
    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_rational() const { return sgn(b_) == 0; }

    FieldElem conj() const { return {K_, a_, -b_}; }
    Rat norm() const { return a_ * a_ - Rat(K_.m()) * b_ * b_; }
    Rat trace() const { return 2 * a_; }

    FieldElem operator-() const { return {K_, -a_, -b_}; }

    FieldElem& operator+=(const FieldElem& o)
    {
        check(o);
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    FieldElem& operator-=(const FieldElem& o)
    {
        check(o);
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    FieldElem& operator*=(const FieldElem& o)
    {
        check(o);
        Rat na = a_ * o.a_ + Rat(K_.m()) * b_ * o.b_;
        Rat nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
        return *this;
    }
    FieldElem& operator/=(const FieldElem& o)
    {
        check(o);
        if (o.is_zero()) {
            throw std::domain_error("division by zero in Q(sqrt(" + std::to_string(K_.m()) + "))");
        }
        Rat n = o.norm();
        FieldElem c = o.conj();
        *this *= c;
        a_ /= n;
        b_ /= n;
        return *this;
    }
    FieldElem& operator*=(const Rat& r)
    {
        a_ *= r;
        b_ *= r;
        return *this;
    }

    friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
    friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
    friend FieldElem operator*(FieldElem x, const FieldElem& y) { return x *= y; }
    friend FieldElem operator/(FieldElem x, const FieldElem& y) { return x /= y; }
    friend FieldElem operator*(FieldElem x, const Rat& r) { return x *= r; }
    friend FieldElem operator*(const Rat& r, FieldElem x) { return x *= r; }
    friend FieldElem operator*(long r, FieldElem x) { return x *= Rat(r); }
    friend FieldElem operator+(FieldElem x, long r)
    {
        x.a_ += r;
        return x;
    }
    friend FieldElem operator-(FieldElem x, long r)
    {
        x.a_ -= r;
        return x;
    }

    friend bool operator==(const FieldElem& x, const FieldElem& y)
    {
        return x.K_ == y.K_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    FieldElem inverse() const { return FieldElem(K_, 1) / *this; }

    FieldElem pow(long e) const
    {
        if (e < 0) {
            return inverse().pow(-e);
        }
        FieldElem result(K_, 1), base = *this;
        while (e > 0) {
            if (e & 1) {
                result *= base;
            }
            base *= base;
            e >>= 1;
        }
        return result;
    }

    // Sign of the image under the real embedding with sqrt(m) > 0.
    int sign() const
    {
        int sa = sgn(a_), sb = sgn(b_);
        if (sb == 0) {
            return sa;
        }
        if (sa == 0 || sa == sb) {
            return sb;
        }
        // a and b of opposite signs: compare a^2 with m b^2.
        int c = cmp(a_ * a_, Rat(K_.m()) * b_ * b_);
        return c > 0 ? sa : (c < 0 ? sb : 0);
    }

    // Sign under the conjugate embedding (sqrt(m) < 0).
    int conj_sign() const { return conj().sign(); }

private:
    void check(const FieldElem& o) const
    {
        if (!(K_ == o.K_)) {
            throw std::invalid_argument("field mismatch: Q(sqrt(" + std::to_string(K_.m()) + ")) vs Q(sqrt(" +
                                        std::to_string(o.K_.m()) + "))");
        }
    }

    QuadField K_;
    Rat a_ = 0;
    Rat b_ = 0;
};

inline FieldElem sqrt_m(const QuadField& K) { return {K, 0, 1}; }

// The integral generator omega of O_K.
inline FieldElem omega(const QuadField& K)
{
    if (K.basis() == BasisKind::OneSqrtM) {
        return {K, 0, 1};
    }
    return {K, Rat(1, 2), Rat(1, 2)};
}

inline bool is_integral(const FieldElem& x)
{
    Rat t = x.trace();
    Rat n = x.norm();
    return t.get_den() == 1 && n.get_den() == 1;
}

// Element of O_K in coordinates u + v*omega.
struct AlgInt {
    QuadField field;
    Int u = 0;
    Int v = 0;

    FieldElem to_elem() const
    {
        if (field.basis() == BasisKind::OneSqrtM) {
            return {field, Rat(u), Rat(v)};
        }
        return {field, Rat(u) + make_rat(v, 2), make_rat(v, 2)};
    }

    static AlgInt from_elem(const FieldElem& x)
    {
        if (!is_integral(x)) {
            throw std::domain_error("element is not an algebraic integer");
        }
        const QuadField& K = x.field();
        if (K.basis() == BasisKind::OneSqrtM) {
            return {K, Int(x.a().get_num()), Int(x.b().get_num())};
        }
        Rat v = 2 * x.b();
        Rat u = x.a() - x.b();
        return {K, Int(u.get_num()), Int(v.get_num())};
    }

    bool operator==(const AlgInt&) const = default;
};

// Least positive integer d with d*x in O_K.
inline Int denominator(const FieldElem& x)
{
    Int d = lcm(Int(x.a().get_den()), Int(x.b().get_den()));
    if (x.field().basis() == BasisKind::OneHalfOnePlusSqrtM && d % 2 == 0) {
        FieldElem half = x * Rat(d / 2);
        if (is_integral(half)) {
            return d / 2;
        }
    }
    return d;
}

// ---- text form: "a/b" or "a/b + c/d*sqrt(m)" -------------------------------

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline std::string to_string(const FieldElem& x)
{
    if (x.is_rational()) {
        return x.a().get_str();
    }
    return x.a().get_str() + " + " + x.b().get_str() + "*sqrt(" + std::to_string(x.field().m()) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << to_string(x); }

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

class ElemParser {
public:
    ElemParser(std::string_view text, const QuadField& K) : s_(text), K_(K) {}

    FieldElem parse()
    {
        Rat a = 0, b = 0;
        bool first = true;
        skip_ws();
        while (pos_ < s_.size()) {
            int sign = 1;
            if (!first) {
                if (!consume_sign(sign)) {
                    fail("expected '+' or '-'");
                }
            }
            // optional unary signs, e.g. "+ -56/27*sqrt(43)"
            int unary = 1;
            while (consume_sign(unary)) {
                sign *= unary;
            }
            skip_ws();
            bool irrational = false;
            Rat coeff = 1;
            if (peek_sqrt()) {
                parse_sqrt();
                irrational = true;
            } else {
                coeff = parse_rational();
                skip_ws();
                if (pos_ < s_.size() && s_[pos_] == '*') {
                    ++pos_;
                    skip_ws();
                    parse_sqrt();
                    irrational = true;
                }
            }
            (irrational ? b : a) += sign * coeff;
            first = false;
            skip_ws();
        }
        if (first) {
            fail("empty element");
        }
        return {K_, a, b};
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("cannot parse element '" + std::string(s_) + "': " + what);
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool consume_sign(int& sign)
    {
        skip_ws();
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            sign = s_[pos_] == '-' ? -1 : 1;
            ++pos_;
            return true;
        }
        return false;
    }

    bool peek_sqrt() const { return s_.substr(pos_, 5) == "sqrt("; }

    void parse_sqrt()
    {
        if (!peek_sqrt()) {
            fail("expected sqrt(m)");
        }
        pos_ += 5;
        Int m = parse_digits();
        if (pos_ >= s_.size() || s_[pos_] != ')') {
            fail("expected ')'");
        }
        ++pos_;
        if (m != K_.m()) {
            fail("sqrt(" + m.get_str() + ") does not belong to Q(sqrt(" + std::to_string(K_.m()) + "))");
        }
    }

    Int parse_digits()
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected digits");
        }
        return Int(std::string(s_.substr(start, pos_ - start)));
    }

    Rat parse_rational()
    {
        Int num = parse_digits();
        skip_ws();
        Int den = 1;
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            skip_ws();
            den = parse_digits();
            if (den == 0) {
                fail("zero denominator");
            }
        }
        return make_rat(num, den);
    }

    std::string_view s_;
    QuadField K_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline FieldElem parse_elem(std::string_view text, const QuadField& K)
{
    return detail::ElemParser(text, K).parse();
}

} // namespace egr
