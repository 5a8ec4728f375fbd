#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dwork {

using Integer = mpz_class;

// Exact rational number in lowest terms with positive denominator.
class Rational {
public:
    // Rationals need no context; the empty struct keeps the coefficient
    // interface uniform with RatFunc.
    struct Context {
        bool operator==(const Context &) const { return true; }
    };

    Rational() = default;
    Rational(long v) : value_(v) {}
    Rational(const Integer &v) : value_(v) {}
    Rational(const Integer &num, const Integer &den);
    explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

    static Rational zero(const Context & = {}) { return Rational(); }
    static Rational one(const Context & = {}) { return Rational(1); }
    static Rational from_integer(long v, const Context & = {}) { return Rational(v); }
    Context context() const { return {}; }

    // Accepts "p" or "p/q" with optional sign.
    static Rational parse(std::string_view text);

    Integer numerator() const { return value_.get_num(); }
    Integer denominator() const { return value_.get_den(); }
    const mpq_class &raw() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }
    double to_double() const { return value_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational &operator+=(const Rational &o) { value_ += o.value_; return *this; }
    Rational &operator-=(const Rational &o) { value_ -= o.value_; return *this; }
    Rational &operator*=(const Rational &o) { value_ *= o.value_; return *this; }
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    Rational inverse() const { return Rational(1) / *this; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    // "p" or "p/q".
    std::string str() const;
    // Formal derivative of a constant is zero; present for the coefficient interface.
    Rational derivative(std::size_t) const { return Rational(); }

private:
    mpq_class value_;
};

Rational pow(const Rational &base, unsigned exponent);
Integer binomial(unsigned n, unsigned k);

} // namespace dwork
