#pragma once

#include "dwork/poly.hpp"

#include <string>
#include <vector>

namespace dwork {

// Monic gcd over Q (recursive primitive remainder sequence); gcd(0, 0) = 0.
QPoly gcd(const QPoly &a, const QPoly &b);

// Evaluates p at the given values, mapping coefficients with `lift`.
template <class C, class T, class F>
T substitute(const SparsePoly<C> &p, const std::vector<T> &values, const T &zero, F &&lift) {
    if (values.size() != p.nvars()) {
        throw VariableMismatch("substitution needs one value per variable");
    }
    std::vector<std::vector<T>> powers(values.size());
    auto power = [&](std::size_t var, Exponent e) -> const T & {
        auto &cache = powers[var];
        if (cache.empty()) {
            cache.push_back(zero + lift(C::one(p.context())));
        }
        while (cache.size() <= e) {
            cache.push_back(cache.back() * values[var]);
        }
        return cache[e];
    };
    T acc = zero;
    for (const auto &t : p.terms()) {
        T term = zero + lift(t.coeff);
        for (std::size_t i = 0; i < t.exponents.size(); ++i) {
            if (t.exponents[i] != 0) {
                term = term * power(i, t.exponents[i]);
            }
        }
        acc = acc + term;
    }
    return acc;
}

struct ParamContext {
    VarsPtr vars;
    bool operator==(const ParamContext &o) const { return same_vars(vars, o.vars); }
};

// Element of Q(params): reduced fraction with monic denominator.
class RatFunc {
public:
    using Context = ParamContext;

    RatFunc() = default;
    explicit RatFunc(QPoly num);
    RatFunc(QPoly num, QPoly den);

    static RatFunc zero(const Context &ctx);
    static RatFunc one(const Context &ctx);
    static RatFunc from_integer(long v, const Context &ctx);
    static RatFunc from_rational(const Rational &v, const Context &ctx);
    static RatFunc variable(const Context &ctx, std::size_t index);

    Context context() const { return {num_.vars()}; }
    const QPoly &num() const { return num_; }
    const QPoly &den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    // Requires is_constant().
    Rational constant_value() const;

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc &a, const RatFunc &b);
    friend RatFunc operator-(const RatFunc &a, const RatFunc &b);
    friend RatFunc operator*(const RatFunc &a, const RatFunc &b);
    friend RatFunc operator/(const RatFunc &a, const RatFunc &b);
    RatFunc &operator+=(const RatFunc &o) { return *this = *this + o; }
    RatFunc &operator-=(const RatFunc &o) { return *this = *this - o; }
    RatFunc &operator*=(const RatFunc &o) { return *this = *this * o; }
    RatFunc &operator/=(const RatFunc &o) { return *this = *this / o; }
    RatFunc inverse() const;
    RatFunc pow(unsigned n) const;

    friend bool operator==(const RatFunc &a, const RatFunc &b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    // Partial derivative with respect to the parameter at `index`.
    RatFunc derivative(std::size_t index) const;
    double evaluate(const std::vector<double> &point) const;

    // "num" or "(num)/(den)".
    std::string str() const;

private:
    void normalize();

    QPoly num_;
    QPoly den_;
};

CoeffFormat format_coefficient(const RatFunc &c);
double evaluate(const QPoly &p, const std::vector<double> &point);

// Polynomial with coefficients in a rational function field: the carrier for
// f_j, F, elements of C and coefficients of differential operators.
using MultiPoly = SparsePoly<RatFunc>;

// Coefficientwise derivative with respect to a parameter.
MultiPoly coeff_derivation(const MultiPoly &p, std::size_t param_index);
MultiPoly coeff_derivation(const MultiPoly &p, const std::string &param);

MultiPoly multipoly_constant(VarsPtr vars, const ParamContext &ctx, const RatFunc &c);
MultiPoly multipoly_variable(VarsPtr vars, const ParamContext &ctx, std::size_t index);

} // namespace dwork
