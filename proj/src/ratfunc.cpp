#include "dwork/ratfunc.hpp"

#include <cmath>
#include <map>

namespace dwork {

namespace {

std::optional<std::size_t> first_active_var(const QPoly &a, const QPoly &b) {
    for (std::size_t v = 0; v < a.nvars(); ++v) {
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) {
            return v;
        }
    }
    return std::nullopt;
}

bool only_var(const QPoly &p, std::size_t v) {
    for (const auto &t : p.terms()) {
        for (std::size_t i = 0; i < t.exponents.size(); ++i) {
            if (i != v && t.exponents[i] != 0) {
                return false;
            }
        }
    }
    return true;
}

// Coefficients of p as a polynomial in variable v (v-exponent zeroed).
std::map<Exponent, QPoly> coefficients_in(const QPoly &p, std::size_t v) {
    std::map<Exponent, std::vector<QPoly::Term>> grouped;
    for (const auto &t : p.terms()) {
        Monomial m = t.exponents;
        Exponent e = m[v];
        m[v] = 0;
        grouped[e].push_back({std::move(m), t.coeff});
    }
    std::map<Exponent, QPoly> out;
    for (auto &[e, terms] : grouped) {
        // Terms sharing e keep their relative grlex order.
        out.emplace(e, QPoly::from_sorted_terms(p.vars(), {}, std::move(terms)));
    }
    return out;
}

QPoly leading_coefficient_in(const QPoly &p, std::size_t v) {
    return coefficients_in(p, v).rbegin()->second;
}

QPoly power_of_var(const QPoly &like, std::size_t v, Exponent e) {
    Monomial m(like.nvars(), 0);
    m[v] = e;
    return QPoly::monomial(like.vars(), {}, std::move(m), Rational(1));
}

QPoly content_in(const QPoly &p, std::size_t v) {
    QPoly g = p.zero_like();
    for (const auto &[e, c] : coefficients_in(p, v)) {
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero()) {
            break;
        }
    }
    return g;
}

QPoly primitive_part_in(const QPoly &p, std::size_t v) {
    if (p.is_zero()) {
        return p;
    }
    QPoly c = content_in(p, v);
    return make_monic(c.is_constant() ? p : divide_exact(p, c));
}

QPoly pseudo_remainder(const QPoly &a, const QPoly &b, std::size_t v) {
    Exponent n = b.degree_in(v);
    QPoly lcb = leading_coefficient_in(b, v);
    QPoly r = a;
    while (!r.is_zero() && r.degree_in(v) >= n) {
        Exponent d = r.degree_in(v) - n;
        QPoly lcr = leading_coefficient_in(r, v);
        r = lcb * r - lcr * b * power_of_var(b, v, d);
    }
    return r;
}

QPoly univariate_gcd(QPoly a, QPoly b) {
    // Euclid over Q with monic remainders.
    while (!b.is_zero()) {
        QPoly r = a;
        const auto &lb = b.leading();
        while (!r.is_zero() && divides(lb.exponents, r.leading().exponents)) {
            const auto &lr = r.leading();
            r -= b.shifted(monomial_quotient(lr.exponents, lb.exponents), lr.coeff / lb.coeff);
        }
        a = std::move(b);
        b = make_monic(r);
    }
    return make_monic(a);
}

} // namespace

QPoly gcd(const QPoly &a, const QPoly &b) {
    a.check_compatible(b);
    if (a.is_zero()) {
        return make_monic(b);
    }
    if (b.is_zero()) {
        return make_monic(a);
    }
    if (a.is_constant() || b.is_constant()) {
        return a.constant_like(Rational(1));
    }
    if (a == b) {
        return make_monic(a);
    }
    auto var = first_active_var(a, b);
    std::size_t v = *var;
    if (only_var(a, v) && only_var(b, v)) {
        return univariate_gcd(a, b);
    }
    if (a.degree_in(v) == 0) {
        return gcd(a, content_in(b, v));
    }
    if (b.degree_in(v) == 0) {
        return gcd(content_in(a, v), b);
    }
    QPoly ca = content_in(a, v);
    QPoly cb = content_in(b, v);
    QPoly c = gcd(ca, cb);
    QPoly pa = make_monic(ca.is_constant() ? a : divide_exact(a, ca));
    QPoly pb = make_monic(cb.is_constant() ? b : divide_exact(b, cb));
    if (pa.degree_in(v) < pb.degree_in(v)) {
        std::swap(pa, pb);
    }
    while (!pb.is_zero()) {
        QPoly r = pseudo_remainder(pa, pb, v);
        pa = std::move(pb);
        pb = primitive_part_in(r, v);
    }
    QPoly g = primitive_part_in(pa, v);
    return make_monic(c * g);
}

double evaluate(const QPoly &p, const std::vector<double> &point) {
    if (point.size() != p.nvars()) {
        throw VariableMismatch("evaluation point has the wrong dimension");
    }
    double acc = 0.0;
    for (const auto &t : p.terms()) {
        double term = t.coeff.to_double();
        for (std::size_t i = 0; i < point.size(); ++i) {
            if (t.exponents[i] != 0) {
                term *= std::pow(point[i], static_cast<double>(t.exponents[i]));
            }
        }
        acc += term;
    }
    return acc;
}

RatFunc::RatFunc(QPoly num) : num_(std::move(num)), den_(QPoly::constant(num_.vars(), {}, Rational(1))) {}

RatFunc::RatFunc(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    num_.check_compatible(den_);
    normalize();
}

void RatFunc::normalize() {
    if (den_.is_zero()) {
        throw PreconditionError("rational function with zero denominator");
    }
    if (num_.is_zero()) {
        den_ = num_.constant_like(Rational(1));
        return;
    }
    if (!den_.is_constant()) {
        QPoly g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = divide_exact(num_, g);
            den_ = divide_exact(den_, g);
        }
    }
    Rational lc = den_.leading().coeff;
    if (!lc.is_one()) {
        Rational inv = lc.inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RatFunc RatFunc::zero(const Context &ctx) { return RatFunc(QPoly(ctx.vars)); }
RatFunc RatFunc::one(const Context &ctx) { return from_rational(Rational(1), ctx); }
RatFunc RatFunc::from_integer(long v, const Context &ctx) { return from_rational(Rational(v), ctx); }
RatFunc RatFunc::from_rational(const Rational &v, const Context &ctx) {
    return RatFunc(QPoly::constant(ctx.vars, {}, v));
}
RatFunc RatFunc::variable(const Context &ctx, std::size_t index) { return RatFunc(QPoly::variable(ctx.vars, {}, index)); }

bool RatFunc::is_one() const {
    return num_.is_constant() && !num_.is_zero() && num_.leading().coeff.is_one() && den_.is_constant();
}

Rational RatFunc::constant_value() const {
    if (!is_constant()) {
        throw PreconditionError("rational function is not constant");
    }
    if (num_.is_zero()) {
        return Rational();
    }
    return num_.leading().coeff / den_.leading().coeff;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc &a, const RatFunc &b) {
    if (a.is_zero()) {
        b.num_.check_compatible(a.num_);
        return b;
    }
    if (b.is_zero()) {
        a.num_.check_compatible(b.num_);
        return a;
    }
    RatFunc r;
    if (a.den_ == b.den_) {
        r.num_ = a.num_ + b.num_;
        r.den_ = a.den_;
        if (r.den_.is_constant()) {
            return r;
        }
        r.normalize();
        return r;
    }
    QPoly g = gcd(a.den_, b.den_);
    QPoly ad = g.is_constant() ? a.den_ : divide_exact(a.den_, g);
    QPoly bd = g.is_constant() ? b.den_ : divide_exact(b.den_, g);
    r.num_ = a.num_ * bd + b.num_ * ad;
    r.den_ = a.den_ * bd;
    r.normalize();
    return r;
}

RatFunc operator-(const RatFunc &a, const RatFunc &b) { return a + (-b); }

RatFunc operator*(const RatFunc &a, const RatFunc &b) {
    a.num_.check_compatible(b.num_);
    if (a.is_zero()) {
        return a;
    }
    if (b.is_zero()) {
        return b;
    }
    RatFunc r;
    if (a.den_.is_constant() && b.den_.is_constant()) {
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_;
        return r;
    }
    QPoly g1 = gcd(a.num_, b.den_);
    QPoly g2 = gcd(b.num_, a.den_);
    QPoly an = g1.is_constant() ? a.num_ : divide_exact(a.num_, g1);
    QPoly bd = g1.is_constant() ? b.den_ : divide_exact(b.den_, g1);
    QPoly bn = g2.is_constant() ? b.num_ : divide_exact(b.num_, g2);
    QPoly ad = g2.is_constant() ? a.den_ : divide_exact(a.den_, g2);
    r.num_ = an * bn;
    r.den_ = ad * bd;
    Rational lc = r.den_.leading().coeff;
    if (!lc.is_one()) {
        Rational inv = lc.inverse();
        r.num_ = r.num_ * inv;
        r.den_ = r.den_ * inv;
    }
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) {
        throw PreconditionError("inverse of zero rational function");
    }
    return RatFunc(den_, num_);
}

RatFunc operator/(const RatFunc &a, const RatFunc &b) { return a * b.inverse(); }

RatFunc RatFunc::pow(unsigned n) const {
    RatFunc r = one(context());
    for (unsigned i = 0; i < n; ++i) {
        r *= *this;
    }
    return r;
}

RatFunc RatFunc::derivative(std::size_t index) const {
    if (index >= num_.nvars()) {
        throw PreconditionError("unknown parameter index");
    }
    QPoly dn = num_.partial(index);
    if (den_.is_constant()) {
        RatFunc r;
        r.num_ = dn;
        r.den_ = den_;
        return r;
    }
    QPoly dd = den_.partial(index);
    return RatFunc(dn * den_ - num_ * dd, den_ * den_);
}

double RatFunc::evaluate(const std::vector<double> &point) const {
    return dwork::evaluate(num_, point) / dwork::evaluate(den_, point);
}

std::string RatFunc::str() const {
    if (den_.is_constant()) {
        return num_.str();
    }
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

CoeffFormat format_coefficient(const RatFunc &c) {
    CoeffFormat f;
    if (c.den().is_constant() && c.num().size() == 1) {
        const auto &t = c.num().leading();
        f.negative = t.coeff.sign() < 0;
        Rational a = f.negative ? -t.coeff : t.coeff;
        std::string mono = monomial_string(t.exponents, *c.num().vars());
        if (mono.empty()) {
            f.is_one = a.is_one();
            f.body = a.str();
        } else {
            f.body = a.is_one() ? mono : a.str() + "*" + mono;
        }
        return f;
    }
    if (c.den().is_constant()) {
        f.body = "(" + c.str() + ")";
    } else {
        f.body = c.str();
    }
    return f;
}

MultiPoly coeff_derivation(const MultiPoly &p, std::size_t param_index) {
    std::vector<MultiPoly::Term> out;
    for (const auto &t : p.terms()) {
        RatFunc d = t.coeff.derivative(param_index);
        if (!d.is_zero()) {
            out.push_back({t.exponents, std::move(d)});
        }
    }
    return MultiPoly::from_sorted_terms(p.vars(), p.context(), std::move(out));
}

MultiPoly coeff_derivation(const MultiPoly &p, const std::string &param) {
    auto idx = var_index(*p.context().vars, param);
    if (!idx) {
        throw PreconditionError("unknown parameter '" + param + "'");
    }
    return coeff_derivation(p, *idx);
}

MultiPoly multipoly_constant(VarsPtr vars, const ParamContext &ctx, const RatFunc &c) {
    return MultiPoly::constant(std::move(vars), ctx, c);
}

MultiPoly multipoly_variable(VarsPtr vars, const ParamContext &ctx, std::size_t index) {
    return MultiPoly::variable(std::move(vars), ctx, index);
}

} // namespace dwork
