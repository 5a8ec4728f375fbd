#pragma once

#include "dwork/error.hpp"
#include "dwork/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

namespace dwork {

using Exponent = std::uint32_t;
using Monomial = std::vector<Exponent>;
using VarList = std::vector<std::string>;
using VarsPtr = std::shared_ptr<const VarList>;

// Validates identifier syntax and uniqueness.
VarsPtr make_vars(VarList names);
bool same_vars(const VarsPtr &a, const VarsPtr &b);
std::optional<std::size_t> var_index(const VarList &vars, const std::string &name);

std::size_t total_degree(const Monomial &m);
// Graded lexicographic comparison, first variable most significant.
int grlex_compare(const Monomial &a, const Monomial &b);
struct GrlexGreater {
    bool operator()(const Monomial &a, const Monomial &b) const { return grlex_compare(a, b) > 0; }
};
bool divides(const Monomial &a, const Monomial &b);
Monomial monomial_product(const Monomial &a, const Monomial &b);
Monomial monomial_quotient(const Monomial &a, const Monomial &b);
Monomial monomial_lcm(const Monomial &a, const Monomial &b);
// "x_1^2*x_2", or the empty string for the unit monomial.
std::string monomial_string(const Monomial &m, const VarList &vars);

// Sign and absolute-value text of a coefficient, used by the printers.
struct CoeffFormat {
    bool negative = false;
    bool is_one = false;
    std::string body;
};
CoeffFormat format_coefficient(const Rational &c);

// Sparse multivariate polynomial over a coefficient field C. Terms are kept
// sorted by descending graded-lex order with no zero coefficients.
template <class C>
class SparsePoly {
public:
    using Coeff = C;
    using Context = typename C::Context;
    struct Term {
        Monomial exponents;
        C coeff;
        friend bool operator==(const Term &, const Term &) = default;
    };

    SparsePoly() = default;
    explicit SparsePoly(VarsPtr vars, Context ctx = {}) : vars_(std::move(vars)), ctx_(std::move(ctx)) {}

    static SparsePoly constant(VarsPtr vars, Context ctx, const C &c) {
        SparsePoly p(std::move(vars), std::move(ctx));
        if (!c.is_zero()) {
            p.terms_.push_back({Monomial(p.vars_->size(), 0), c});
        }
        return p;
    }
    static SparsePoly monomial(VarsPtr vars, Context ctx, Monomial m, const C &c) {
        SparsePoly p(std::move(vars), std::move(ctx));
        if (m.size() != p.vars_->size()) {
            throw VariableMismatch("monomial length does not match variable list");
        }
        if (!c.is_zero()) {
            p.terms_.push_back({std::move(m), c});
        }
        return p;
    }
    static SparsePoly variable(VarsPtr vars, Context ctx, std::size_t index) {
        Monomial m(vars->size(), 0);
        m.at(index) = 1;
        C one = C::one(ctx);
        return monomial(std::move(vars), std::move(ctx), std::move(m), one);
    }
    static SparsePoly from_terms(VarsPtr vars, Context ctx, std::vector<Term> terms) {
        SparsePoly p(std::move(vars), std::move(ctx));
        std::map<Monomial, C, GrlexGreater> acc;
        for (auto &t : terms) {
            if (t.exponents.size() != p.vars_->size()) {
                throw VariableMismatch("monomial length does not match variable list");
            }
            auto it = acc.find(t.exponents);
            if (it == acc.end()) {
                acc.emplace(std::move(t.exponents), std::move(t.coeff));
            } else {
                it->second += t.coeff;
            }
        }
        p.assign_from(acc);
        return p;
    }

    const VarsPtr &vars() const { return vars_; }
    const Context &context() const { return ctx_; }
    std::size_t nvars() const { return vars_->size(); }
    const std::vector<Term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && dwork::total_degree(terms_[0].exponents) == 0); }
    const Term &leading() const { return terms_.front(); }

    C constant_term() const {
        if (!terms_.empty() && dwork::total_degree(terms_.back().exponents) == 0) {
            return terms_.back().coeff;
        }
        return C::zero(ctx_);
    }
    C coefficient(const Monomial &m) const {
        for (const auto &t : terms_) {
            if (t.exponents == m) {
                return t.coeff;
            }
        }
        return C::zero(ctx_);
    }
    std::size_t total_degree() const {
        std::size_t d = 0;
        for (const auto &t : terms_) {
            d = std::max(d, dwork::total_degree(t.exponents));
        }
        return d;
    }
    Exponent degree_in(std::size_t var) const {
        Exponent d = 0;
        for (const auto &t : terms_) {
            d = std::max(d, t.exponents.at(var));
        }
        return d;
    }

    SparsePoly zero_like() const { return SparsePoly(vars_, ctx_); }
    SparsePoly constant_like(const C &c) const { return constant(vars_, ctx_, c); }

    void check_compatible(const SparsePoly &o) const {
        if (!same_vars(vars_, o.vars_) || !(ctx_ == o.ctx_)) {
            throw VariableMismatch("polynomials over different variable lists or fields");
        }
    }

    SparsePoly operator-() const {
        SparsePoly r = *this;
        for (auto &t : r.terms_) {
            t.coeff = -t.coeff;
        }
        return r;
    }

    friend SparsePoly operator+(const SparsePoly &a, const SparsePoly &b) { return a.merge(b, false); }
    friend SparsePoly operator-(const SparsePoly &a, const SparsePoly &b) { return a.merge(b, true); }
    SparsePoly &operator+=(const SparsePoly &o) { return *this = merge(o, false); }
    SparsePoly &operator-=(const SparsePoly &o) { return *this = merge(o, true); }

    friend SparsePoly operator*(const SparsePoly &a, const SparsePoly &b) {
        a.check_compatible(b);
        SparsePoly r(a.vars_, a.ctx_);
        if (a.is_zero() || b.is_zero()) {
            return r;
        }
        if (b.is_constant()) {
            return a * b.terms_[0].coeff;
        }
        if (a.is_constant()) {
            return b * a.terms_[0].coeff;
        }
        std::map<Monomial, C, GrlexGreater> acc;
        for (const auto &s : a.terms_) {
            for (const auto &t : b.terms_) {
                Monomial m = monomial_product(s.exponents, t.exponents);
                C c = s.coeff * t.coeff;
                auto it = acc.find(m);
                if (it == acc.end()) {
                    acc.emplace(std::move(m), std::move(c));
                } else {
                    it->second += c;
                }
            }
        }
        r.assign_from(acc);
        return r;
    }
    SparsePoly &operator*=(const SparsePoly &o) { return *this = *this * o; }

    friend SparsePoly operator*(const SparsePoly &a, const C &c) {
        if (!(c.context() == a.ctx_)) {
            throw VariableMismatch("scalar from a different coefficient field");
        }
        SparsePoly r(a.vars_, a.ctx_);
        if (c.is_zero()) {
            return r;
        }
        r.terms_.reserve(a.terms_.size());
        for (const auto &t : a.terms_) {
            r.terms_.push_back({t.exponents, t.coeff * c});
        }
        return r;
    }
    friend SparsePoly operator*(const C &c, const SparsePoly &a) { return a * c; }

    // Multiplication by a single monomial term.
    SparsePoly shifted(const Monomial &m, const C &c) const {
        SparsePoly r(vars_, ctx_);
        if (c.is_zero()) {
            return r;
        }
        r.terms_.reserve(terms_.size());
        for (const auto &t : terms_) {
            r.terms_.push_back({monomial_product(t.exponents, m), t.coeff * c});
        }
        return r;
    }

    SparsePoly pow(unsigned n) const {
        SparsePoly result = constant_like(C::one(ctx_));
        SparsePoly b = *this;
        while (n != 0) {
            if (n & 1U) {
                result *= b;
            }
            n >>= 1U;
            if (n != 0) {
                b *= b;
            }
        }
        return result;
    }

    SparsePoly partial(std::size_t var) const {
        if (var >= nvars()) {
            throw PreconditionError("partial derivative: variable index out of range");
        }
        SparsePoly r(vars_, ctx_);
        for (const auto &t : terms_) {
            Exponent e = t.exponents[var];
            if (e == 0) {
                continue;
            }
            Monomial m = t.exponents;
            m[var] = e - 1;
            r.terms_.push_back({std::move(m), t.coeff * C::from_integer(static_cast<long>(e), ctx_)});
        }
        // Decrementing one exponent preserves relative grlex order only up to
        // ties; re-sort to stay canonical.
        r.normalize_order();
        return r;
    }
    SparsePoly partial(const std::string &name) const {
        auto idx = var_index(*vars_, name);
        if (!idx) {
            throw PreconditionError("unknown variable '" + name + "'");
        }
        return partial(*idx);
    }

    // Applies f to every coefficient; the result lives over ctx.
    template <class F>
    auto map_coefficients(const typename std::invoke_result_t<F, const C &>::Context &ctx, F &&f) const {
        using D = std::invoke_result_t<F, const C &>;
        std::vector<typename SparsePoly<D>::Term> out;
        out.reserve(terms_.size());
        for (const auto &t : terms_) {
            D d = f(t.coeff);
            if (!d.is_zero()) {
                out.push_back({t.exponents, std::move(d)});
            }
        }
        return SparsePoly<D>::from_sorted_terms(vars_, ctx, std::move(out));
    }

    // Terms already in canonical order with nonzero coefficients.
    static SparsePoly from_sorted_terms(VarsPtr vars, Context ctx, std::vector<Term> terms) {
        SparsePoly p(std::move(vars), std::move(ctx));
        p.terms_ = std::move(terms);
        return p;
    }

    friend bool operator==(const SparsePoly &a, const SparsePoly &b) {
        return same_vars(a.vars_, b.vars_) && a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) {
            return "0";
        }
        std::string out;
        bool first = true;
        for (const auto &t : terms_) {
            CoeffFormat cf = format_coefficient(t.coeff);
            std::string mono = monomial_string(t.exponents, *vars_);
            std::string body;
            if (mono.empty()) {
                body = cf.body;
            } else if (cf.is_one) {
                body = mono;
            } else {
                body = cf.body + "*" + mono;
            }
            if (first) {
                out += cf.negative ? "-" + body : body;
            } else {
                out += cf.negative ? " - " + body : " + " + body;
            }
            first = false;
        }
        return out;
    }

private:
    template <class>
    friend class SparsePoly;

    SparsePoly merge(const SparsePoly &o, bool subtract) const {
        check_compatible(o);
        SparsePoly r(vars_, ctx_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            int c;
            if (i == terms_.size()) {
                c = -1;
            } else if (j == o.terms_.size()) {
                c = 1;
            } else {
                c = grlex_compare(terms_[i].exponents, o.terms_[j].exponents);
            }
            if (c > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c < 0) {
                const auto &t = o.terms_[j++];
                r.terms_.push_back({t.exponents, subtract ? -t.coeff : t.coeff});
            } else {
                C sum = subtract ? terms_[i].coeff - o.terms_[j].coeff : terms_[i].coeff + o.terms_[j].coeff;
                if (!sum.is_zero()) {
                    r.terms_.push_back({terms_[i].exponents, std::move(sum)});
                }
                ++i;
                ++j;
            }
        }
        return r;
    }

    void assign_from(std::map<Monomial, C, GrlexGreater> &acc) {
        terms_.clear();
        terms_.reserve(acc.size());
        for (auto &[m, c] : acc) {
            if (!c.is_zero()) {
                terms_.push_back({m, std::move(c)});
            }
        }
    }

    void normalize_order() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term &a, const Term &b) { return grlex_compare(a.exponents, b.exponents) > 0; });
    }

    VarsPtr vars_;
    Context ctx_;
    std::vector<Term> terms_;
};

using QPoly = SparsePoly<Rational>;

// Exact quotient a / b; throws when b does not divide a.
template <class C>
SparsePoly<C> divide_exact(const SparsePoly<C> &a, const SparsePoly<C> &b) {
    a.check_compatible(b);
    if (b.is_zero()) {
        throw PreconditionError("division by the zero polynomial");
    }
    std::vector<typename SparsePoly<C>::Term> quotient;
    SparsePoly<C> rem = a;
    const auto &lead = b.leading();
    while (!rem.is_zero()) {
        const auto &rt = rem.leading();
        if (!divides(lead.exponents, rt.exponents)) {
            throw PreconditionError("inexact polynomial division");
        }
        Monomial m = monomial_quotient(rt.exponents, lead.exponents);
        C c = rt.coeff / lead.coeff;
        rem -= b.shifted(m, c);
        quotient.push_back({std::move(m), std::move(c)});
    }
    return SparsePoly<C>::from_sorted_terms(a.vars(), a.context(), std::move(quotient));
}

// Re-expresses p over `target`, matching variables by name. Variables of p
// missing from target are allowed only when they never occur.
template <class C>
SparsePoly<C> embed(const SparsePoly<C> &p, const VarsPtr &target) {
    if (same_vars(p.vars(), target)) {
        return p;
    }
    std::vector<std::optional<std::size_t>> map;
    for (const auto &name : *p.vars()) {
        map.push_back(var_index(*target, name));
    }
    std::vector<typename SparsePoly<C>::Term> out;
    out.reserve(p.size());
    for (const auto &t : p.terms()) {
        Monomial m(target->size(), 0);
        for (std::size_t i = 0; i < t.exponents.size(); ++i) {
            if (t.exponents[i] == 0) {
                continue;
            }
            if (!map[i]) {
                throw VariableMismatch("variable '" + (*p.vars())[i] + "' is not in the target ring");
            }
            m[*map[i]] = t.exponents[i];
        }
        out.push_back({std::move(m), t.coeff});
    }
    return SparsePoly<C>::from_terms(target, p.context(), std::move(out));
}

// Scales so the leading coefficient is one.
template <class C>
SparsePoly<C> make_monic(const SparsePoly<C> &p) {
    if (p.is_zero() || p.leading().coeff.is_one()) {
        return p;
    }
    return p * p.leading().coeff.inverse();
}

} // namespace dwork
