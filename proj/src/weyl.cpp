#include "dwork/weyl.hpp"

#include "dwork/parse.hpp"

#include <functional>

namespace dwork {

WeylOp::WeylOp(VarsPtr base_vars, VarsPtr coeff_vars, ParamContext ctx)
    : base_(std::move(base_vars)), coeff_vars_(std::move(coeff_vars)), ctx_(std::move(ctx)) {
    init_actions();
}

void WeylOp::init_actions() {
    actions_.clear();
    for (const auto &name : *base_) {
        if (auto i = var_index(*coeff_vars_, name)) {
            actions_.emplace_back(Action::PolyVar, *i);
        } else if (auto p = var_index(*ctx_.vars, name)) {
            actions_.emplace_back(Action::Param, *p);
        } else {
            actions_.emplace_back(Action::None, 0);
        }
    }
}

WeylOp WeylOp::scalar(VarsPtr base_vars, const MultiPoly &c) {
    return monomial(base_vars, Monomial(base_vars->size(), 0), c);
}

WeylOp WeylOp::monomial(VarsPtr base_vars, Monomial exponents, const MultiPoly &c) {
    WeylOp op(std::move(base_vars), c.vars(), c.context());
    if (exponents.size() != op.base_->size()) {
        throw VariableMismatch("derivative exponent length does not match base variables");
    }
    op.add_term(exponents, c);
    return op;
}

WeylOp WeylOp::derivative(VarsPtr base_vars, VarsPtr coeff_vars, ParamContext ctx, std::size_t k, Exponent e) {
    WeylOp op(std::move(base_vars), std::move(coeff_vars), std::move(ctx));
    if (k >= op.base_->size()) {
        throw PreconditionError("derivative index out of range");
    }
    Monomial m(op.base_->size(), 0);
    m[k] = e;
    op.add_term(m, op.one_coefficient());
    return op;
}

MultiPoly WeylOp::one_coefficient() const { return MultiPoly::constant(coeff_vars_, ctx_, RatFunc::one(ctx_)); }

std::size_t WeylOp::order() const {
    std::size_t d = 0;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, total_degree(m));
    }
    return d;
}

MultiPoly WeylOp::coefficient(const Monomial &exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? zero_coefficient() : it->second;
}

MultiPoly WeylOp::derive(const MultiPoly &c, std::size_t k) const {
    switch (actions_.at(k).first) {
    case Action::PolyVar:
        return c.partial(actions_[k].second);
    case Action::Param:
        return coeff_derivation(c, actions_[k].second);
    case Action::None:
        break;
    }
    return c.zero_like();
}

void WeylOp::add_term(const Monomial &m, const MultiPoly &c) {
    if (c.is_zero()) {
        return;
    }
    if (!same_vars(c.vars(), coeff_vars_) || !(c.context() == ctx_)) {
        throw VariableMismatch("operator coefficient over a different ring");
    }
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) {
        terms_.erase(it);
    }
}

void WeylOp::check_compatible(const WeylOp &o) const {
    if (!same_vars(base_, o.base_) || !same_vars(coeff_vars_, o.coeff_vars_) || !(ctx_ == o.ctx_)) {
        throw VariableMismatch("operators over different variable declarations");
    }
}

WeylOp WeylOp::operator-() const {
    WeylOp r = *this;
    for (auto &[m, c] : r.terms_) {
        c = -c;
    }
    return r;
}

WeylOp operator+(const WeylOp &a, const WeylOp &b) {
    a.check_compatible(b);
    WeylOp r = a;
    for (const auto &[m, c] : b.terms_) {
        r.add_term(m, c);
    }
    return r;
}

WeylOp operator-(const WeylOp &a, const WeylOp &b) { return a + (-b); }

WeylOp operator*(const WeylOp &a, const WeylOp &b) {
    a.check_compatible(b);
    WeylOp r = a.zero_like();
    const std::size_t n = a.base_->size();
    for (const auto &[alpha, ca] : a.terms_) {
        for (const auto &[beta, cb] : b.terms_) {
            // sum over gamma <= alpha of C(alpha, gamma) d^gamma(cb) d^(alpha - gamma + beta)
            Monomial gamma(n, 0);
            std::function<void(std::size_t, const MultiPoly &, const Integer &)> walk =
                [&](std::size_t k, const MultiPoly &db, const Integer &binom) {
                    if (db.is_zero()) {
                        return;
                    }
                    if (k == n) {
                        Monomial m(n);
                        for (std::size_t i = 0; i < n; ++i) {
                            m[i] = alpha[i] - gamma[i] + beta[i];
                        }
                        RatFunc scale = RatFunc::from_rational(Rational(binom), a.ctx_);
                        r.add_term(m, (ca * db) * scale);
                        return;
                    }
                    MultiPoly cur = db;
                    for (Exponent g = 0; g <= alpha[k]; ++g) {
                        gamma[k] = g;
                        walk(k + 1, cur, binom * binomial(alpha[k], g));
                        if (g < alpha[k]) {
                            cur = a.derive(cur, k);
                            if (cur.is_zero()) {
                                break;
                            }
                        }
                    }
                    gamma[k] = 0;
                };
            walk(0, cb, Integer(1));
        }
    }
    return r;
}

WeylOp operator*(const MultiPoly &c, const WeylOp &a) {
    WeylOp r = a.zero_like();
    for (const auto &[m, t] : a.terms_) {
        r.add_term(m, c * t);
    }
    return r;
}

WeylOp operator*(const RatFunc &c, const WeylOp &a) {
    WeylOp r = a.zero_like();
    for (const auto &[m, t] : a.terms_) {
        r.add_term(m, t * c);
    }
    return r;
}

bool operator==(const WeylOp &a, const WeylOp &b) {
    return same_vars(a.base_, b.base_) && same_vars(a.coeff_vars_, b.coeff_vars_) && a.ctx_ == b.ctx_ &&
           a.terms_ == b.terms_;
}

MultiPoly WeylOp::apply(const MultiPoly &g) const {
    if (!same_vars(g.vars(), coeff_vars_) || !(g.context() == ctx_)) {
        throw VariableMismatch("operator applied to a polynomial over a different ring");
    }
    MultiPoly acc = zero_coefficient();
    for (const auto &[m, c] : terms_) {
        MultiPoly d = g;
        for (std::size_t k = 0; k < m.size() && !d.is_zero(); ++k) {
            for (Exponent e = 0; e < m[k] && !d.is_zero(); ++e) {
                d = derive(d, k);
            }
        }
        if (!d.is_zero()) {
            acc += c * d;
        }
    }
    return acc;
}

std::string derivative_symbol(const std::string &var) { return "d_" + var; }

std::string WeylOp::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        std::string mono;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += derivative_symbol((*base_)[k]);
            if (m[k] > 1) {
                mono += "^" + std::to_string(m[k]);
            }
        }
        bool negative = false;
        std::string body;
        if (c.size() == 1) {
            CoeffFormat cf = format_coefficient(c.leading().coeff);
            negative = cf.negative;
            MultiPoly abs = negative ? -c : c;
            std::string cs = abs.str();
            if (mono.empty()) {
                body = cs;
            } else if (cs == "1") {
                body = mono;
            } else {
                // A single term is a product, so juxtaposition is unambiguous.
                body = cs + "*" + mono;
            }
        } else {
            body = mono.empty() ? c.str() : "(" + c.str() + ")*" + mono;
            if (mono.empty() && !first) {
                body = "(" + body + ")";
            }
        }
        if (first) {
            out = negative ? "-" + body : body;
        } else {
            out += negative ? " - " + body : " + " + body;
        }
        first = false;
    }
    return out;
}

std::vector<WeylOp::SerialTerm> WeylOp::serialize() const {
    std::vector<SerialTerm> out;
    for (const auto &[m, c] : terms_) {
        out.push_back({c.str(), std::vector<Exponent>(m.begin(), m.end())});
    }
    return out;
}

WeylOp WeylOp::deserialize(VarsPtr base_vars, VarsPtr coeff_vars, ParamContext ctx,
                           const std::vector<SerialTerm> &terms) {
    WeylOp op(std::move(base_vars), std::move(coeff_vars), std::move(ctx));
    for (const auto &t : terms) {
        if (t.exponents.size() != op.base_->size()) {
            throw ParseError("serialized operator term has the wrong exponent length");
        }
        op.add_term(Monomial(t.exponents.begin(), t.exponents.end()), parse_poly(t.coefficient, op.coeff_vars_, op.ctx_));
    }
    return op;
}

WeylOp weyl_product(const WeylOp &p, const WeylOp &q) { return p * q; }

MultiPoly weyl_apply(const WeylOp &p, const MultiPoly &g) { return p.apply(g); }

WeylOp commutator(const WeylOp &p, const WeylOp &q) { return p * q - q * p; }

TwistData make_twist(const VarList &x_names, const VarList &y_names, const ParamContext &params,
                     const std::vector<MultiPoly> &f) {
    if (f.empty()) {
        throw PreconditionError("at least one equation is required");
    }
    if (f.size() != y_names.size()) {
        throw PreconditionError("one y variable per equation is required");
    }
    TwistData td;
    td.x_vars = make_vars(x_names);
    td.y_vars = make_vars(y_names);
    td.params = params;
    VarList poly = x_names;
    poly.insert(poly.end(), y_names.begin(), y_names.end());
    td.poly_vars = make_vars(poly);
    VarList base = poly;
    base.insert(base.end(), params.vars->begin(), params.vars->end());
    td.base_vars = make_vars(base);
    td.F = MultiPoly(td.poly_vars, params);
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (!(f[j].context() == params)) {
            throw VariableMismatch("equation over a different parameter field");
        }
        if (f[j].is_zero()) {
            throw PreconditionError("zero polynomial among the equations");
        }
        MultiPoly fj = embed(f[j], td.x_vars);
        td.f.push_back(embed(fj, td.poly_vars));
        td.F += td.f.back() * MultiPoly::variable(td.poly_vars, params, x_names.size() + j);
    }
    return td;
}

WeylOp twist_operator(const MultiPoly &F, const VarsPtr &base_vars, std::size_t k) {
    WeylOp d = WeylOp::derivative(base_vars, F.vars(), F.context(), k);
    return d + WeylOp::scalar(base_vars, d.derive(F, k));
}

WeylOp twist_x(const TwistData &td, std::size_t i) {
    if (i >= td.N()) {
        throw PreconditionError("x index out of range");
    }
    return twist_operator(td.F, td.base_vars, i);
}

WeylOp twist_y(const TwistData &td, std::size_t j) {
    if (j >= td.r()) {
        throw PreconditionError("y index out of range");
    }
    return twist_operator(td.F, td.base_vars, td.N() + j);
}

WeylOp gauss_manin_lift(const TwistData &td, std::size_t param) {
    if (param >= td.params.vars->size()) {
        throw PreconditionError("unknown derivation");
    }
    return twist_operator(td.F, td.base_vars, td.N() + td.r() + param);
}

WeylOp gauss_manin_lift(const TwistData &td, const std::string &param) {
    auto p = var_index(*td.params.vars, param);
    if (!p) {
        throw PreconditionError("unknown derivation d/d" + param);
    }
    return gauss_manin_lift(td, *p);
}

} // namespace dwork
