#include "dwork/pullback.hpp"

#include "dwork/cohomology.hpp"

#include <algorithm>
#include <functional>

namespace dwork {

namespace {

void enumerate_monomials(std::size_t nvars, unsigned max_degree, const std::function<void(const Monomial &)> &emit) {
    Monomial m(nvars, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t k, unsigned left) {
        if (k == nvars) {
            emit(m);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            m[k] = e;
            rec(k + 1, left - e);
        }
        m[k] = 0;
    };
    rec(0, max_degree);
}

VarsPtr no_vars() {
    static const VarsPtr none = make_vars({});
    return none;
}

RatFunc lift_constant(const RatFunc &c, const ParamContext &target) {
    if (!c.is_constant()) {
        throw PreconditionError("generic operator has non-constant scalar coefficients");
    }
    return RatFunc::from_rational(c.constant_value(), target);
}

std::size_t mu_degree(const WeylOp &op) {
    std::size_t d = 0;
    for (const auto &[m, c] : op.terms()) {
        d = std::max(d, c.total_degree());
    }
    return d;
}

} // namespace

Specialization specialization(const TwistData &td, const PointConfig &config) {
    Specialization s;
    s.config = config;
    s.params = td.params;
    for (const auto &pt : config.points) {
        Monomial m = pt.d;
        m.resize(td.N() + td.r(), 0);
        s.values.push_back(td.f.at(pt.j).coefficient(m));
    }
    for (std::size_t p = 0; p < td.params.vars->size(); ++p) {
        RatVector d;
        for (const auto &v : s.values) {
            d.push_back(v.derivative(p));
        }
        s.derivatives.push_back(std::move(d));
    }
    return s;
}

Specialization specialization(const TwistData &td) { return specialization(td, point_config(td)); }

StarOperator::StarOperator(VarsPtr mu_vars, ParamContext ctx) : mu_vars_(std::move(mu_vars)), ctx_(std::move(ctx)) {}

StarOperator StarOperator::unit(VarsPtr mu_vars, ParamContext ctx) {
    Monomial zero(mu_vars->size(), 0);
    RatFunc one = RatFunc::one(ctx);
    return monomial(std::move(mu_vars), std::move(ctx), std::move(zero), one);
}

StarOperator StarOperator::monomial(VarsPtr mu_vars, ParamContext ctx, Monomial exponents, const RatFunc &c) {
    StarOperator s(std::move(mu_vars), std::move(ctx));
    s.add(exponents, c);
    return s;
}

std::size_t StarOperator::order() const { return terms_.empty() ? 0 : total_degree(terms_.begin()->first); }

RatFunc StarOperator::coefficient(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? RatFunc::zero(ctx_) : it->second;
}

void StarOperator::add(const Monomial &m, const RatFunc &c) {
    if (c.is_zero()) {
        return;
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

StarOperator StarOperator::operator-() const {
    StarOperator out(mu_vars_, ctx_);
    for (const auto &[m, c] : terms_) {
        out.terms_.emplace(m, -c);
    }
    return out;
}

StarOperator operator+(const StarOperator &a, const StarOperator &b) {
    if (!a.mu_vars_) {
        return b;
    }
    if (b.mu_vars_ && (!same_vars(a.mu_vars_, b.mu_vars_) || !(a.ctx_ == b.ctx_))) {
        throw VariableMismatch("star operators over different variables");
    }
    StarOperator out = a;
    for (const auto &[m, c] : b.terms_) {
        out.add(m, c);
    }
    return out;
}

StarOperator operator-(const StarOperator &a, const StarOperator &b) { return a + (-b); }

StarOperator operator*(const RatFunc &c, const StarOperator &a) {
    StarOperator out(a.mu_vars_, a.ctx_);
    if (c.is_zero()) {
        return out;
    }
    for (const auto &[m, x] : a.terms_) {
        out.terms_.emplace(m, c * x);
    }
    return out;
}

bool operator==(const StarOperator &a, const StarOperator &b) {
    if (a.terms_.size() != b.terms_.size()) {
        return false;
    }
    return std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin());
}

std::string StarOperator::str() const {
    VarsPtr none = no_vars();
    WeylOp op(mu_vars_, none, ctx_);
    for (const auto &[m, c] : terms_) {
        op += WeylOp::monomial(mu_vars_, m, MultiPoly::constant(none, ctx_, c));
    }
    return op.str();
}

StarOperator star(const WeylOp &L, const Specialization &s) {
    const VarsPtr &mu = s.config.mu_vars;
    if (!same_vars(L.base_vars(), mu)) {
        throw VariableMismatch("operator is not over the configuration's mu variables");
    }
    StarOperator out(mu, s.params);
    RatFunc zero = RatFunc::zero(s.params);
    for (const auto &[m, c] : L.terms()) {
        RatFunc v = substitute(c, s.values, zero, [&](const RatFunc &x) { return lift_constant(x, s.params); });
        out.add(m, v);
    }
    return out;
}

StarOperator derivation_action(const StarOperator &e, const Specialization &s, std::size_t param) {
    if (param >= s.derivatives.size()) {
        throw PreconditionError("unknown derivation");
    }
    const RatVector &d = s.derivatives[param];
    StarOperator out(e.mu_vars(), e.context());
    for (const auto &[m, c] : e.terms()) {
        out.add(m, c.derivative(param));
        for (std::size_t k = 0; k < d.size(); ++k) {
            if (d[k].is_zero()) {
                continue;
            }
            Monomial shifted = m;
            ++shifted[k];
            out.add(shifted, c * d[k]);
        }
    }
    return out;
}

StarOperator rho(const WeylOp &P, const Specialization &s) {
    const VarList &names = *P.base_vars();
    std::vector<std::size_t> param_of;
    for (const auto &n : names) {
        auto p = var_index(*s.params.vars, n);
        if (!p) {
            throw PreconditionError("unknown derivation d/d" + n);
        }
        param_of.push_back(*p);
    }
    StarOperator out(s.config.mu_vars, s.params);
    StarOperator one = StarOperator::unit(s.config.mu_vars, s.params);
    for (const auto &[m, c] : P.terms()) {
        if (!c.is_constant()) {
            throw PreconditionError("operator coefficients must lie in R");
        }
        StarOperator cur = one;
        for (std::size_t k = 0; k < m.size(); ++k) {
            for (Exponent e = 0; e < m[k]; ++e) {
                cur = derivation_action(cur, s, param_of[k]);
            }
        }
        out += c.coefficient(Monomial(c.nvars(), 0)) * cur;
    }
    return out;
}

WeylOp r_operator(const Specialization &s, const Monomial &exponents, const RatFunc &c) {
    VarsPtr none = no_vars();
    return WeylOp::monomial(s.params.vars, exponents, MultiPoly::constant(none, s.params, c));
}

StarSpan::StarSpan(const std::vector<WeylOp> &gens, const Specialization &spec, unsigned mu_degree_bound,
                   unsigned del_order_bound)
    : spec_(spec), gens_(gens), mu_bound_(mu_degree_bound), del_bound_(del_order_bound), echelon_(spec.params) {
    const VarsPtr &mu = spec_.config.mu_vars;
    const std::size_t n = mu->size();
    std::size_t gen_order = 0;
    for (const auto &g : gens_) {
        if (mu_degree(g) > mu_bound_) {
            throw PreconditionError("generator exceeds the mu-degree bound: " + g.str());
        }
        gen_order = std::max(gen_order, g.order());
    }

    // Constant specializations rank first, then the parameter-dependent ones in reverse.
    std::vector<std::size_t> perm;
    for (std::size_t k = 0; k < n; ++k) {
        if (spec_.values[k].is_constant()) {
            perm.push_back(k);
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        if (!spec_.values[k].is_constant()) {
            perm.push_back(k);
        }
    }
    auto key = [&](const Monomial &m) {
        Monomial p;
        for (std::size_t k : perm) {
            p.push_back(m[k]);
        }
        return std::make_pair(total_degree(m), p);
    };
    enumerate_monomials(n, del_bound_ + static_cast<unsigned>(gen_order),
                        [&](const Monomial &m) { columns_.push_back(m); });
    std::sort(columns_.begin(), columns_.end(), [&](const Monomial &a, const Monomial &b) { return key(a) < key(b); });
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        index_.emplace(columns_[c], c);
    }

    std::vector<Monomial> betas;
    enumerate_monomials(n, del_bound_, [&](const Monomial &b) { betas.push_back(b); });
    std::sort(betas.begin(), betas.end(), [&](const Monomial &a, const Monomial &b) { return key(a) < key(b); });
    RatFunc one = RatFunc::one(spec_.params);
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        for (const auto &b : betas) {
            witnesses_.push_back({g, b});
            auto v = to_vector(element(witnesses_.size() - 1));
            echelon_.insert(std::move(*v), {{witnesses_.size() - 1, one}});
        }
    }
    echelon_.finalize();
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (total_degree(columns_[c]) <= del_bound_ && !echelon_.is_pivot(c)) {
            basis_.push_back(columns_[c]);
        }
    }
}

std::vector<std::string> StarSpan::basis_strings() const {
    std::vector<std::string> out;
    for (const auto &m : basis_) {
        out.push_back(StarOperator::monomial(spec_.config.mu_vars, spec_.params, m, RatFunc::one(spec_.params)).str());
    }
    return out;
}

std::optional<std::size_t> StarSpan::column_of(const Monomial &m) const {
    auto it = index_.find(m);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<SparseVec<RatFunc>> StarSpan::to_vector(const StarOperator &op) const {
    SparseVec<RatFunc> v;
    for (const auto &[m, c] : op.terms()) {
        auto col = column_of(m);
        if (!col) {
            return std::nullopt;
        }
        v.emplace_back(*col, c);
    }
    std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first > b.first; });
    return v;
}

StarOperator StarSpan::to_star(const SparseVec<RatFunc> &v) const {
    StarOperator out(spec_.config.mu_vars, spec_.params);
    for (const auto &[c, x] : v) {
        out.add(columns_.at(c), x);
    }
    return out;
}

StarOperator StarSpan::element(std::size_t k) const {
    const Witness &w = witnesses_.at(k);
    const WeylOp &g = gens_.at(w.generator);
    WeylOp d = WeylOp::monomial(g.base_vars(), w.beta, g.one_coefficient());
    return star(d * g, spec_);
}

StarOperator StarSpan::recombine(const SparseVec<RatFunc> &witness) const {
    StarOperator out(spec_.config.mu_vars, spec_.params);
    for (const auto &[k, c] : witness) {
        out += c * element(k);
    }
    return out;
}

StarSpan ideal_span(const std::vector<WeylOp> &gens, const Specialization &spec, unsigned mu_degree_bound,
                    unsigned del_order_bound) {
    return StarSpan(gens, spec, mu_degree_bound, del_order_bound);
}

Membership membership(const StarOperator &op, const StarSpan &span) {
    auto v = span.to_vector(op);
    if (!v) {
        throw PreconditionError("operator exceeds the span's order bound");
    }
    auto red = span.echelon().reduce(std::move(*v));
    Membership out;
    out.member = red.residue.empty();
    out.witness = std::move(red.combination);
    out.residue = span.to_star(red.residue);
    return out;
}

StarClass star_normal_form(const StarSpan &span, const StarOperator &op) {
    Membership m = membership(op, span);
    StarClass out;
    out.coords.assign(span.basis().size(), RatFunc::zero(span.spec().params));
    for (const auto &[mono, c] : m.residue.terms()) {
        auto it = std::find(span.basis().begin(), span.basis().end(), mono);
        if (it == span.basis().end()) {
            throw TruncationError("residue leaves the quotient basis; enlarge the bounds");
        }
        out.coords[static_cast<std::size_t>(it - span.basis().begin())] = c;
    }
    out.witness = std::move(m.witness);
    return out;
}

StarOperator star_class_operator(const StarSpan &span, const StarClass &c) {
    StarOperator out(span.spec().config.mu_vars, span.spec().params);
    for (std::size_t b = 0; b < c.coords.size(); ++b) {
        out.add(span.basis()[b], c.coords[b]);
    }
    return out;
}

QuotientReport star_quotient_basis(const std::vector<WeylOp> &gens, const Specialization &spec,
                                   unsigned mu_degree_bound, unsigned del_order_bound) {
    QuotientReport rep;
    rep.stable = true;
    std::vector<WeylOp> small_gens;
    for (const auto &g : gens) {
        if (mu_degree(g) <= mu_degree_bound) {
            small_gens.push_back(g);
        } else {
            rep.stable = false;
            rep.notes.push_back("generator dropped at mu-degree bound " + std::to_string(mu_degree_bound) + ": " +
                                g.str());
        }
    }
    StarSpan small(small_gens, spec, mu_degree_bound, del_order_bound);
    rep.basis = small.basis();
    rep.basis_strings = small.basis_strings();

    unsigned mu2 = std::max(2 * mu_degree_bound, 1u);
    unsigned del2 = std::max(2 * del_order_bound, 1u);
    std::vector<WeylOp> large_gens;
    for (const auto &g : gens) {
        if (mu_degree(g) <= mu2) {
            large_gens.push_back(g);
        }
    }
    StarSpan large(large_gens, spec, mu2, del2);
    std::vector<Monomial> large_core;
    for (const auto &m : large.basis()) {
        if (total_degree(m) <= del_order_bound) {
            large_core.push_back(m);
        }
    }
    if (large_core != small.basis() || large.basis().size() != small.basis().size()) {
        rep.stable = false;
        rep.notes.push_back("quotient basis changes under doubled bounds");
        return rep;
    }
    for (const auto &col : small.columns()) {
        if (total_degree(col) > del_order_bound) {
            continue;
        }
        StarOperator probe = StarOperator::monomial(spec.config.mu_vars, spec.params, col, RatFunc::one(spec.params));
        try {
            if (star_normal_form(small, probe).coords != star_normal_form(large, probe).coords) {
                rep.stable = false;
                rep.notes.push_back("normal form of " + probe.str() + " changes under doubled bounds");
            }
        } catch (const TruncationError &e) {
            rep.stable = false;
            rep.notes.push_back("normal form of " + probe.str() + ": " + e.what());
        }
    }
    return rep;
}

bool denominator_admissible(const RatFunc &c, const std::vector<QPoly> &invertibles) {
    QPoly den = c.den();
    for (const auto &g : invertibles) {
        for (;;) {
            if (den.is_constant()) {
                return true;
            }
            QPoly h = gcd(den, g);
            if (h.is_constant()) {
                break;
            }
            den = divide_exact(den, h);
        }
    }
    return den.is_constant();
}

AnnihilatorResult minimal_annihilator(const ClassIndex &idx, const Specialization &spec, std::size_t param,
                                      std::size_t max_order, PullbackBounds bounds) {
    if (max_order < 1) {
        throw PreconditionError("max_order must be at least 1");
    }
    if (param >= spec.derivatives.size()) {
        throw PreconditionError("unknown derivation");
    }
    const ParamContext &ctx = spec.params;
    StarSpan span = ideal_span(gkz_generators(idx, spec.config), spec, bounds.mu_degree, bounds.del_order);
    AnnihilatorResult out;
    std::vector<RatVector> nf;
    StarOperator cur = StarOperator::unit(spec.config.mu_vars, ctx);
    nf.push_back(star_normal_form(span, cur).coords);
    const std::size_t dim = span.basis().size();
    for (std::size_t m = 1; m <= max_order; ++m) {
        cur = derivation_action(cur, spec, param);
        nf.push_back(star_normal_form(span, cur).coords);
        RatMatrix sys(dim, RatVector(m, RatFunc::zero(ctx)));
        RatVector rhs(dim, RatFunc::zero(ctx));
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t k = 0; k < m; ++k) {
                sys[i][k] = nf[k][i];
            }
            rhs[i] = -nf[m][i];
        }
        LinearSolution s = ratfunc_solve_linear(sys, rhs, ctx);
        if (!s.consistent) {
            continue;
        }
        if (!s.kernel.empty()) {
            out.warnings.push_back("monic operator of order " + std::to_string(m) + " is not unique");
        }
        out.found = true;
        out.order = m;
        out.coefficients = s.solution;
        out.op = parameter_operator(ctx, param, s.solution);
        Membership mem = membership(rho(out.op, spec), span);
        if (!mem.member || !(span.recombine(mem.witness) == rho(out.op, spec))) {
            throw IdentityFailure("annihilator witness does not recombine");
        }
        out.witness = std::move(mem.witness);
        if (!spec.invertibles.empty()) {
            for (const auto &c : out.coefficients) {
                if (!denominator_admissible(c, spec.invertibles)) {
                    out.warnings.push_back("coefficient " + c.str() + " has a denominator that is not a unit of R");
                }
            }
        }
        return out;
    }
    return out;
}

} // namespace dwork
