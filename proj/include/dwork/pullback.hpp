#pragma once

#include "dwork/gkz.hpp"
#include "dwork/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dwork {

// mu_k -> lambda_k, the coefficient of the k-th point in its equation.
struct Specialization {
    PointConfig config;
    ParamContext params;
    RatVector values;
    // derivatives[p][k] = d(lambda_k) / d(param p)
    std::vector<RatVector> derivatives;
    // Polynomials in the parameters that are units of R.
    std::vector<QPoly> invertibles;
};

Specialization specialization(const TwistData &td, const PointConfig &config);
Specialization specialization(const TwistData &td);

// Element of R (x) D_{C[mu]}: sum c_g(lambda) d_mu^g. No product is defined.
class StarOperator {
public:
    using TermMap = std::map<Monomial, RatFunc, GrlexGreater>;

    StarOperator() = default;
    StarOperator(VarsPtr mu_vars, ParamContext ctx);
    static StarOperator unit(VarsPtr mu_vars, ParamContext ctx);
    static StarOperator monomial(VarsPtr mu_vars, ParamContext ctx, Monomial exponents, const RatFunc &c);

    const VarsPtr &mu_vars() const { return mu_vars_; }
    const ParamContext &context() const { return ctx_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t order() const;
    RatFunc coefficient(const Monomial &m) const;

    StarOperator operator-() const;
    friend StarOperator operator+(const StarOperator &a, const StarOperator &b);
    friend StarOperator operator-(const StarOperator &a, const StarOperator &b);
    friend StarOperator operator*(const RatFunc &c, const StarOperator &a);
    StarOperator &operator+=(const StarOperator &o) { return *this = *this + o; }
    friend bool operator==(const StarOperator &a, const StarOperator &b);

    void add(const Monomial &m, const RatFunc &c);
    std::string str() const;

private:
    VarsPtr mu_vars_;
    ParamContext ctx_;
    TermMap terms_;
};

// Evaluates the left coefficients of a normally ordered L at phi.
StarOperator star(const WeylOp &L, const Specialization &s);
// d/d(param) acting on R (x) D_{C[mu]}.
StarOperator derivation_action(const StarOperator &e, const Specialization &s, std::size_t param);
// P . (1 (x) 1) for P in D_R, written over the parameters of s.
StarOperator rho(const WeylOp &P, const Specialization &s);
// Operator in D_R with one base variable per parameter.
WeylOp r_operator(const Specialization &s, const Monomial &exponents, const RatFunc &c);

// Truncated R-span of star(mu^a d^b G) for G among the generators and |b| up
// to the order bound. Multiplying by mu^a on the left only rescales the star,
// so the mu-degree bound gates which generators are admissible.
class StarSpan {
public:
    struct Witness {
        std::size_t generator = 0;
        Monomial beta;
    };

    StarSpan(const std::vector<WeylOp> &gens, const Specialization &spec, unsigned mu_degree_bound,
             unsigned del_order_bound);

    const Specialization &spec() const { return spec_; }
    unsigned mu_degree_bound() const { return mu_bound_; }
    unsigned del_order_bound() const { return del_bound_; }
    const std::vector<WeylOp> &generators() const { return gens_; }
    const std::vector<Witness> &witnesses() const { return witnesses_; }
    const std::vector<Monomial> &columns() const { return columns_; }
    const Echelon<RatFunc> &echelon() const { return echelon_; }
    // Non-pivot monomials of order <= del_order_bound, in increasing column order.
    const std::vector<Monomial> &basis() const { return basis_; }
    std::vector<std::string> basis_strings() const;

    std::optional<std::size_t> column_of(const Monomial &m) const;
    std::optional<SparseVec<RatFunc>> to_vector(const StarOperator &op) const;
    StarOperator to_star(const SparseVec<RatFunc> &v) const;
    // star(d^beta G) for the k-th spanning element.
    StarOperator element(std::size_t k) const;
    StarOperator recombine(const SparseVec<RatFunc> &witness) const;

private:
    Specialization spec_;
    std::vector<WeylOp> gens_;
    unsigned mu_bound_;
    unsigned del_bound_;
    std::vector<Monomial> columns_;
    std::map<Monomial, std::size_t> index_;
    std::vector<Witness> witnesses_;
    Echelon<RatFunc> echelon_{ParamContext{}};
    std::vector<Monomial> basis_;
};

// Throws PreconditionError when a generator exceeds the mu-degree bound.
StarSpan ideal_span(const std::vector<WeylOp> &gens, const Specialization &spec, unsigned mu_degree_bound,
                    unsigned del_order_bound);

struct Membership {
    bool member = false;
    // Combination of spanning elements; recombines to op - residue.
    SparseVec<RatFunc> witness;
    StarOperator residue;
};

// A refusal is relative to the truncation and does not prove non-membership.
Membership membership(const StarOperator &op, const StarSpan &span);

struct StarClass {
    RatVector coords;
    SparseVec<RatFunc> witness;
};

// Coordinates along span.basis(); TruncationError when the residue has
// support outside the basis.
StarClass star_normal_form(const StarSpan &span, const StarOperator &op);
StarOperator star_class_operator(const StarSpan &span, const StarClass &c);

struct QuotientReport {
    std::vector<Monomial> basis;
    std::vector<std::string> basis_strings;
    bool stable = false;
    std::vector<std::string> notes;
};

// Basis at the bounds, compared with the basis and normal forms at doubled bounds.
QuotientReport star_quotient_basis(const std::vector<WeylOp> &gens, const Specialization &spec,
                                   unsigned mu_degree_bound, unsigned del_order_bound);

struct AnnihilatorResult {
    bool found = false;
    std::size_t order = 0;
    // Monic d^m + sum a_i d^i in D_R.
    WeylOp op;
    RatVector coefficients;
    // rho(op) as a combination of spanning elements.
    SparseVec<RatFunc> witness;
    std::vector<std::string> warnings;
};

struct PullbackBounds {
    unsigned mu_degree = 2;
    unsigned del_order = 2;
};

AnnihilatorResult minimal_annihilator(const ClassIndex &idx, const Specialization &spec, std::size_t param,
                                      std::size_t max_order, PullbackBounds bounds = {});

// True when every irreducible factor of the denominator divides a product of
// declared invertibles.
bool denominator_admissible(const RatFunc &c, const std::vector<QPoly> &invertibles);

} // namespace dwork
