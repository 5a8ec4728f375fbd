#pragma once

#include "dwork/ratfunc.hpp"

#include <map>
#include <string>
#include <vector>

namespace dwork {

// Normally ordered differential operator sum_a c_a * d^a. Coefficients are
// polynomials over `coeff_vars` with coefficients in Q(params). A base
// variable acts on coefficients as the partial derivative when it names a
// polynomial variable, as the coefficientwise derivation when it names a
// parameter, and trivially otherwise.
class WeylOp {
public:
    using TermMap = std::map<Monomial, MultiPoly, GrlexGreater>;

    WeylOp() = default;
    WeylOp(VarsPtr base_vars, VarsPtr coeff_vars, ParamContext ctx);

    static WeylOp scalar(VarsPtr base_vars, const MultiPoly &c);
    static WeylOp monomial(VarsPtr base_vars, Monomial exponents, const MultiPoly &c);
    // d/d(base_vars[k]) ^ e with unit coefficient.
    static WeylOp derivative(VarsPtr base_vars, VarsPtr coeff_vars, ParamContext ctx, std::size_t k,
                             Exponent e = 1);

    const VarsPtr &base_vars() const { return base_; }
    const VarsPtr &coeff_vars() const { return coeff_vars_; }
    const ParamContext &context() const { return ctx_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t order() const;
    MultiPoly coefficient(const Monomial &exponents) const;

    MultiPoly zero_coefficient() const { return MultiPoly(coeff_vars_, ctx_); }
    MultiPoly one_coefficient() const;
    WeylOp zero_like() const { return WeylOp(base_, coeff_vars_, ctx_); }

    // Action of the k-th base variable on a coefficient.
    MultiPoly derive(const MultiPoly &c, std::size_t k) const;

    WeylOp operator-() const;
    friend WeylOp operator+(const WeylOp &a, const WeylOp &b);
    friend WeylOp operator-(const WeylOp &a, const WeylOp &b);
    friend WeylOp operator*(const WeylOp &a, const WeylOp &b);
    WeylOp &operator+=(const WeylOp &o) { return *this = *this + o; }
    WeylOp &operator-=(const WeylOp &o) { return *this = *this - o; }
    // Left multiplication by a coefficient.
    friend WeylOp operator*(const MultiPoly &c, const WeylOp &a);
    friend WeylOp operator*(const RatFunc &c, const WeylOp &a);

    friend bool operator==(const WeylOp &a, const WeylOp &b);

    MultiPoly apply(const MultiPoly &g) const;

    void check_compatible(const WeylOp &o) const;

    // "c*d_x1^2 + d_x2" style text.
    std::string str() const;

    struct SerialTerm {
        std::string coefficient;
        std::vector<Exponent> exponents;
        friend bool operator==(const SerialTerm &, const SerialTerm &) = default;
    };
    std::vector<SerialTerm> serialize() const;
    static WeylOp deserialize(VarsPtr base_vars, VarsPtr coeff_vars, ParamContext ctx,
                              const std::vector<SerialTerm> &terms);

private:
    enum class Action { None, PolyVar, Param };
    void init_actions();
    void add_term(const Monomial &m, const MultiPoly &c);

    VarsPtr base_;
    VarsPtr coeff_vars_;
    ParamContext ctx_;
    std::vector<std::pair<Action, std::size_t>> actions_;
    TermMap terms_;
};

WeylOp weyl_product(const WeylOp &p, const WeylOp &q);
MultiPoly weyl_apply(const WeylOp &p, const MultiPoly &g);
WeylOp commutator(const WeylOp &p, const WeylOp &q);
// Name used for d/dv in printed operators.
std::string derivative_symbol(const std::string &var);

// Data of the twist exp(F), F = sum_j y_j f_j.
struct TwistData {
    VarsPtr x_vars;
    VarsPtr y_vars;
    ParamContext params;
    // x variables followed by y variables.
    VarsPtr poly_vars;
    // x, y and parameter names: the differentiation variables of twisted operators.
    VarsPtr base_vars;
    std::vector<MultiPoly> f;
    MultiPoly F;

    std::size_t N() const { return x_vars->size(); }
    std::size_t r() const { return y_vars->size(); }
};

// f_j are polynomials in the x variables (any variable list whose names are
// among x_names) with coefficients in Q(params).
TwistData make_twist(const VarList &x_names, const VarList &y_names, const ParamContext &params,
                     const std::vector<MultiPoly> &f);

// d/dv + dF/dv for the k-th base variable; this is D_{x_i}, D_{y_j}, the
// Gauss-Manin lift and, for generic coefficients, D_{mu_{j,i}}.
WeylOp twist_operator(const MultiPoly &F, const VarsPtr &base_vars, std::size_t k);

// Indices are zero-based.
WeylOp twist_x(const TwistData &td, std::size_t i);
WeylOp twist_y(const TwistData &td, std::size_t j);
WeylOp gauss_manin_lift(const TwistData &td, std::size_t param);
WeylOp gauss_manin_lift(const TwistData &td, const std::string &param);

} // namespace dwork
