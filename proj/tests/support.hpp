#pragma once

#include "dwork/parse.hpp"

#include <random>
#include <string>

namespace dwork::testing {

inline ParamContext lambda_ctx() { return {make_vars({"lambda"})}; }

inline RatFunc rf(const std::string &text, const ParamContext &ctx) { return parse_ratfunc(text, ctx); }

inline MultiPoly poly(const std::string &text, const VarsPtr &vars, const ParamContext &ctx) {
    return parse_poly(text, vars, ctx);
}

// Small random polynomial with integer coefficients in [-3, 3].
inline MultiPoly random_poly(std::mt19937 &rng, const VarsPtr &vars, const ParamContext &ctx, unsigned max_deg,
                             unsigned terms) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<unsigned> expo(0, max_deg);
    std::vector<MultiPoly::Term> out;
    for (unsigned t = 0; t < terms; ++t) {
        Monomial m(vars->size());
        for (auto &e : m) {
            e = expo(rng);
        }
        RatFunc c = RatFunc::from_integer(coeff(rng), ctx);
        if (!ctx.vars->empty() && coeff(rng) > 1) {
            c = c * (RatFunc::variable(ctx, 0) + RatFunc::from_integer(coeff(rng), ctx));
        }
        out.push_back({m, c});
    }
    return MultiPoly::from_terms(vars, ctx, std::move(out));
}

} // namespace dwork::testing

#include "dwork/gkz.hpp"

namespace dwork::testing {

struct Legendre {
    ParamContext ctx = lambda_ctx();
    TwistData td;
    PointConfig config;
    TwistData generic;

    Legendre() {
        auto xv = make_vars({"x1", "x2"});
        td = make_twist({"x1", "x2"}, {"y1"}, ctx, {parse_poly("x2^2 - x1*(x1 - 1)*(x1 - lambda)", xv, ctx)});
        config = point_config(td);
        generic = generic_twist(config, {"x1", "x2"}, {"y1"});
    }

    MultiPoly p(const std::string &text) const { return parse_poly(text, td.poly_vars, ctx); }
    MultiPoly mu(const std::string &text) const { return parse_poly(text, config.mu_vars, empty_params()); }
    MultiPoly g(const std::string &text) const { return parse_poly(text, generic.poly_vars, generic.params); }
};

inline WeylOp random_op(std::mt19937 &rng, const VarsPtr &vars, const ParamContext &ctx) {
    std::uniform_int_distribution<unsigned> e(0, 2);
    WeylOp op(vars, vars, ctx);
    for (int t = 0; t < 3; ++t) {
        Monomial m(vars->size());
        for (auto &x : m) {
            x = e(rng);
        }
        op += WeylOp::monomial(vars, m, random_poly(rng, vars, ctx, 2, 2));
    }
    return op;
}

} // namespace dwork::testing
