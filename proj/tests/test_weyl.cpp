#include "doctest.h"

#include "support.hpp"

using namespace dwork;
using namespace dwork::testing;

TEST_CASE("Leibniz rule in one parameter") {
    auto ctx = lambda_ctx();
    auto none = make_vars({});
    auto base = make_vars({"lambda"});
    WeylOp d = WeylOp::derivative(base, none, ctx, 0);
    WeylOp lam = WeylOp::scalar(base, MultiPoly::constant(none, ctx, RatFunc::variable(ctx, 0)));
    WeylOp expected = lam * d + WeylOp::scalar(base, MultiPoly::constant(none, ctx, RatFunc::one(ctx)));
    CHECK(weyl_product(d, lam) == expected);
    CHECK(weyl_product(d, lam).str() == "lambda*d_lambda + 1");
}

TEST_CASE("products of operators over C[mu]") {
    Legendre L;
    const auto &c = L.config;
    CHECK((mu_derivative(c, 2) * mu_derivative(c, 3)).str() == "d_mu_3*d_mu_4");
    WeylOp z2 = euler_operators(c)[1];
    CHECK(z2.str() == "2*mu_1*d_mu_1");
    WeylOp prod = weyl_product(z2, mu_scalar(c, L.mu("mu_1")));
    CHECK(prod == mu_scalar(c, L.mu("2*mu_1^2")) * mu_derivative(c, 0) + mu_scalar(c, L.mu("2*mu_1")));
}

TEST_CASE("operator action") {
    Legendre L;
    auto ctx = L.ctx;
    WeylOp dx1 = WeylOp::derivative(L.td.base_vars, L.td.poly_vars, ctx, 0);
    CHECK(weyl_apply(dx1, L.p("x1^3")) == L.p("3*x1^2"));
    WeylOp z1 = euler_operators(L.config)[0];
    CHECK(z1.str() == "3*mu_2*d_mu_2 + 2*mu_3*d_mu_3 + mu_4*d_mu_4");
    CHECK(weyl_apply(z1, L.mu("mu_2")) == L.mu("3*mu_2"));
    CHECK(weyl_apply(z1, L.mu("0")).is_zero());
}

TEST_CASE("twisted operators of the Legendre family") {
    Legendre L;
    const auto &td = L.td;
    auto scalar = [&](const std::string &t) { return WeylOp::scalar(td.base_vars, L.p(t)); };
    auto d = [&](std::size_t k) { return WeylOp::derivative(td.base_vars, td.poly_vars, td.params, k); };

    CHECK(twist_x(td, 1) == d(1) + scalar("2*x2*y1"));
    CHECK(twist_x(td, 0) == d(0) + scalar("y1*(-3*x1^2 + 2*(lambda + 1)*x1 - lambda)"));
    CHECK(twist_y(td, 0) == d(2) + scalar("x2^2 - x1^3 + (lambda + 1)*x1^2 - lambda*x1"));
    CHECK(weyl_apply(twist_y(td, 0), L.p("1")) == td.f[0]);
    CHECK(weyl_apply(twist_y(td, 0), L.p("y1")) == L.p("1") + td.f[0] * L.p("y1"));
    CHECK(gauss_manin_lift(td, "lambda") == d(3) + scalar("y1*(x1^2 - x1)"));
    CHECK(weyl_apply(gauss_manin_lift(td, 0), L.p("1")) == L.p("y1*(x1^2 - x1)"));
    CHECK_THROWS_AS(twist_x(td, 2), PreconditionError);
    CHECK_THROWS_AS(gauss_manin_lift(td, "t"), PreconditionError);
}

TEST_CASE("constant equations give bare derivatives") {
    auto ctx = lambda_ctx();
    auto xv = make_vars({"x1"});
    TwistData td = make_twist({"x1"}, {"y1"}, ctx, {parse_poly("5", xv, ctx)});
    CHECK(twist_x(td, 0) == WeylOp::derivative(td.base_vars, td.poly_vars, ctx, 0));
    CHECK(gauss_manin_lift(td, 0) == WeylOp::derivative(td.base_vars, td.poly_vars, ctx, 2));
}

TEST_CASE("twist_mu shifts monomials") {
    Legendre L;
    const auto &g = L.generic;
    WeylOp d2 = twist_mu(g, L.config, 0, 1);
    WeylOp expected = WeylOp::derivative(g.base_vars, g.poly_vars, g.params, 4) +
                      WeylOp::scalar(g.base_vars, L.g("x1^3*y1"));
    CHECK(d2 == expected);
    CHECK(weyl_apply(d2, L.g("1")) == L.g("x1^3*y1"));
    CHECK(weyl_apply(d2, L.g("x1*x2^2*y1^2")) == L.g("x1^4*x2^2*y1^3"));
}

TEST_CASE("associativity and action compatibility on random operators") {
    auto ctx = lambda_ctx();
    auto vars = make_vars({"x1", "x2"});
    std::mt19937 rng(23);
    for (int round = 0; round < 15; ++round) {
        WeylOp a = random_op(rng, vars, ctx);
        WeylOp b = random_op(rng, vars, ctx);
        WeylOp c = random_op(rng, vars, ctx);
        CHECK((a * b) * c == a * (b * c));
        MultiPoly g = random_poly(rng, vars, ctx, 3, 3);
        CHECK(weyl_apply(a * b, g) == weyl_apply(a, weyl_apply(b, g)));
        CHECK((a * b).order() <= a.order() + b.order());
    }
}

TEST_CASE("normal ordering is canonical") {
    Legendre L;
    const auto &c = L.config;
    WeylOp x = mu_scalar(c, L.mu("mu_3"));
    WeylOp d = mu_derivative(c, 2);
    // d*mu_3 = mu_3*d + 1 built two ways
    WeylOp one = mu_scalar(c, L.mu("1"));
    CHECK(d * x == x * d + one);
    CHECK(d * x - one == x * d);
}

TEST_CASE("twisted operators commute") {
    Legendre L;
    const auto &td = L.td;
    WeylOp dx1 = twist_x(td, 0);
    WeylOp dx2 = twist_x(td, 1);
    WeylOp dy = twist_y(td, 0);
    WeylOp gm = gauss_manin_lift(td, 0);
    CHECK(commutator(dy, dy).is_zero());
    CHECK(commutator(dx1, dy).is_zero());
    CHECK(commutator(dx2, dy).is_zero());
    CHECK(commutator(dx1, dx2).is_zero());
    CHECK(commutator(gm, dx1).is_zero());
    // the pieces: [d_x1, f] = df/dx1 and [y1 df/dx1, d_y1] = -df/dx1
    WeylOp f = WeylOp::scalar(td.base_vars, td.f[0]);
    WeylOp dfx = WeylOp::scalar(td.base_vars, td.f[0].partial(0));
    WeylOp d0 = WeylOp::derivative(td.base_vars, td.poly_vars, td.params, 0);
    WeylOp d2 = WeylOp::derivative(td.base_vars, td.poly_vars, td.params, 2);
    CHECK(commutator(d0, f) == dfx);
    CHECK(commutator(WeylOp::scalar(td.base_vars, L.p("y1")) * dfx, d2) == -dfx);

    auto ctx = lambda_ctx();
    auto xv = make_vars({"x1", "x2"});
    TwistData two = make_twist({"x1", "x2"}, {"y1", "y2"}, ctx,
                               {parse_poly("x1^2 + x2 - lambda", xv, ctx), parse_poly("x1*x2 - 1", xv, ctx)});
    CHECK(commutator(twist_y(two, 0), twist_y(two, 1)).is_zero());
    CHECK(commutator(twist_x(two, 0), twist_y(two, 1)).is_zero());
}

TEST_CASE("serialization round trip") {
    Legendre L;
    std::vector<WeylOp> ops = euler_operators(L.config);
    ops.push_back(twist_x(L.td, 0));
    ops.push_back(gauss_manin_lift(L.td, 0) * twist_y(L.td, 0));
    for (const auto &op : ops) {
        auto terms = op.serialize();
        WeylOp back = WeylOp::deserialize(op.base_vars(), op.coeff_vars(), op.context(), terms);
        CHECK(back == op);
        CHECK(back.serialize() == terms);
    }
}
