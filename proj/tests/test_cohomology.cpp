#include "doctest.h"

#include "dwork/cohomology.hpp"
#include "support.hpp"

using namespace dwork;
using namespace dwork::testing;

namespace {

TwistData one_var(const std::string &f) {
    auto ctx = lambda_ctx();
    auto xv = make_vars({"x1"});
    return make_twist({"x1"}, {"y1"}, ctx, {parse_poly(f, xv, ctx)});
}

TwistData two_eq(const ParamContext &ctx, const std::string &f1, const std::string &f2) {
    auto xv = make_vars({"x1", "x2"});
    return make_twist({"x1", "x2"}, {"y1", "y2"}, ctx, {parse_poly(f1, xv, ctx), parse_poly(f2, xv, ctx)});
}

MultiPoly combine(const CohomologySpace &s, const SparseVec<RatFunc> &w) {
    MultiPoly acc(s.twist().poly_vars, s.field());
    for (const auto &[k, c] : w) {
        acc += s.relation_image(k) * c;
    }
    return acc;
}

} // namespace

TEST_CASE("Legendre basis") {
    Legendre L;
    CohomologySpace s = build_space(L.td, {6, 2});
    CHECK(s.dimension() == 2);
    CHECK(s.basis_strings() == std::vector<std::string>{"1", "x1"});
    CHECK(build_space(L.td, default_box(L.td)).basis_strings() == s.basis_strings());
}

TEST_CASE("generic coefficients") {
    Legendre L;
    CohomologySpace s = build_space(L.generic, {6, 2});
    CHECK(s.dimension() == 2);
    CHECK(s.field().vars->size() == 4);
}

TEST_CASE("build_space errors") {
    Legendre L;
    CHECK_THROWS_AS(build_space(L.td, {2, 2}), TruncationError);
    CHECK_THROWS_AS(build_space(one_var("0"), {2, 1}), PreconditionError);
}

TEST_CASE("zero-dimensional fibres") {
    CHECK(build_space(one_var("x1"), {2, 1}).basis_strings() == std::vector<std::string>{"1"});
    CHECK(build_space(one_var("x1"), {8, 4}).dimension() == 1);
    CHECK(build_space(one_var("x1^2 - lambda"), {4, 1}).dimension() == 2);
}

TEST_CASE("normal forms of explicit coboundaries") {
    Legendre L;
    CohomologySpace s = build_space(L.td, {6, 2});
    auto zero = [&](const MultiPoly &p) {
        CohomClass c = normal_form(s, p);
        for (const auto &x : c.coords) {
            CHECK(x.is_zero());
        }
    };
    zero(L.td.f[0]);
    zero(L.td.f[0].partial(0) * L.p("y1"));
    zero(twist_x(L.td, 1).apply(L.p("x1*y1")));
    CHECK_THROWS_AS(normal_form(s, L.p("x1^7")), PreconditionError);
}

TEST_CASE("normal form of x1^2") {
    // x2^2 = g(x1) on the curve: d(x2) = g'(x1) dx1 / (2 x2), so 3 x1^2 = 2(lambda + 1) x1 - lambda in cohomology
    Legendre L;
    for (DegreeBox b : {DegreeBox{6, 2}, DegreeBox{12, 4}}) {
        CohomologySpace s = build_space(L.td, b);
        CohomClass c = normal_form(s, L.p("x1^2"));
        CHECK(c.coords[0] == rf("-lambda/3", L.ctx));
        CHECK(c.coords[1] == rf("2*(lambda + 1)/3", L.ctx));
    }
    CHECK(check_stability(L.td, {6, 2}, {L.p("x1^2"), L.p("x1^3*y1")}).stable);
}

TEST_CASE("normal form is linear, idempotent and witnessed") {
    Legendre L;
    CohomologySpace s = build_space(L.td, {6, 2});
    std::mt19937 rng(7);
    for (int round = 0; round < 8; ++round) {
        MultiPoly p = random_poly(rng, L.td.poly_vars, L.ctx, 2, 4);
        MultiPoly q = random_poly(rng, L.td.poly_vars, L.ctx, 2, 4);
        RatFunc a = rf("lambda + " + std::to_string(round), L.ctx);
        CohomClass np = normal_form(s, p);
        CohomClass nq = normal_form(s, q);
        CohomClass sum = normal_form(s, p * a + q);
        for (std::size_t i = 0; i < s.dimension(); ++i) {
            CHECK(sum.coords[i] == np.coords[i] * a + nq.coords[i]);
        }
        MultiPoly rep = class_poly(s, np);
        CHECK(normal_form(s, rep) == np);
        CHECK(p - rep == combine(s, np.witness));
    }
    for (std::size_t b = 0; b < s.dimension(); ++b) {
        CohomClass c = normal_form(s, s.basis_poly(b));
        CHECK(c.coords[b] == RatFunc::one(L.ctx));
    }
}

TEST_CASE("relation generators reproduce their images") {
    Legendre L;
    CohomologySpace s = build_space(L.td, {6, 2});
    REQUIRE(!s.preimages().empty());
    for (std::size_t k = 0; k < s.preimages().size(); k += 7) {
        MultiPoly img = s.relation_image(k);
        REQUIRE(s.to_vector(img).has_value());
        CohomClass c = normal_form(s, img);
        for (const auto &x : c.coords) {
            CHECK(x.is_zero());
        }
    }
}

TEST_CASE("Gauss-Manin action on the Legendre family") {
    Legendre L;
    CohomologySpace s = build_space(L.td, {6, 2});
    RatMatrix a = gm_action(s, "lambda");
    CHECK(a[0][0] == rf("-1/(2*(lambda - 1))", L.ctx));
    CHECK(a[1][0] == rf("1/(2*lambda*(lambda - 1))", L.ctx));
    CHECK(a == gm_action(s, 0));
    CHECK_THROWS_AS(gm_action(s, "t"), PreconditionError);
}

TEST_CASE("parameter-free equations have zero Gauss-Manin matrix") {
    auto ctx = lambda_ctx();
    auto xv = make_vars({"x1", "x2"});
    TwistData td = make_twist({"x1", "x2"}, {"y1"}, ctx, {parse_poly("x2^2 - x1^3 + x1", xv, ctx)});
    CohomologySpace s = build_space(td, {6, 2});
    for (const auto &row : gm_action(s, 0)) {
        for (const auto &x : row) {
            CHECK(x.is_zero());
        }
    }
}

TEST_CASE("cyclic annihilator of the Legendre class") {
    Legendre L;
    CohomologySpace s = build_space(L.td, {6, 2});
    CohomClass one = normal_form(s, L.p("1"));
    CyclicAnnihilator ann = cyclic_annihilator(s, one, 0, 4);
    REQUIRE(ann.found);
    CHECK(ann.order == 2);
    CHECK(ann.coefficients[1] == rf("(1 - 2*lambda)/(lambda*(1 - lambda))", L.ctx));
    CHECK(ann.coefficients[0] == rf("-1/(4*lambda*(1 - lambda))", L.ctx));
    RatVector rest = apply_operator_to_class(gm_action(s, 0), ann.coefficients, one.coords, 0);
    for (const auto &x : rest) {
        CHECK(x.is_zero());
    }
    CHECK_FALSE(cyclic_annihilator(s, one, 0, 1).found);
    CHECK_THROWS_AS(cyclic_annihilator(s, one, 0, 0), PreconditionError);
}

TEST_CASE("circle family has a first-order annihilator") {
    auto ctx = lambda_ctx();
    auto xv = make_vars({"x1", "x2"});
    TwistData td = make_twist({"x1", "x2"}, {"y1"}, ctx, {parse_poly("x1^2 + x2^2 - lambda", xv, ctx)});
    CohomologySpace s = build_space(td, default_box(td));
    CHECK(s.dimension() == 1);
    CyclicAnnihilator ann = cyclic_annihilator(s, normal_form(s, parse_poly("1", td.poly_vars, ctx)), 0, 3);
    REQUIRE(ann.found);
    CHECK(ann.order == 1);
    CHECK(ann.coefficients[0].is_zero());
    CHECK(ann.op.str() == "d_lambda");
}

TEST_CASE("two-parameter integrability") {
    ParamContext ab{make_vars({"a", "b"})};
    auto xv = make_vars({"x1", "x2"});
    TwistData td = make_twist({"x1", "x2"}, {"y1"}, ab, {parse_poly("x2^2 - x1^3 - a*x1 - b", xv, ab)});
    CohomologySpace s = build_space(td, {6, 2});
    REQUIRE(s.dimension() == 2);
    RatMatrix a1 = gm_action(s, "a");
    RatMatrix a2 = gm_action(s, "b");
    RatMatrix p12 = mat_mul(a1, a2, ab);
    RatMatrix p21 = mat_mul(a2, a1, ab);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            RatFunc curv = a2[i][j].derivative(0) - a1[i][j].derivative(1) + p12[i][j] - p21[i][j];
            CHECK(curv.is_zero());
        }
    }
}

TEST_CASE("Koszul ranks") {
    Legendre L;
    CHECK(koszul_rank(L.td.f, 0, 4) == 0);
    CHECK(koszul_rank(L.td.f, 1, 4) > 0);
    auto ctx = lambda_ctx();
    TwistData lin = two_eq(ctx, "x1", "x2");
    CHECK(koszul_rank(lin.f, 0, 6) == 0);
    CHECK(koszul_rank(lin.f, 1, 6) == 0);
    CHECK(koszul_rank(lin.f, 2, 0) == 1);
    // x1*x2 and x1^2 share the factor x1: not a regular sequence
    TwistData bad = two_eq(ctx, "x1*x2", "x1^2");
    CHECK(koszul_rank(bad.f, 1, 4) > 0);
    CHECK_THROWS_AS(koszul_rank(lin.f, 3, 2), PreconditionError);
}

TEST_CASE("lowering the y-degree") {
    auto ctx = lambda_ctx();
    TwistData lin = two_eq(ctx, "x1", "x2");
    CohomologySpace s = build_space(lin, {4, 2});
    std::vector<MultiPoly> mu = {parse_poly("x2*y1", lin.poly_vars, ctx), parse_poly("-x1*y1", lin.poly_vars, ctx)};
    auto out = lower_y_degree(s, mu);
    MultiPoly before = twist_y(lin, 0).apply(mu[0]) + twist_y(lin, 1).apply(mu[1]);
    MultiPoly after = twist_y(lin, 0).apply(out[0]) + twist_y(lin, 1).apply(out[1]);
    CHECK(before == after);
    for (const auto &m : out) {
        for (const auto &t : m.terms()) {
            CHECK(t.exponents[2] + t.exponents[3] == 0);
        }
    }

    std::vector<MultiPoly> not_cocycle = {parse_poly("y1", lin.poly_vars, ctx), parse_poly("0", lin.poly_vars, ctx)};
    CHECK_THROWS_AS(lower_y_degree(s, not_cocycle), PreconditionError);

    Legendre L;
    CohomologySpace ls = build_space(L.td, {6, 2});
    CHECK_THROWS_AS(lower_y_degree(ls, {L.p("x1*y1^2")}), PreconditionError);
}

TEST_CASE("lowering random Koszul cocycles") {
    auto ctx = lambda_ctx();
    TwistData td = two_eq(ctx, "x1^2 + x2 - lambda", "x1*x2 - 1");
    CohomologySpace s = build_space(td, {4, 2});
    std::mt19937 rng(5);
    auto xonly = make_vars({"x1", "x2"});
    for (int round = 0; round < 4; ++round) {
        MultiPoly h = embed(random_poly(rng, xonly, ctx, 1, 2), td.poly_vars);
        if (h.is_zero()) {
            continue;
        }
        MultiPoly w = parse_poly(round % 2 ? "y1^2" : "y1*y2", td.poly_vars, ctx);
        MultiPoly low = parse_poly("x1*y2", td.poly_vars, ctx);
        std::vector<MultiPoly> mu = {h * td.f[1] * w + low, -(h * td.f[0] * w)};
        auto out = lower_y_degree(s, mu);
        MultiPoly before = twist_y(td, 0).apply(mu[0]) + twist_y(td, 1).apply(mu[1]);
        MultiPoly after = twist_y(td, 0).apply(out[0]) + twist_y(td, 1).apply(out[1]);
        CHECK(before == after);
        for (const auto &m : out) {
            for (const auto &t : m.terms()) {
                CHECK(t.exponents[2] + t.exponents[3] < 2);
            }
        }
    }
}
