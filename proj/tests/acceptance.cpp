#include "dwork/cohomology.hpp"
#include "dwork/geometry.hpp"
#include "dwork/numeric.hpp"
#include "dwork/pullback.hpp"
#include "support.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace dwork;
using namespace dwork::testing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    return buf;
}

bool is_legendre_operator(const RatVector &c, const ParamContext &ctx) {
    return c.size() == 2 && c[1] == rf("(1 - 2*lambda)/(lambda*(1 - lambda))", ctx) &&
           c[0] == rf("-1/(4*lambda*(1 - lambda))", ctx);
}

Outcome legendre_pullback() {
    auto t0 = std::chrono::steady_clock::now();
    Legendre L;
    Specialization sp = specialization(L.td, L.config);
    AnnihilatorResult a = minimal_annihilator({{0, 0}, {0}}, sp, 0, 4);
    double t = seconds_since(t0);
    bool ok = a.found && a.order == 2 && is_legendre_operator(a.coefficients, L.ctx) && t < 10;
    StarSpan span = ideal_span(gkz_generators({{0, 0}, {0}}, L.config), sp, 2, 2);
    ok = ok && span.recombine(a.witness) == rho(a.op, sp);
    return {ok, (a.found ? a.op.str() : "none") + " in " + fmt_seconds(t)};
}

Outcome legendre_gkz() {
    Legendre L;
    RelationBasis rel = integer_kernel_basis(L.config);
    bool ok = rel.vectors.size() == 1;
    if (ok) {
        IntVector b = rel.vectors[0];
        IntVector plus{0, -1, 2, -1};
        IntVector minus{0, 1, -2, 1};
        ok = b == plus || b == minus;
        ok = ok && box_from_relation(L.config, b).str() == "-d_mu_2*d_mu_4 + d_mu_3^2";
    }
    auto z = euler_operators(L.config);
    ok = ok && z.size() == 3 && z[0].str() == "3*mu_2*d_mu_2 + 2*mu_3*d_mu_3 + mu_4*d_mu_4" &&
         z[1].str() == "2*mu_1*d_mu_1" && z[2].str() == "mu_1*d_mu_1 + mu_2*d_mu_2 + mu_3*d_mu_3 + mu_4*d_mu_4";
    Specialization sp = specialization(L.td, L.config);
    ok = ok && sp.values == RatVector{rf("1", L.ctx), rf("-1", L.ctx), rf("lambda + 1", L.ctx), rf("-lambda", L.ctx)};
    return {ok, "relation (0,-1,2,-1), three Euler operators, phi = (1, -1, lambda+1, -lambda)"};
}

Outcome star_quotient() {
    Legendre L;
    Specialization sp = specialization(L.td, L.config);
    auto gens = gkz_generators({{0, 0}, {0}}, L.config);
    QuotientReport q = star_quotient_basis(gens, sp, 2, 2);
    bool ok = q.stable && q.basis_strings == std::vector<std::string>{"1", "d_mu_3"};
    StarSpan span = ideal_span(gens, sp, 2, 2);
    auto d = [&](std::initializer_list<Exponent> e, const std::string &c) {
        return StarOperator::monomial(L.config.mu_vars, L.ctx, Monomial(e), rf(c, L.ctx));
    };
    std::vector<StarOperator> members = {
        d({0, 0, 2, 0}, "1") + d({0, 0, 1, 0}, "2*(lambda + 1)/(lambda - 1)^2") + d({0, 0, 0, 0}, "1/(4*(lambda - 1)^2)"),
        d({0, 0, 0, 1}, "1") - d({0, 0, 1, 0}, "(lambda + 1)/(2*lambda)") - d({0, 0, 0, 0}, "1/(4*lambda)"),
        d({0, 0, 0, 2}, "1") - d({0, 0, 2, 0}, "1/lambda") - d({0, 0, 0, 1}, "1/lambda"),
        d({0, 0, 1, 1}, "1") - d({0, 0, 2, 0}, "(lambda + 1)/(2*lambda)") - d({0, 0, 1, 0}, "3/(4*lambda)"),
    };
    std::size_t held = 0;
    for (const auto &m : members) {
        Membership r = membership(m, span);
        if (r.member && span.recombine(r.witness) == m) {
            ++held;
        }
    }
    ok = ok && held == members.size();
    return {ok, "basis {" + q.basis_strings.at(0) + ", " + q.basis_strings.at(1) + "}, " + std::to_string(held) +
                    "/4 identities recombine"};
}

Outcome certificate_suite() {
    auto t0 = std::chrono::steady_clock::now();
    Legendre L;
    RelationBasis rel = integer_kernel_basis(L.config);
    std::size_t checked = 0;
    std::size_t held = 0;
    auto run = [&](const std::function<VerificationReport()> &f) {
        ++checked;
        try {
            held += f().holds ? 1 : 0;
        } catch (const IdentityFailure &) {
        }
    };
    for (unsigned u1 = 0; u1 <= 2; ++u1) {
        for (unsigned u2 = 0; u2 <= 2; ++u2) {
            for (unsigned v1 = 0; v1 <= 1; ++v1) {
                ClassIndex idx{{u1, u2}, {v1}};
                for (std::size_t k = 0; k < 2; ++k) {
                    run([&] { return euler_certificate_x(L.generic, L.config, idx, k); });
                }
                run([&] { return euler_certificate_y(L.generic, L.config, idx, 0); });
                for (const auto &b : rel.vectors) {
                    run([&] { return box_annihilation_check(L.generic, L.config, idx, b); });
                }
            }
        }
    }
    double t = seconds_since(t0);
    return {held == checked && checked == 72 && t < 5,
            std::to_string(held) + "/" + std::to_string(checked) + " identities in " + fmt_seconds(t)};
}

Outcome cohomology_route() {
    Legendre L;
    CohomologySpace space = build_space(L.td, default_box(L.td));
    bool ok = space.dimension() == 2 && space.basis_strings() == std::vector<std::string>{"1", "x1"};
    RatMatrix a = gm_action(space, 0);
    ok = ok && a[0][0] == rf("-1/(2*(lambda - 1))", L.ctx) && a[1][0] == rf("1/(2*lambda*(lambda - 1))", L.ctx);
    CyclicAnnihilator coh = cyclic_annihilator(space, normal_form(space, L.p("1")), 0, 4);
    ok = ok && coh.found && is_legendre_operator(coh.coefficients, L.ctx);
    Specialization sp = specialization(L.td, L.config);
    AnnihilatorResult pull = minimal_annihilator({{0, 0}, {0}}, sp, 0, 4);
    bool agree = pull.found && coh.found && pull.op == coh.op;
    return {ok && agree, std::string("dimension 2, Gauss-Manin column matches, routes ") +
                             (agree ? "agree" : "differ")};
}

Outcome order_minimality() {
    Legendre L;
    CohomologySpace space = build_space(L.td, {6, 2});
    CyclicAnnihilator coh = cyclic_annihilator(space, normal_form(space, L.p("1")), 0, 1);
    Specialization sp = specialization(L.td, L.config);
    AnnihilatorResult pull = minimal_annihilator({{0, 0}, {0}}, sp, 0, 1);
    return {!coh.found && !pull.found, std::string("cohomology: ") + (coh.found ? "found" : "none") +
                                           ", pullback: " + (pull.found ? "found" : "none")};
}

MultiPoly random_equation(std::mt19937 &rng, const VarsPtr &xv) {
    ParamContext ctx = empty_params();
    MultiPoly p = random_poly(rng, xv, ctx, 3, 3);
    std::vector<MultiPoly::Term> kept;
    for (const auto &t : p.terms()) {
        if (total_degree(t.exponents) <= 3 && total_degree(t.exponents) > 0) {
            kept.push_back(t);
        }
    }
    kept.push_back({Monomial(xv->size()), RatFunc::from_integer(1 + static_cast<long>(rng() % 3), ctx)});
    return MultiPoly::from_terms(xv, ctx, std::move(kept));
}

Outcome koszul_vanishing() {
    std::mt19937 rng(20261016);
    const std::array<std::pair<std::size_t, std::size_t>, 5> shapes = {{{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}}};
    std::size_t certified = 0;
    std::size_t attempts = 0;
    std::size_t vanishing = 0;
    while (certified < 20 && attempts < 500) {
        auto [N, r] = shapes[attempts++ % shapes.size()];
        std::vector<std::string> x;
        std::vector<std::string> y;
        for (std::size_t i = 0; i < N; ++i) {
            x.push_back("x" + std::to_string(i + 1));
        }
        for (std::size_t j = 0; j < r; ++j) {
            y.push_back("y" + std::to_string(j + 1));
        }
        VarsPtr xv = make_vars(x);
        std::vector<MultiPoly> f;
        bool usable = true;
        for (std::size_t j = 0; j < r; ++j) {
            f.push_back(random_equation(rng, xv));
            usable = usable && !f.back().is_constant();
        }
        if (!usable) {
            continue;
        }
        TwistData td = make_twist(x, y, empty_params(), f);
        if (!smoothness_certificate(td, 6).certified()) {
            continue;
        }
        ++certified;
        bool all_zero = true;
        for (std::size_t n = 0; n < r; ++n) {
            all_zero = all_zero && koszul_rank(f, n, 6) == 0;
        }
        vanishing += all_zero ? 1 : 0;
    }
    return {certified == 20 && vanishing == 20,
            std::to_string(vanishing) + "/" + std::to_string(certified) + " certified intersections vanish off degree r"};
}

Outcome numeric_oracle() {
    Legendre L;
    CohomologySpace space = build_space(L.td, {6, 2});
    CyclicAnnihilator leg = cyclic_annihilator(space, normal_form(space, L.p("1")), 0, 3);
    auto lower_of = [](const RatVector &cs) {
        std::vector<std::function<double(double)>> out;
        for (const auto &c : cs) {
            out.push_back([c](double t) { return c.evaluate({t}); });
        }
        return out;
    };
    double worst_leg = 0;
    auto series = [](double t, int k) { return numeric::legendre_period(t, 30, k); };
    for (double t : {0.05, 0.1, 0.2}) {
        worst_leg = std::max(worst_leg, numeric::ode_residual(lower_of(leg.coefficients), series, t));
    }

    auto ctx = lambda_ctx();
    auto xv = make_vars({"x1", "x2"});
    TwistData circle = make_twist({"x1", "x2"}, {"y1"}, ctx, {parse_poly("x1^2 + x2^2 - lambda", xv, ctx)});
    CohomologySpace cs = build_space(circle, default_box(circle));
    MultiPoly one = MultiPoly::constant(circle.poly_vars, ctx, RatFunc::one(ctx));
    CyclicAnnihilator circ = cyclic_annihilator(cs, normal_form(cs, one), 0, 2);
    auto period = numeric::finite_differences([](double t) { return numeric::circle_period(t); }, 1e-4);
    double worst_circ = 0;
    for (double t : {0.5, 1.0, 2.0}) {
        worst_circ = std::max(worst_circ, numeric::ode_residual(lower_of(circ.coefficients), period, t));
    }
    bool ok = leg.found && circ.found && circ.order == 1 && worst_leg < 1e-10 && worst_circ < 1e-8;
    char buf[128];
    std::snprintf(buf, sizeof buf, "Legendre residual %.2e, circle residual %.2e", worst_leg, worst_circ);
    return {ok, buf};
}

std::string capture(const std::string &cmd) {
    std::string out;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    pclose(pipe);
    return out;
}

Outcome determinism() {
    std::vector<std::filesystem::path> specs;
    for (const auto &e : std::filesystem::directory_iterator(DWORK_SPECS_DIR)) {
        if (e.path().extension() == ".spec") {
            specs.push_back(e.path());
        }
    }
    std::sort(specs.begin(), specs.end());
    std::size_t runs = 0;
    std::size_t stable = 0;
    for (const auto &s : specs) {
        for (std::string command : {"gkz", "annihilator", "picard-fuchs", "verify"}) {
            std::string cmd = std::string(DWORK_CLI) + " --input '" + s.string() + "' --command " + command +
                              " --cross-check --format machine 2>/dev/null";
            std::string first = capture(cmd);
            bool same = !first.empty();
            for (int k = 0; k < 2 && same; ++k) {
                same = capture(cmd) == first;
            }
            ++runs;
            stable += same ? 1 : 0;
        }
    }
    return {!specs.empty() && stable == runs,
            std::to_string(stable) + "/" + std::to_string(runs) + " command runs byte-identical over " +
                std::to_string(specs.size()) + " specs"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Legendre operator on the pullback route", legendre_pullback},
        {"Legendre GKZ data", legendre_gkz},
        {"star-quotient structure", star_quotient},
        {"certificate suite", certificate_suite},
        {"cohomology route", cohomology_route},
        {"order minimality", order_minimality},
        {"Koszul vanishing", koszul_vanishing},
        {"numeric oracles", numeric_oracle},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << k + 1 << "] " << criteria[k].first << ": " << o.detail
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
