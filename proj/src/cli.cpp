#include "dwork/cli.hpp"

#include "dwork/cohomology.hpp"
#include "dwork/geometry.hpp"
#include "dwork/numeric.hpp"
#include "dwork/parse.hpp"
#include "dwork/pullback.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace dwork::cli {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

unsigned parse_unsigned(const std::string &key, const std::string &s) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size() || v < 0) {
            throw ParseError("");
        }
        return static_cast<unsigned>(v);
    } catch (const std::exception &) {
        throw ParseError("expected a non-negative integer for " + key + ": " + s);
    }
}

std::vector<unsigned> parse_unsigned_list(const std::string &key, const std::string &s) {
    std::vector<unsigned> out;
    for (const auto &item : split_list(s)) {
        out.push_back(parse_unsigned(key, item));
    }
    return out;
}

json integer_json(const Integer &x) {
    if (x.fits_slong_p()) {
        return x.get_si();
    }
    return x.get_str();
}

json op_json(const WeylOp &op) {
    json terms = json::array();
    for (const auto &t : op.serialize()) {
        terms.push_back({{"coefficient", t.coefficient}, {"exponents", t.exponents}});
    }
    return {{"text", op.str()}, {"terms", terms}};
}

json vector_json(const RatVector &v) {
    json out = json::array();
    for (const auto &x : v) {
        out.push_back(x.str());
    }
    return out;
}

json matrix_json(const RatMatrix &m) {
    json out = json::array();
    for (const auto &row : m) {
        out.push_back(vector_json(row));
    }
    return out;
}

std::string join(const std::vector<std::string> &xs, const std::string &sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? sep : "") + xs[i];
    }
    return out;
}

std::string exp_string(const std::vector<unsigned> &u) {
    std::vector<std::string> parts;
    for (unsigned x : u) {
        parts.push_back(std::to_string(x));
    }
    return "(" + join(parts, ",") + ")";
}

std::size_t derivation_index(const Problem &p) {
    const VarList &params = *p.twist.params.vars;
    if (params.empty()) {
        throw PreconditionError("the problem has no parameters to differentiate");
    }
    if (p.spec.derivation.empty()) {
        return 0;
    }
    auto k = var_index(params, p.spec.derivation);
    if (!k) {
        throw PreconditionError("unknown derivation d/d" + p.spec.derivation);
    }
    return *k;
}

Specialization make_specialization(const Problem &p) {
    Specialization s = specialization(p.twist, p.config);
    for (const auto &t : p.spec.invertible) {
        s.invertibles.push_back(parse_ratfunc(t, p.twist.params).num());
    }
    return s;
}

PullbackBounds bounds_of(const Problem &p, const Options &o) {
    return {o.mu_degree.value_or(p.spec.mu_degree), o.del_order.value_or(p.spec.del_order)};
}

struct GridOutcome {
    std::size_t checked = 0;
    std::vector<std::string> failures;
};

GridOutcome certificate_grid(const Problem &p, unsigned grid) {
    GridOutcome out;
    TwistData generic = generic_twist(p.config, *p.twist.x_vars, *p.twist.y_vars);
    RelationBasis rel = integer_kernel_basis(p.config);
    const std::size_t N = p.twist.N();
    const std::size_t r = p.twist.r();
    std::vector<unsigned> u(N, 0);
    std::vector<unsigned> v(r, 0);
    unsigned vgrid = std::min(grid, 1u);
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos < N) {
            for (unsigned a = 0; a <= grid; ++a) {
                u[pos] = a;
                rec(pos + 1);
            }
            return;
        }
        if (pos < N + r) {
            for (unsigned a = 0; a <= vgrid; ++a) {
                v[pos - N] = a;
                rec(pos + 1);
            }
            return;
        }
        ClassIndex idx{u, v};
        auto run = [&](const std::string &label, const std::function<VerificationReport()> &f) {
            ++out.checked;
            try {
                if (!f().holds) {
                    out.failures.push_back(label + " at u=" + exp_string(u) + " v=" + exp_string(v));
                }
            } catch (const IdentityFailure &) {
                out.failures.push_back(label + " at u=" + exp_string(u) + " v=" + exp_string(v));
            }
        };
        for (std::size_t k = 0; k < N; ++k) {
            run("euler_x" + std::to_string(k + 1), [&] { return euler_certificate_x(generic, p.config, idx, k); });
        }
        for (std::size_t j = 0; j < r; ++j) {
            run("euler_y" + std::to_string(j + 1), [&] { return euler_certificate_y(generic, p.config, idx, j); });
        }
        for (std::size_t b = 0; b < rel.vectors.size(); ++b) {
            run("box" + std::to_string(b + 1),
                [&] { return box_annihilation_check(generic, p.config, idx, rel.vectors[b]); });
        }
    };
    rec(0);
    return out;
}

// Remainder of a on the right division by b; operators as coefficient lists c_k of d^k.
RatVector right_remainder(RatVector a, const RatVector &b, std::size_t param, const ParamContext &ctx) {
    auto top = [](const RatVector &v) {
        std::size_t n = v.size();
        while (n > 0 && v[n - 1].is_zero()) {
            --n;
        }
        return n;
    };
    const std::size_t nb = top(b);
    for (std::size_t na = top(a); na >= nb && na > 0; na = top(a)) {
        std::size_t s = na - nb;
        RatFunc q = a[na - 1] / b[nb - 1];
        // (q d^s) b_k d^k = q sum_i C(s,i) b_k^(i) d^(s-i+k)
        for (std::size_t k = 0; k < nb; ++k) {
            RatFunc dk = b[k];
            long binom = 1;
            for (std::size_t i = 0; i <= s; ++i) {
                if (i > 0) {
                    dk = dk.derivative(param);
                    binom = binom * static_cast<long>(s - i + 1) / static_cast<long>(i);
                }
                a[s - i + k] = a[s - i + k] - q * RatFunc::from_integer(binom, ctx) * dk;
            }
        }
    }
    return a;
}

bool right_divides(const RatVector &lower_a, const RatVector &lower_b, std::size_t param, const ParamContext &ctx) {
    RatVector a = lower_a;
    a.push_back(RatFunc::one(ctx));
    RatVector b = lower_b;
    b.push_back(RatFunc::one(ctx));
    if (b.size() > a.size()) {
        return false;
    }
    for (const auto &c : right_remainder(a, b, param, ctx)) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

json problem_json(const Problem &p) {
    json f = json::array();
    for (const auto &fj : p.twist.f) {
        f.push_back(fj.str());
    }
    return {{"name", p.spec.name},     {"x", *p.twist.x_vars}, {"y", *p.twist.y_vars}, {"params", *p.twist.params.vars},
            {"invertible", p.spec.invertible}, {"f", f}, {"u", p.idx.u}, {"v", p.idx.v}};
}

Result start(const Problem &p, const std::string &command) {
    Result r;
    r.document = {{"format_version", kFormatVersion}, {"command", command}, {"problem", problem_json(p)}};
    std::vector<std::string> f;
    for (const auto &fj : p.twist.f) {
        f.push_back(fj.str());
    }
    r.text.push_back(command + ": " + (p.spec.name.empty() ? "problem" : p.spec.name));
    r.text.push_back("  f = " + join(f, "; "));
    r.text.push_back("  class u=" + exp_string(p.idx.u) + " v=" + exp_string(p.idx.v));
    return r;
}

std::function<double(double)> as_function(const RatFunc &c) {
    return [c](double t) { return c.evaluate({t}); };
}

json oracle_report(const ProblemSpec &spec, const RatVector &coefficients, std::vector<std::string> &text) {
    std::vector<std::function<double(double)>> lower;
    for (const auto &c : coefficients) {
        lower.push_back(as_function(c));
    }
    numeric::PeriodFunction y;
    double tolerance = 0;
    if (spec.oracle == "legendre") {
        y = [](double t, int k) { return numeric::legendre_period(t, 30, k); };
        tolerance = 1e-10;
    } else if (spec.oracle == "circle") {
        y = numeric::finite_differences([](double t) { return numeric::circle_period(t); }, 1e-4);
        tolerance = 1e-8;
    } else {
        throw ParseError("unknown oracle: " + spec.oracle);
    }
    json samples = json::array();
    bool pass = true;
    for (double t : spec.oracle_points) {
        double res = numeric::ode_residual(lower, y, t);
        pass = pass && res < tolerance;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", res);
        char at[32];
        std::snprintf(at, sizeof at, "%g", t);
        samples.push_back({{"at", at}, {"residual", buf}});
        text.push_back(std::string("  oracle residual at ") + at + ": " + buf);
    }
    char tol[32];
    std::snprintf(tol, sizeof tol, "%.0e", tolerance);
    return {{"oracle", spec.oracle}, {"samples", samples}, {"tolerance", tol}, {"pass", pass}};
}

} // namespace

ProblemSpec parse_spec(const std::string &text) {
    ProblemSpec s;
    std::stringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "name") {
            s.name = value;
        } else if (key == "x") {
            s.x = split_list(value);
        } else if (key == "y") {
            s.y = split_list(value);
        } else if (key == "params") {
            s.params = split_list(value);
        } else if (key == "invertible") {
            s.invertible = split_list(value);
        } else if (key == "f") {
            s.f.push_back(value);
        } else if (key == "u") {
            s.u = parse_unsigned_list(key, value);
        } else if (key == "v") {
            s.v = parse_unsigned_list(key, value);
        } else if (key == "derivation") {
            s.derivation = value;
        } else if (key == "x_degree") {
            s.x_degree = parse_unsigned(key, value);
        } else if (key == "y_degree") {
            s.y_degree = parse_unsigned(key, value);
        } else if (key == "mu_degree") {
            s.mu_degree = parse_unsigned(key, value);
        } else if (key == "del_order") {
            s.del_order = parse_unsigned(key, value);
        } else if (key == "max_order") {
            s.max_order = parse_unsigned(key, value);
        } else if (key == "koszul_degree") {
            s.koszul_degree = parse_unsigned(key, value);
        } else if (key == "certificate_grid") {
            s.certificate_grid = parse_unsigned(key, value);
        } else if (key == "smoothness_cap") {
            s.smoothness_cap = parse_unsigned(key, value);
        } else if (key == "oracle") {
            s.oracle = value;
        } else if (key == "oracle_points") {
            for (const auto &item : split_list(value)) {
                try {
                    s.oracle_points.push_back(std::stod(item));
                } catch (const std::exception &) {
                    throw ParseError("bad oracle point: " + item);
                }
            }
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown key " + key);
        }
    }
    if (s.x.empty()) {
        throw ParseError("missing x variables");
    }
    if (s.f.empty()) {
        throw ParseError("missing equations");
    }
    return s;
}

ProblemSpec load_spec(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot read " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

Problem build_problem(ProblemSpec spec, const Options &opts) {
    Problem p;
    ParamContext ctx{make_vars(spec.params)};
    VarsPtr xv = make_vars(spec.x);
    std::vector<MultiPoly> f;
    for (const auto &t : spec.f) {
        f.push_back(parse_poly(t, xv, ctx));
    }
    if (spec.y.empty()) {
        for (std::size_t j = 0; j < f.size(); ++j) {
            spec.y.push_back("y" + std::to_string(j + 1));
        }
    }
    if (spec.y.size() != f.size()) {
        throw ParseError("one y variable per equation is required");
    }
    if (opts.u) {
        spec.u = *opts.u;
    }
    if (opts.v) {
        spec.v = *opts.v;
    }
    if (spec.u.empty()) {
        spec.u.assign(spec.x.size(), 0);
    }
    if (spec.v.empty()) {
        spec.v.assign(f.size(), 0);
    }
    if (spec.u.size() != spec.x.size() || spec.v.size() != f.size()) {
        throw ParseError("class index has the wrong length");
    }
    if (!spec.oracle.empty() && spec.oracle_points.empty()) {
        throw ParseError("oracle needs oracle_points");
    }
    p.twist = make_twist(spec.x, spec.y, ctx, f);
    p.config = point_config(p.twist);
    p.idx = {spec.u, spec.v};
    p.spec = std::move(spec);
    return p;
}

Result cmd_gkz(const Problem &p, const Options &) {
    Result r = start(p, "gkz");
    json &d = r.document;
    const auto &c = p.config;
    json points = json::array();
    Specialization sp = specialization(p.twist, c);
    for (std::size_t k = 0; k < c.size(); ++k) {
        points.push_back({{"mu", c.mu_vars->at(k)},
                          {"equation", c.points[k].j + 1},
                          {"term", c.points[k].i + 1},
                          {"exponent", c.points[k].d},
                          {"phi", sp.values[k].str()}});
    }
    d["points"] = points;
    RelationBasis rel = integer_kernel_basis(c);
    json relations = json::array();
    r.text.push_back("  relation basis:");
    for (const auto &b : rel.vectors) {
        json row = json::array();
        std::vector<std::string> parts;
        for (const auto &x : b) {
            row.push_back(integer_json(x));
            parts.push_back(x.get_str());
        }
        WeylOp box = box_from_relation(c, b);
        relations.push_back({{"vector", row}, {"box", op_json(box)}});
        r.text.push_back("    (" + join(parts) + ")  box: " + box.str());
    }
    d["relations"] = relations;
    d["saturated"] = is_saturated(rel.vectors);
    json eulers = json::array();
    auto z = euler_operators(c);
    for (std::size_t k = 0; k < z.size(); ++k) {
        eulers.push_back(op_json(z[k]));
        r.text.push_back("  Z_" + std::to_string(k + 1) + " = " + z[k].str());
    }
    d["euler_operators"] = eulers;
    json beta = json::array();
    for (const auto &b : beta_from_class(p.idx)) {
        beta.push_back(b.str());
    }
    d["beta"] = beta;
    json gens = json::array();
    for (const auto &g : gkz_generators(p.idx, c)) {
        gens.push_back(op_json(g));
    }
    d["generators"] = gens;

    GridOutcome grid = certificate_grid(p, p.spec.certificate_grid);
    d["certificates"] = {{"grid", p.spec.certificate_grid}, {"checked", grid.checked}, {"failures", grid.failures}};
    r.text.push_back("  certificates: " + std::to_string(grid.checked - grid.failures.size()) + "/" +
                     std::to_string(grid.checked) + " pass");
    if (!grid.failures.empty()) {
        r.exit_code = CertificateFailure;
    }
    return r;
}

Result cmd_annihilator(const Problem &p, const Options &o) {
    Result r = start(p, "annihilator");
    json &d = r.document;
    std::size_t param = derivation_index(p);
    Specialization sp = make_specialization(p);
    PullbackBounds b = bounds_of(p, o);
    unsigned max_order = o.max_order.value_or(p.spec.max_order);
    d["bounds"] = {{"mu_degree", b.mu_degree}, {"del_order", b.del_order}, {"max_order", max_order}};
    d["derivation"] = p.twist.params.vars->at(param);

    std::vector<WeylOp> gens = gkz_generators(p.idx, p.config);
    QuotientReport q = star_quotient_basis(gens, sp, b.mu_degree, b.del_order);
    d["quotient"] = {{"basis", q.basis_strings}, {"stable", q.stable}, {"notes", q.notes}};
    r.text.push_back("  quotient basis: {" + join(q.basis_strings) + "}" + (q.stable ? " (stable)" : " (unstable)"));
    for (const auto &n : q.notes) {
        r.text.push_back("    note: " + n);
    }
    if (!q.stable) {
        r.exit_code = Unstable;
        return r;
    }

    StarSpan span = ideal_span(gens, sp, b.mu_degree, b.del_order);
    json forms = json::array();
    StarOperator cur = StarOperator::unit(p.config.mu_vars, sp.params);
    for (unsigned k = 0; k <= std::min<unsigned>(b.del_order, max_order); ++k) {
        StarClass nf = star_normal_form(span, cur);
        forms.push_back({{"power", k}, {"rho", cur.str()}, {"normal_form", star_class_operator(span, nf).str()}});
        cur = derivation_action(cur, sp, param);
    }
    d["normal_forms"] = forms;

    AnnihilatorResult a = minimal_annihilator(p.idx, sp, param, max_order, b);
    json ann = {{"found", a.found}, {"warnings", a.warnings}};
    if (a.found) {
        json witness = json::array();
        for (const auto &[k, coef] : a.witness) {
            const auto &w = span.witnesses()[k];
            witness.push_back({{"element", k},
                               {"generator", w.generator + 1},
                               {"beta", w.beta},
                               {"coefficient", coef.str()}});
        }
        ann["order"] = a.order;
        ann["operator"] = op_json(a.op);
        ann["coefficients"] = vector_json(a.coefficients);
        ann["witness"] = witness;
        r.text.push_back("  operator (order " + std::to_string(a.order) + "): " + a.op.str());
    } else {
        ann["result"] = "none up to " + std::to_string(max_order);
        r.text.push_back("  operator: none up to order " + std::to_string(max_order));
    }
    for (const auto &w : a.warnings) {
        r.text.push_back("  warning: " + w);
    }
    d["annihilator"] = ann;
    return r;
}

Result cmd_picard_fuchs(const Problem &p, const Options &o) {
    Result r = start(p, "picard-fuchs");
    json &d = r.document;
    std::size_t param = derivation_index(p);
    DegreeBox box = default_box(p.twist);
    if (p.spec.x_degree) {
        box.max_x = p.spec.x_degree;
    }
    if (p.spec.y_degree) {
        box.max_y = p.spec.y_degree;
    }
    if (o.x_degree) {
        box.max_x = *o.x_degree;
    }
    if (o.y_degree) {
        box.max_y = *o.y_degree;
    }
    unsigned max_order = o.max_order.value_or(p.spec.max_order);
    d["box"] = {{"x_degree", box.max_x}, {"y_degree", box.max_y}};
    d["derivation"] = p.twist.params.vars->at(param);

    CohomologySpace space = build_space(p.twist, box);
    MultiPoly cls_poly = class_monomial(p.twist, p.idx.u, p.idx.v);
    d["basis"] = space.basis_strings();
    d["dimension"] = space.dimension();
    r.text.push_back("  box x<=" + std::to_string(box.max_x) + " y<=" + std::to_string(box.max_y) +
                     ", basis: {" + join(space.basis_strings()) + "}");

    std::vector<MultiPoly> probes = {cls_poly};
    for (std::size_t b = 0; b < space.dimension(); ++b) {
        probes.push_back(space.basis_poly(b));
    }
    StabilityReport st = check_stability(p.twist, box, probes);
    d["stability"] = {{"stable", st.stable}, {"basis_doubled", st.basis_large}, {"notes", st.notes}};
    r.text.push_back(std::string("  stability under doubling: ") + (st.stable ? "stable" : "unstable"));
    if (!st.stable) {
        for (const auto &n : st.notes) {
            r.text.push_back("    note: " + n);
        }
        r.exit_code = Unstable;
        return r;
    }

    json gm = json::array();
    std::vector<RatMatrix> mats;
    for (std::size_t k = 0; k < p.twist.params.vars->size(); ++k) {
        mats.push_back(gm_action(space, k));
        gm.push_back({{"param", p.twist.params.vars->at(k)}, {"matrix", matrix_json(mats.back())}});
        r.text.push_back("  Gauss-Manin matrix d/d" + p.twist.params.vars->at(k) + ":");
        for (const auto &row : mats.back()) {
            std::vector<std::string> cells;
            for (const auto &x : row) {
                cells.push_back(x.str());
            }
            r.text.push_back("    [" + join(cells, " | ") + "]");
        }
    }
    d["gauss_manin"] = gm;
    if (mats.size() >= 2) {
        bool flat = true;
        const ParamContext &ctx = p.twist.params;
        for (std::size_t a = 0; a < mats.size(); ++a) {
            for (std::size_t b = a + 1; b < mats.size(); ++b) {
                RatMatrix ab = mat_mul(mats[a], mats[b], ctx);
                RatMatrix ba = mat_mul(mats[b], mats[a], ctx);
                for (std::size_t i = 0; i < space.dimension(); ++i) {
                    for (std::size_t j = 0; j < space.dimension(); ++j) {
                        RatFunc curv = mats[b][i][j].derivative(a) - mats[a][i][j].derivative(b) + ab[i][j] - ba[i][j];
                        flat = flat && curv.is_zero();
                    }
                }
            }
        }
        d["integrable"] = flat;
        r.text.push_back(std::string("  integrability: ") + (flat ? "holds" : "fails"));
        if (!flat) {
            r.exit_code = CertificateFailure;
        }
    }

    CohomClass cls = normal_form(space, cls_poly);
    d["class"] = {{"monomial", cls_poly.str()}, {"coordinates", vector_json(cls.coords)}};
    CyclicAnnihilator ann = cyclic_annihilator(space, cls, param, max_order);
    json aj = {{"found", ann.found}};
    if (ann.found) {
        aj["order"] = ann.order;
        aj["operator"] = op_json(ann.op);
        aj["coefficients"] = vector_json(ann.coefficients);
        r.text.push_back("  operator (order " + std::to_string(ann.order) + "): " + ann.op.str());
        if (!p.spec.oracle.empty()) {
            d["oracle"] = oracle_report(p.spec, ann.coefficients, r.text);
            if (!d["oracle"]["pass"].get<bool>()) {
                r.exit_code = CertificateFailure;
            }
        }
    } else {
        aj["result"] = "none up to " + std::to_string(max_order);
        r.text.push_back("  operator: none up to order " + std::to_string(max_order));
    }
    d["annihilator"] = aj;

    if (o.cross_check) {
        Specialization sp = make_specialization(p);
        AnnihilatorResult pull = minimal_annihilator(p.idx, sp, param, max_order, bounds_of(p, o));
        std::string verdict = "routes differ";
        if (pull.found == ann.found && (!ann.found || pull.op == ann.op)) {
            verdict = "routes agree";
        } else if (pull.found && ann.found &&
                   right_divides(pull.coefficients, ann.coefficients, param, p.twist.params)) {
            verdict = "routes agree up to a left factor";
        }
        bool agree = verdict != "routes differ";
        json cc = {{"verdict", verdict}, {"pullback_found", pull.found}};
        if (pull.found) {
            cc["pullback_operator"] = op_json(pull.op);
        }
        d["cross_check"] = cc;
        r.text.push_back("  cross-check: " + verdict);
        if (!agree) {
            r.exit_code = CertificateFailure;
        }
    }
    return r;
}

Result cmd_verify(const Problem &p, const Options &) {
    Result r = start(p, "verify");
    json &d = r.document;
    const std::size_t rr = p.twist.r();
    std::vector<MultiPoly> fx;
    std::size_t maxdeg = 0;
    for (const auto &f : p.twist.f) {
        fx.push_back(embed(f, p.twist.x_vars));
        maxdeg = std::max(maxdeg, f.total_degree());
    }
    json kos = json::array();
    for (std::size_t n = 0; n <= rr; ++n) {
        unsigned bound = n < rr ? p.spec.koszul_degree : 0;
        std::size_t rank = koszul_rank(fx, n, bound);
        kos.push_back({{"n", n}, {"degree_bound", bound}, {"rank", rank}});
        r.text.push_back("  Koszul H^" + std::to_string(n) + " (degree <= " + std::to_string(bound) +
                         "): rank " + std::to_string(rank));
    }
    d["koszul"] = kos;

    GridOutcome grid = certificate_grid(p, p.spec.certificate_grid);
    d["certificates"] = {{"grid", p.spec.certificate_grid}, {"checked", grid.checked}, {"failures", grid.failures}};
    r.text.push_back("  certificates: " + std::to_string(grid.checked - grid.failures.size()) + "/" +
                     std::to_string(grid.checked) + " pass");
    if (!grid.failures.empty()) {
        r.exit_code = CertificateFailure;
    }

    unsigned cap = p.spec.smoothness_cap ? p.spec.smoothness_cap : std::max<unsigned>(6, 2 * maxdeg);
    SmoothnessCertificate sc = smoothness_certificate(p.twist, cap);
    json sj = {{"status", status_name(sc.status)}, {"degree_cap", cap}, {"generators", sc.labels}};
    if (sc.certified()) {
        json cof = json::array();
        for (const auto &c : sc.cofactors) {
            cof.push_back(c.str());
        }
        sj["cofactors"] = cof;
    }
    d["smoothness"] = sj;
    r.text.push_back("  smoothness certificate: " + status_name(sc.status));
    if (!sc.certified()) {
        r.exit_code = CertificateFailure;
    }
    return r;
}

Result run(const std::string &spec_text, const Options &opts) {
    auto fail = [&](int code, const std::string &kind, const std::string &message) {
        Result r;
        r.exit_code = code;
        r.document = {{"format_version", kFormatVersion},
                      {"command", opts.command},
                      {"error", {{"kind", kind}, {"message", message}}}};
        r.text.push_back("error (" + kind + "): " + message);
        return r;
    };
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
        Problem p = build_problem(parse_spec(spec_text), opts);
        if (opts.command == "gkz") {
            r = cmd_gkz(p, opts);
        } else if (opts.command == "annihilator") {
            r = cmd_annihilator(p, opts);
        } else if (opts.command == "picard-fuchs") {
            r = cmd_picard_fuchs(p, opts);
        } else if (opts.command == "verify") {
            r = cmd_verify(p, opts);
        } else {
            return fail(ParseFailure, "usage", "unknown command " + opts.command);
        }
    } catch (const ParseError &e) {
        return fail(ParseFailure, "parse", e.what());
    } catch (const VariableMismatch &e) {
        return fail(ParseFailure, "parse", e.what());
    } catch (const TruncationError &e) {
        return fail(Unstable, "instability", e.what());
    } catch (const IdentityFailure &e) {
        return fail(CertificateFailure, "certificate", e.what());
    } catch (const std::exception &e) {
        return fail(Failure, "error", e.what());
    }
    auto t1 = std::chrono::steady_clock::now();
    char buf[64];
    std::snprintf(buf, sizeof buf, "  elapsed: %.1f ms", std::chrono::duration<double, std::milli>(t1 - t0).count());
    r.text.push_back(buf);
    return r;
}

std::string machine_format(const Result &r) { return r.document.dump(2) + "\n"; }

std::string text_format(const Result &r) {
    std::string out;
    for (const auto &line : r.text) {
        out += line + "\n";
    }
    return out;
}

} // namespace dwork::cli
