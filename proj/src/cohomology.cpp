#include "dwork/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

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

unsigned part_degree(const Monomial &m, std::size_t begin, std::size_t end) {
    unsigned d = 0;
    for (std::size_t i = begin; i < end; ++i) {
        d += m[i];
    }
    return d;
}

MultiPoly monomial_poly(const TwistData &td, const Monomial &m) {
    return MultiPoly::monomial(td.poly_vars, td.params, m, RatFunc::one(td.params));
}

VarsPtr no_vars() {
    static const VarsPtr none = make_vars({});
    return none;
}

} // namespace

DegreeBox default_box(const TwistData &td) {
    std::size_t maxdeg = 0;
    for (const auto &f : td.f) {
        maxdeg = std::max(maxdeg, f.total_degree());
    }
    return {static_cast<unsigned>((td.N() + 1) * maxdeg), static_cast<unsigned>(td.N())};
}

DegreeBox doubled(const DegreeBox &b) { return {2 * b.max_x, 2 * b.max_y}; }

CohomologySpace::CohomologySpace(TwistData twist, DegreeBox box, std::optional<DegreeBox> core)
    : twist_(std::move(twist)), box_(box), core_(core.value_or(DegreeBox{box.max_x / 2, box.max_y / 2})),
      echelon_(twist_.params) {
    const std::size_t N = twist_.N();
    const std::size_t r = twist_.r();
    for (const auto &f : twist_.f) {
        if (f.is_zero()) {
            throw PreconditionError("zero polynomial among the equations");
        }
        if (f.total_degree() > box_.max_x) {
            throw TruncationError("degree box too small to contain the equations");
        }
    }
    if (core_.max_x > box_.max_x || core_.max_y > box_.max_y) {
        throw PreconditionError("core region must lie inside the degree box");
    }

    std::vector<Monomial> all;
    enumerate_monomials(N, box_.max_x, [&](const Monomial &u) {
        enumerate_monomials(r, box_.max_y, [&](const Monomial &v) {
            Monomial m = u;
            m.insert(m.end(), v.begin(), v.end());
            all.push_back(std::move(m));
        });
    });
    auto key = [&](const Monomial &m) {
        Monomial u(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(N));
        Monomial v(m.begin() + static_cast<std::ptrdiff_t>(N), m.end());
        return std::make_tuple(in_core(m) ? 0 : 1, part_degree(m, N, N + r), part_degree(m, 0, N), u, v);
    };
    std::sort(all.begin(), all.end(), [&](const Monomial &a, const Monomial &b) { return key(a) < key(b); });
    columns_ = std::move(all);
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        index_.emplace(columns_[c], c);
    }

    for (std::size_t i = 0; i < N; ++i) {
        MultiPoly acc(twist_.poly_vars, twist_.params);
        for (std::size_t j = 0; j < r; ++j) {
            acc += twist_.f[j].partial(i) * MultiPoly::variable(twist_.poly_vars, twist_.params, N + j);
        }
        dx_factor_.push_back(std::move(acc));
    }

    RatFunc one = RatFunc::one(twist_.params);
    for (const auto &m : columns_) {
        for (std::size_t i = 0; i < N; ++i) {
            preimages_.push_back({'x', i, m});
        }
        for (std::size_t j = 0; j < r; ++j) {
            preimages_.push_back({'y', j, m});
        }
    }
    std::vector<Preimage> kept;
    for (const auto &p : preimages_) {
        std::optional<SparseVec<RatFunc>> image;
        {
            MultiPoly mp = monomial_poly(twist_, p.monomial);
            MultiPoly img = p.kind == 'x' ? mp.partial(p.var) + dx_factor_[p.var] * mp
                                          : mp.partial(N + p.var) + twist_.f[p.var] * mp;
            image = to_vector(img);
        }
        if (!image) {
            continue;
        }
        std::size_t k = kept.size();
        kept.push_back(p);
        echelon_.insert(std::move(*image), {{k, one}});
    }
    preimages_ = std::move(kept);
    echelon_.finalize();

    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (in_core(columns_[c]) && !echelon_.is_pivot(c)) {
            basis_.push_back(columns_[c]);
        }
    }
}

bool CohomologySpace::in_core(const Monomial &m) const {
    const std::size_t N = twist_.N();
    return part_degree(m, 0, N) <= core_.max_x && part_degree(m, N, m.size()) <= core_.max_y;
}

std::optional<std::size_t> CohomologySpace::column_of(const Monomial &m) const {
    auto it = index_.find(m);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<SparseVec<RatFunc>> CohomologySpace::to_vector(const MultiPoly &p) const {
    SparseVec<RatFunc> v;
    if (p.vars() == nullptr) {
        return v;
    }
    if (!same_vars(p.vars(), twist_.poly_vars)) {
        throw VariableMismatch("polynomial is not over the cohomology ring");
    }
    v.reserve(p.size());
    for (const auto &t : p.terms()) {
        auto c = column_of(t.exponents);
        if (!c) {
            return std::nullopt;
        }
        v.emplace_back(*c, t.coeff);
    }
    std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first > b.first; });
    return v;
}

MultiPoly CohomologySpace::to_poly(const SparseVec<RatFunc> &v) const {
    std::vector<MultiPoly::Term> terms;
    for (const auto &[c, x] : v) {
        terms.push_back({columns_.at(c), x});
    }
    return MultiPoly::from_terms(twist_.poly_vars, twist_.params, std::move(terms));
}

MultiPoly CohomologySpace::relation_image(std::size_t k) const {
    const auto &p = preimages_.at(k);
    MultiPoly mp = monomial_poly(twist_, p.monomial);
    if (p.kind == 'x') {
        return twist_x(twist_, p.var).apply(mp);
    }
    return twist_y(twist_, p.var).apply(mp);
}

MultiPoly CohomologySpace::basis_poly(std::size_t b) const { return monomial_poly(twist_, basis_.at(b)); }

std::vector<std::string> CohomologySpace::basis_strings() const {
    std::vector<std::string> out;
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        out.push_back(basis_poly(b).str());
    }
    return out;
}

CohomologySpace build_space(const TwistData &twist, DegreeBox box, std::optional<DegreeBox> core) {
    return CohomologySpace(twist, box, core);
}

CohomClass normal_form(const CohomologySpace &space, const MultiPoly &p) {
    auto v = space.to_vector(p);
    if (!v) {
        throw PreconditionError("polynomial not supported in the degree box: " + p.str());
    }
    auto red = space.echelon().reduce(std::move(*v));
    CohomClass out;
    out.coords.assign(space.dimension(), RatFunc::zero(space.field()));
    const auto &basis = space.basis();
    for (const auto &[c, x] : red.residue) {
        const Monomial &m = space.columns()[c];
        auto it = std::lower_bound(basis.begin(), basis.end(), m, [&](const Monomial &a, const Monomial &b) {
            return *space.column_of(a) < *space.column_of(b);
        });
        if (it == basis.end() || *it != m) {
            throw TruncationError("residue leaves the core region; enlarge the degree box");
        }
        out.coords[static_cast<std::size_t>(it - basis.begin())] = x;
    }
    out.witness = std::move(red.combination);
    return out;
}

MultiPoly class_poly(const CohomologySpace &space, const CohomClass &c) {
    MultiPoly acc(space.twist().poly_vars, space.field());
    for (std::size_t b = 0; b < c.coords.size(); ++b) {
        acc += space.basis_poly(b) * c.coords[b];
    }
    return acc;
}

RatMatrix gm_action(const CohomologySpace &space, std::size_t param) {
    const auto &td = space.twist();
    if (param >= td.params.vars->size()) {
        throw PreconditionError("unknown derivation");
    }
    const std::size_t n = space.dimension();
    MultiPoly lift(td.poly_vars, td.params);
    for (std::size_t j = 0; j < td.r(); ++j) {
        lift += coeff_derivation(td.f[j], param) * MultiPoly::variable(td.poly_vars, td.params, td.N() + j);
    }
    RatMatrix a(n, RatVector(n, RatFunc::zero(td.params)));
    for (std::size_t b = 0; b < n; ++b) {
        CohomClass col = normal_form(space, lift * space.basis_poly(b));
        for (std::size_t i = 0; i < n; ++i) {
            a[i][b] = col.coords[i];
        }
    }
    return a;
}

RatMatrix gm_action(const CohomologySpace &space, const std::string &param) {
    auto p = var_index(*space.field().vars, param);
    if (!p) {
        throw PreconditionError("unknown derivation d/d" + param);
    }
    return gm_action(space, *p);
}

RatVector gm_apply(const RatMatrix &a, const RatVector &v, std::size_t param) {
    if (v.empty()) {
        return v;
    }
    RatVector out = mat_vec(a, v, v[0].context());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] += v[i].derivative(param);
    }
    return out;
}

WeylOp parameter_operator(const ParamContext &params, std::size_t param, const RatVector &lower) {
    VarsPtr base = make_vars({params.vars->at(param)});
    VarsPtr none = no_vars();
    WeylOp op = WeylOp::derivative(base, none, params, 0, static_cast<Exponent>(lower.size()));
    for (std::size_t i = 0; i < lower.size(); ++i) {
        op += WeylOp::monomial(base, Monomial{static_cast<Exponent>(i)}, MultiPoly::constant(none, params, lower[i]));
    }
    return op;
}

RatVector apply_operator_to_class(const RatMatrix &a, const RatVector &coefficients, const RatVector &v,
                                  std::size_t param) {
    RatVector cur = v;
    RatVector acc(v.size(), RatFunc::zero(v.empty() ? ParamContext{} : v[0].context()));
    for (std::size_t i = 0; i <= coefficients.size(); ++i) {
        const RatFunc c = i < coefficients.size() ? coefficients[i] : RatFunc::one(acc[0].context());
        for (std::size_t k = 0; k < v.size(); ++k) {
            acc[k] += c * cur[k];
        }
        if (i < coefficients.size()) {
            cur = gm_apply(a, cur, param);
        }
    }
    return acc;
}

CyclicAnnihilator cyclic_annihilator(const CohomologySpace &space, const CohomClass &cls, std::size_t param,
                                     std::size_t max_order) {
    if (max_order < 1) {
        throw PreconditionError("max_order must be at least 1");
    }
    const auto &ctx = space.field();
    RatMatrix a = gm_action(space, param);
    CyclicAnnihilator out;
    std::vector<RatVector> orbit = {cls.coords};
    bool zero = std::all_of(cls.coords.begin(), cls.coords.end(), [](const RatFunc &x) { return x.is_zero(); });
    if (zero) {
        out.found = true;
        out.op = parameter_operator(ctx, param, {});
        return out;
    }
    for (std::size_t m = 1; m <= max_order; ++m) {
        orbit.push_back(gm_apply(a, orbit.back(), param));
        RatMatrix sys(space.dimension(), RatVector(m, RatFunc::zero(ctx)));
        RatVector rhs(space.dimension(), RatFunc::zero(ctx));
        for (std::size_t i = 0; i < space.dimension(); ++i) {
            for (std::size_t k = 0; k < m; ++k) {
                sys[i][k] = orbit[k][i];
            }
            rhs[i] = -orbit[m][i];
        }
        LinearSolution s = ratfunc_solve_linear(sys, rhs, ctx);
        if (!s.consistent) {
            continue;
        }
        if (!s.kernel.empty()) {
            throw IdentityFailure("dependent orbit below the minimal order");
        }
        out.found = true;
        out.order = m;
        out.coefficients = s.solution;
        out.op = parameter_operator(ctx, param, s.solution);
        RatVector check = apply_operator_to_class(a, s.solution, cls.coords, param);
        for (const auto &x : check) {
            if (!x.is_zero()) {
                throw IdentityFailure("cyclic annihilator does not annihilate the class");
            }
        }
        return out;
    }
    return out;
}

StabilityReport check_stability(const TwistData &twist, DegreeBox box, const std::vector<MultiPoly> &probes) {
    StabilityReport rep;
    CohomologySpace small(twist, box);
    CohomologySpace large(twist, doubled(box));
    rep.basis_small = small.basis_strings();
    rep.basis_large = large.basis_strings();
    rep.stable = rep.basis_small == rep.basis_large;
    if (!rep.stable) {
        rep.notes.push_back("basis changes under doubling");
        return rep;
    }
    for (const auto &p : probes) {
        try {
            if (!(normal_form(small, p) == normal_form(large, p))) {
                rep.stable = false;
                rep.notes.push_back("normal form of " + p.str() + " changes under doubling");
            }
        } catch (const Error &e) {
            rep.stable = false;
            rep.notes.push_back("normal form of " + p.str() + ": " + e.what());
        }
    }
    return rep;
}

namespace {

struct KoszulIndexer {
    std::map<std::pair<std::vector<std::size_t>, Monomial>, std::size_t> index;
    std::size_t next = 0;

    std::size_t get(const std::vector<std::size_t> &s, const Monomial &m) {
        auto key = std::make_pair(s, m);
        auto it = index.find(key);
        if (it != index.end()) {
            return it->second;
        }
        index.emplace(std::move(key), next);
        return next++;
    }
};

void subsets(std::size_t r, std::size_t n, const std::function<void(const std::vector<std::size_t> &)> &emit) {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == n) {
            emit(cur);
            return;
        }
        for (std::size_t j = start; j < r; ++j) {
            cur.push_back(j);
            rec(j + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

// Image of m e_S under wedge with sum f_j e_j.
SparseVec<RatFunc> koszul_image(const std::vector<MultiPoly> &f, const std::vector<std::size_t> &s, const Monomial &m,
                                KoszulIndexer &idx) {
    std::map<std::size_t, RatFunc> acc;
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (std::find(s.begin(), s.end(), j) != s.end()) {
            continue;
        }
        std::size_t below = static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](std::size_t k) { return k < j; }));
        std::vector<std::size_t> t = s;
        t.insert(std::lower_bound(t.begin(), t.end(), j), j);
        for (const auto &term : f[j].terms()) {
            RatFunc c = below % 2 == 0 ? term.coeff : -term.coeff;
            std::size_t col = idx.get(t, monomial_product(term.exponents, m));
            auto it = acc.find(col);
            if (it == acc.end()) {
                acc.emplace(col, c);
            } else {
                it->second += c;
            }
        }
    }
    SparseVec<RatFunc> out;
    for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
        if (!it->second.is_zero()) {
            out.emplace_back(it->first, it->second);
        }
    }
    return out;
}

} // namespace

std::size_t koszul_rank(const std::vector<MultiPoly> &f, std::size_t n, unsigned degree_bound) {
    const std::size_t r = f.size();
    if (r == 0 || n > r) {
        throw PreconditionError("Koszul degree out of range");
    }
    const std::size_t nvars = f[0].nvars();
    const ParamContext ctx = f[0].context();
    unsigned slack = 0;
    for (const auto &fj : f) {
        f[0].check_compatible(fj);
        slack += static_cast<unsigned>(fj.total_degree());
    }

    // cocycles of degree <= bound
    std::size_t cells = 0;
    std::size_t image_rank = 0;
    {
        KoszulIndexer target;
        Echelon<RatFunc> e(ctx);
        subsets(r, n, [&](const std::vector<std::size_t> &s) {
            enumerate_monomials(nvars, degree_bound, [&](const Monomial &m) {
                ++cells;
                if (n < r) {
                    e.insert(koszul_image(f, s, m, target), {});
                }
            });
        });
        image_rank = e.rank();
    }
    std::size_t cocycles = cells - image_rank;
    if (n == 0 || cocycles == 0) {
        return cocycles;
    }

    // coboundaries of degree <= bound; low-degree cells take the smallest indices
    KoszulIndexer cols;
    subsets(r, n, [&](const std::vector<std::size_t> &s) {
        enumerate_monomials(nvars, degree_bound, [&](const Monomial &m) { cols.get(s, m); });
    });
    const std::size_t low = cols.next;
    Echelon<RatFunc> e(ctx);
    subsets(r, n - 1, [&](const std::vector<std::size_t> &s) {
        enumerate_monomials(nvars, degree_bound + slack, [&](const Monomial &m) { e.insert(koszul_image(f, s, m, cols), {}); });
    });
    std::size_t boundaries = 0;
    for (const auto &[col, row] : e.pivots()) {
        if (col < low) {
            ++boundaries;
        }
    }
    return cocycles - boundaries;
}

std::vector<MultiPoly> lower_y_degree(const CohomologySpace &space, const std::vector<MultiPoly> &mu) {
    const TwistData &td = space.twist();
    const std::size_t N = td.N();
    const std::size_t r = td.r();
    if (mu.size() != r) {
        throw PreconditionError("one polynomial per equation is required");
    }
    const ParamContext &ctx = td.params;
    unsigned top = 0;
    bool any = false;
    for (const auto &m : mu) {
        for (const auto &t : m.terms()) {
            top = std::max(top, part_degree(t.exponents, N, N + r));
            any = true;
        }
    }
    if (!any) {
        return mu;
    }

    // top slices grouped by y-monomial: w -> (j -> x-polynomial over poly_vars)
    std::map<Monomial, std::vector<MultiPoly>> slices;
    for (std::size_t j = 0; j < r; ++j) {
        for (const auto &t : mu[j].terms()) {
            if (part_degree(t.exponents, N, N + r) != top) {
                continue;
            }
            Monomial w(t.exponents.begin() + static_cast<std::ptrdiff_t>(N), t.exponents.end());
            Monomial xpart = t.exponents;
            std::fill(xpart.begin() + static_cast<std::ptrdiff_t>(N), xpart.end(), 0);
            auto &vec = slices.try_emplace(w, r, MultiPoly(td.poly_vars, ctx)).first->second;
            vec[j] += MultiPoly::monomial(td.poly_vars, ctx, xpart, t.coeff);
        }
    }
    for (const auto &[w, t] : slices) {
        MultiPoly check(td.poly_vars, ctx);
        for (std::size_t j = 0; j < r; ++j) {
            check += td.f[j] * t[j];
        }
        if (!check.is_zero()) {
            throw PreconditionError("top y-slices are not a Koszul cocycle");
        }
    }

    std::vector<Monomial> xmonos;
    enumerate_monomials(N, space.box().max_x, [&](const Monomial &u) {
        Monomial m = u;
        m.resize(N + r, 0);
        xmonos.push_back(m);
    });
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            pairs.emplace_back(i, j);
        }
    }

    std::vector<MultiPoly> out = mu;
    for (const auto &[w, t] : slices) {
        // unknown (p, a): coefficient of x^a in eta_{pairs[p]}
        std::map<std::pair<std::size_t, Monomial>, std::size_t> rows;
        std::vector<std::map<std::size_t, RatFunc>> columns(pairs.size() * xmonos.size());
        auto row_of = [&](std::size_t j, const Monomial &m) {
            auto key = std::make_pair(j, m);
            auto it = rows.find(key);
            if (it != rows.end()) {
                return it->second;
            }
            std::size_t k = rows.size();
            rows.emplace(std::move(key), k);
            return k;
        };
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            auto [i, j] = pairs[p];
            for (std::size_t a = 0; a < xmonos.size(); ++a) {
                auto &col = columns[p * xmonos.size() + a];
                // eta_ij contributes +eta_ij f_i to t_j and -eta_ij f_j to t_i
                for (const auto &term : td.f[i].terms()) {
                    col.try_emplace(row_of(j, monomial_product(term.exponents, xmonos[a])), RatFunc::zero(ctx))
                        .first->second += term.coeff;
                }
                for (const auto &term : td.f[j].terms()) {
                    col.try_emplace(row_of(i, monomial_product(term.exponents, xmonos[a])), RatFunc::zero(ctx))
                        .first->second -= term.coeff;
                }
            }
        }
        for (std::size_t j = 0; j < r; ++j) {
            for (const auto &term : t[j].terms()) {
                row_of(j, term.exponents);
            }
        }
        RatMatrix a(rows.size(), RatVector(columns.size(), RatFunc::zero(ctx)));
        RatVector b(rows.size(), RatFunc::zero(ctx));
        for (std::size_t c = 0; c < columns.size(); ++c) {
            for (const auto &[row, v] : columns[c]) {
                a[row][c] = v;
            }
        }
        for (std::size_t j = 0; j < r; ++j) {
            for (const auto &term : t[j].terms()) {
                b[rows.at({j, term.exponents})] = term.coeff;
            }
        }
        LinearSolution s = ratfunc_solve_linear(a, b, ctx);
        if (!s.consistent) {
            throw TruncationError("syzygy not found inside the degree box; enlarge the box");
        }
        Monomial wy(N + r, 0);
        std::copy(w.begin(), w.end(), wy.begin() + static_cast<std::ptrdiff_t>(N));
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            auto [i, j] = pairs[p];
            MultiPoly eta(td.poly_vars, ctx);
            for (std::size_t k = 0; k < xmonos.size(); ++k) {
                const RatFunc &c = s.solution[p * xmonos.size() + k];
                if (!c.is_zero()) {
                    eta += MultiPoly::monomial(td.poly_vars, ctx, monomial_product(xmonos[k], wy), c);
                }
            }
            if (eta.is_zero()) {
                continue;
            }
            // mu'_j -= D_{y_i}(eta_ij), mu'_i -= D_{y_j}(eta_ji) = + D_{y_j}(eta_ij)
            out[j] -= twist_y(td, i).apply(eta);
            out[i] += twist_y(td, j).apply(eta);
        }
    }

    MultiPoly before(td.poly_vars, ctx);
    MultiPoly after(td.poly_vars, ctx);
    for (std::size_t j = 0; j < r; ++j) {
        before += twist_y(td, j).apply(mu[j]);
        after += twist_y(td, j).apply(out[j]);
    }
    if (!(before == after)) {
        throw IdentityFailure("degree lowering changed the D_y image");
    }
    for (const auto &m : out) {
        for (const auto &term : m.terms()) {
            if (part_degree(term.exponents, N, N + r) >= top) {
                throw IdentityFailure("degree lowering did not lower the top y-degree");
            }
        }
    }
    return out;
}

} // namespace dwork
