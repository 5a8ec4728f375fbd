#include "dwork/geometry.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace dwork {

void check_sigma(std::size_t N, std::size_t r, const SigmaSet &sigma) {
    if (sigma.indices.size() != r) {
        throw PreconditionError("sigma must have one index per equation");
    }
    for (std::size_t k = 0; k < sigma.indices.size(); ++k) {
        if (sigma.indices[k] >= N || (k > 0 && sigma.indices[k] <= sigma.indices[k - 1])) {
            throw PreconditionError("sigma must be strictly increasing and within range");
        }
    }
}

std::vector<SigmaSet> all_sigmas(std::size_t N, std::size_t r) {
    std::vector<SigmaSet> out;
    SigmaSet cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.indices.size() == r) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < N; ++i) {
            cur.indices.push_back(i);
            rec(i + 1);
            cur.indices.pop_back();
        }
    };
    rec(0);
    return out;
}

namespace {

MultiPoly determinant(std::vector<std::vector<MultiPoly>> m, const MultiPoly &one) {
    const std::size_t n = m.size();
    if (n == 0) {
        return one;
    }
    // cofactor expansion along the first row; r is small
    MultiPoly acc = one - one;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) {
            continue;
        }
        std::vector<std::vector<MultiPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<MultiPoly> row;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != c) {
                    row.push_back(m[i][j]);
                }
            }
            minor.push_back(std::move(row));
        }
        MultiPoly term = m[0][c] * determinant(std::move(minor), one);
        acc = c % 2 == 0 ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

MultiPoly jacobian_minor(const TwistData &td, const SigmaSet &sigma) {
    check_sigma(td.N(), td.r(), sigma);
    std::vector<std::vector<MultiPoly>> m;
    for (const auto &f : td.f) {
        std::vector<MultiPoly> row;
        for (std::size_t i : sigma.indices) {
            row.push_back(embed(f.partial(i), td.x_vars));
        }
        m.push_back(std::move(row));
    }
    MultiPoly one = MultiPoly::constant(td.x_vars, td.params, RatFunc::one(td.params));
    return determinant(std::move(m), one);
}

int sign_sigma(std::size_t N, const SigmaSet &sigma) {
    check_sigma(N, sigma.indices.size(), sigma);
    // each sigma index passes over the larger complement indices on its way to the tail
    std::size_t moves = 0;
    for (std::size_t k = 0; k < sigma.indices.size(); ++k) {
        moves += (N - 1 - sigma.indices[k]) - (sigma.indices.size() - 1 - k);
    }
    return moves % 2 == 0 ? 1 : -1;
}

OmegaForm omega_form(const TwistData &td, const std::vector<unsigned> &u, const SigmaSet &sigma) {
    if (u.size() != td.N()) {
        throw PreconditionError("u must have one entry per x variable");
    }
    OmegaForm w;
    w.u = u;
    w.sigma = sigma;
    w.sign = sign_sigma(td.N(), sigma);
    w.jacobian = jacobian_minor(td, sigma);
    for (std::size_t i = 0; i < td.N(); ++i) {
        if (std::find(sigma.indices.begin(), sigma.indices.end(), i) == sigma.indices.end()) {
            w.complement.push_back(i);
        }
    }
    return w;
}

std::string OmegaForm::str(const TwistData &td) const {
    Monomial m(u.begin(), u.end());
    MultiPoly num = MultiPoly::monomial(td.x_vars, td.params, m, RatFunc::from_integer(sign, td.params));
    std::string out = num.str();
    std::string wedge;
    for (std::size_t i : complement) {
        wedge += (wedge.empty() ? "" : "^") + std::string("d") + td.x_vars->at(i);
    }
    if (!wedge.empty()) {
        out += "*" + wedge;
    }
    return out + " / (" + jacobian.str() + ")";
}

std::string status_name(SmoothnessCertificate::Status s) {
    switch (s) {
    case SmoothnessCertificate::Status::Certified:
        return "certified";
    case SmoothnessCertificate::Status::ProperIdeal:
        return "proper-ideal";
    case SmoothnessCertificate::Status::CapReached:
        return "inconclusive";
    }
    return "inconclusive";
}

namespace {

struct Tracked {
    MultiPoly p;
    std::vector<MultiPoly> co;
};

bool divides(const Monomial &a, const Monomial &b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
    }
    return true;
}

Monomial lcm(const Monomial &a, const Monomial &b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        m[i] = std::max(a[i], b[i]);
    }
    return m;
}

Monomial quotient(const Monomial &a, const Monomial &b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        m[i] = a[i] - b[i];
    }
    return m;
}

void subtract_multiple(Tracked &t, const Tracked &b, const MultiPoly &q) {
    t.p = t.p - q * b.p;
    for (std::size_t i = 0; i < t.co.size(); ++i) {
        t.co[i] = t.co[i] - q * b.co[i];
    }
}

void top_reduce(Tracked &t, const std::vector<Tracked> &basis) {
    const VarsPtr &vars = t.p.vars();
    const ParamContext ctx = t.p.context();
    while (!t.p.is_zero()) {
        const auto &lt = t.p.leading();
        auto it = std::find_if(basis.begin(), basis.end(),
                               [&](const Tracked &b) { return divides(b.p.leading().exponents, lt.exponents); });
        if (it == basis.end()) {
            return;
        }
        MultiPoly q = MultiPoly::monomial(vars, ctx, quotient(lt.exponents, it->p.leading().exponents),
                                          lt.coeff / it->p.leading().coeff);
        subtract_multiple(t, *it, q);
    }
}

} // namespace

SmoothnessCertificate smoothness_certificate(const TwistData &td, unsigned degree_cap) {
    SmoothnessCertificate cert;
    std::size_t maxdeg = 0;
    for (const auto &f : td.f) {
        maxdeg = std::max(maxdeg, f.total_degree());
    }
    if (degree_cap < maxdeg) {
        throw PreconditionError("degree cap below the degree of the equations");
    }
    for (std::size_t j = 0; j < td.r(); ++j) {
        cert.generators.push_back(embed(td.f[j], td.x_vars));
        cert.labels.push_back("f_" + std::to_string(j + 1));
    }
    for (const auto &s : all_sigmas(td.N(), td.r())) {
        MultiPoly J = jacobian_minor(td, s);
        if (J.is_zero()) {
            continue;
        }
        std::string label = "J_{";
        for (std::size_t k = 0; k < s.indices.size(); ++k) {
            label += (k ? "," : "") + std::to_string(s.indices[k] + 1);
        }
        cert.generators.push_back(J);
        cert.labels.push_back(label + "}");
    }

    const VarsPtr &vars = td.x_vars;
    const ParamContext &ctx = td.params;
    const std::size_t n = cert.generators.size();
    MultiPoly zero(vars, ctx);
    std::vector<Tracked> basis;
    bool capped = false;

    auto finish = [&](const Tracked &t) {
        RatFunc inv = RatFunc::one(ctx) / t.p.leading().coeff;
        cert.cofactors.clear();
        for (const auto &c : t.co) {
            cert.cofactors.push_back(c * inv);
        }
        MultiPoly check = zero;
        for (std::size_t k = 0; k < n; ++k) {
            check = check + cert.cofactors[k] * cert.generators[k];
        }
        if (!(check == MultiPoly::constant(vars, ctx, RatFunc::one(ctx)))) {
            throw IdentityFailure("smoothness cofactors do not recombine to 1");
        }
        cert.status = SmoothnessCertificate::Status::Certified;
        cert.basis_size = basis.size();
    };

    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> pairs;
    auto add = [&](Tracked t) -> bool {
        top_reduce(t, basis);
        if (t.p.is_zero()) {
            return false;
        }
        if (t.p.is_constant()) {
            finish(t);
            return true;
        }
        std::size_t k = basis.size();
        for (std::size_t i = 0; i < k; ++i) {
            pairs.emplace(total_degree(lcm(basis[i].p.leading().exponents, t.p.leading().exponents)), i, k);
        }
        basis.push_back(std::move(t));
        return false;
    };

    for (std::size_t k = 0; k < n; ++k) {
        Tracked t{cert.generators[k], std::vector<MultiPoly>(n, zero)};
        t.co[k] = MultiPoly::constant(vars, ctx, RatFunc::one(ctx));
        if (add(std::move(t))) {
            return cert;
        }
    }
    while (!pairs.empty()) {
        auto [deg, i, j] = *pairs.begin();
        pairs.erase(pairs.begin());
        if (deg > degree_cap) {
            capped = true;
            continue;
        }
        const auto &a = basis[i].p.leading();
        const auto &b = basis[j].p.leading();
        Monomial l = lcm(a.exponents, b.exponents);
        if (total_degree(l) == total_degree(a.exponents) + total_degree(b.exponents)) {
            // coprime leading monomials reduce to zero
            continue;
        }
        Tracked s{zero, std::vector<MultiPoly>(n, zero)};
        MultiPoly qa = MultiPoly::monomial(vars, ctx, quotient(l, a.exponents), RatFunc::one(ctx) / a.coeff);
        MultiPoly qb = MultiPoly::monomial(vars, ctx, quotient(l, b.exponents), RatFunc::one(ctx) / b.coeff);
        subtract_multiple(s, basis[i], -qa);
        subtract_multiple(s, basis[j], qb);
        if (add(std::move(s))) {
            return cert;
        }
    }
    cert.basis_size = basis.size();
    cert.status = capped ? SmoothnessCertificate::Status::CapReached : SmoothnessCertificate::Status::ProperIdeal;
    return cert;
}

} // namespace dwork
