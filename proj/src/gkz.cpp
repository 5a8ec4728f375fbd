#include "dwork/gkz.hpp"

namespace dwork {

std::vector<WeylOp> euler_operators(const PointConfig &config) {
    std::vector<WeylOp> out;
    for (std::size_t k = 0; k < config.N + config.r; ++k) {
        WeylOp z = mu_derivative(config, 0).zero_like();
        for (std::size_t p = 0; p < config.size(); ++p) {
            const auto &pt = config.points[p];
            long w = k < config.N ? static_cast<long>(pt.d[k]) : (pt.j == k - config.N ? 1 : 0);
            if (w != 0) {
                z += (mu_variable(config, p) * mu_constant(config, w)) * mu_derivative(config, p);
            }
        }
        out.push_back(std::move(z));
    }
    return out;
}

std::vector<Rational> beta_from_class(const ClassIndex &idx) {
    std::vector<Rational> beta;
    for (auto e : idx.u) {
        beta.push_back(Rational(-static_cast<long>(e) - 1));
    }
    for (auto e : idx.v) {
        beta.push_back(Rational(-static_cast<long>(e) - 1));
    }
    return beta;
}

void check_class_index(const ClassIndex &idx, const PointConfig &config) {
    if (config.r == 0) {
        throw PreconditionError("a configuration with no equations has no hypergeometric system");
    }
    if (idx.u.size() != config.N || idx.v.size() != config.r) {
        throw PreconditionError("class index has the wrong length (need |u| = N and |v| = r)");
    }
}

GkzSystem gkz_system(const ClassIndex &idx, const PointConfig &config) {
    check_class_index(idx, config);
    GkzSystem sys;
    sys.config = config;
    sys.relations = integer_kernel_basis(config);
    for (const auto &b : sys.relations.vectors) {
        sys.boxes.push_back(box_from_relation(config, b));
    }
    sys.eulers = euler_operators(config);
    sys.beta = beta_from_class(idx);
    return sys;
}

std::vector<WeylOp> gkz_generators(const ClassIndex &idx, const PointConfig &config) {
    GkzSystem sys = gkz_system(idx, config);
    std::vector<WeylOp> gens = sys.boxes;
    for (std::size_t k = 0; k < sys.eulers.size(); ++k) {
        // Z_k - beta_k
        long shift = -sys.beta[k].numerator().get_si();
        gens.push_back(sys.eulers[k] + mu_scalar(config, mu_constant(config, shift)));
    }
    return gens;
}

TwistData generic_twist(const PointConfig &config, const VarList &x_names, const VarList &y_names) {
    if (x_names.size() != config.N || y_names.size() != config.r) {
        throw PreconditionError("variable names do not match the configuration");
    }
    ParamContext mu{config.mu_vars};
    VarsPtr xv = make_vars(x_names);
    std::vector<MultiPoly> f(config.r, MultiPoly(xv, mu));
    for (std::size_t p = 0; p < config.size(); ++p) {
        const auto &pt = config.points[p];
        f[pt.j] += MultiPoly::monomial(xv, mu, pt.d, RatFunc::variable(mu, p));
    }
    return make_twist(x_names, y_names, mu, f);
}

WeylOp twist_mu(const TwistData &generic, const PointConfig &config, std::size_t j, std::size_t i) {
    return gauss_manin_lift(generic, config.index(j, i));
}

MultiPoly class_monomial(const TwistData &td, const std::vector<unsigned> &u, const std::vector<unsigned> &v) {
    if (u.size() != td.N() || v.size() != td.r()) {
        throw PreconditionError("class index has the wrong length");
    }
    Monomial m(td.N() + td.r(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        m[i] = u[i];
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
        m[td.N() + j] = v[j];
    }
    return MultiPoly::monomial(td.poly_vars, td.params, std::move(m), RatFunc::one(td.params));
}

namespace {

VerificationReport finish(std::string name, MultiPoly lhs, MultiPoly rhs) {
    VerificationReport rep{std::move(name), std::move(lhs), std::move(rhs), false};
    rep.holds = rep.lhs == rep.rhs;
    if (!rep.holds) {
        throw IdentityFailure(rep.name + ": " + rep.lhs.str() + " != " + rep.rhs.str());
    }
    return rep;
}

std::string index_text(const ClassIndex &idx) {
    std::string s = "u=(";
    for (std::size_t i = 0; i < idx.u.size(); ++i) {
        s += (i ? "," : "") + std::to_string(idx.u[i]);
    }
    s += ") v=(";
    for (std::size_t i = 0; i < idx.v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(idx.v[i]);
    }
    return s + ")";
}

} // namespace

VerificationReport euler_certificate_x(const TwistData &generic, const PointConfig &config, const ClassIndex &idx,
                                       std::size_t k) {
    check_class_index(idx, config);
    if (k >= config.N) {
        throw PreconditionError("x index out of range");
    }
    const auto &mu = generic.params;
    std::vector<unsigned> uk = idx.u;
    ++uk[k];
    MultiPoly base = class_monomial(generic, idx.u, idx.v);
    MultiPoly lhs = twist_x(generic, k).apply(class_monomial(generic, uk, idx.v));
    MultiPoly rhs = base * RatFunc::from_integer(idx.u[k] + 1, mu);
    for (std::size_t p = 0; p < config.size(); ++p) {
        const auto &pt = config.points[p];
        if (pt.d[k] == 0) {
            continue;
        }
        Monomial shift(config.N + config.r, 0);
        for (std::size_t a = 0; a < config.N; ++a) {
            shift[a] = pt.d[a];
        }
        shift[config.N + pt.j] = 1;
        rhs += base.shifted(shift, RatFunc::variable(mu, p) * RatFunc::from_integer(pt.d[k], mu));
    }
    return finish("euler_x k=" + std::to_string(k + 1) + " " + index_text(idx), lhs, rhs);
}

VerificationReport euler_certificate_y(const TwistData &generic, const PointConfig &config, const ClassIndex &idx,
                                       std::size_t k) {
    check_class_index(idx, config);
    if (k >= config.r) {
        throw PreconditionError("y index out of range");
    }
    const auto &mu = generic.params;
    std::vector<unsigned> vk = idx.v;
    ++vk[k];
    MultiPoly shifted = class_monomial(generic, idx.u, vk);
    MultiPoly lhs = twist_y(generic, k).apply(shifted);
    MultiPoly rhs = class_monomial(generic, idx.u, idx.v) * RatFunc::from_integer(idx.v[k] + 1, mu) +
                    generic.f[k] * shifted;
    return finish("euler_y k=" + std::to_string(k + 1) + " " + index_text(idx), lhs, rhs);
}

VerificationReport box_annihilation_check(const TwistData &generic, const PointConfig &config, const ClassIndex &idx,
                                          const IntVector &b) {
    check_class_index(idx, config);
    if (!relation_check(config, b)) {
        throw PreconditionError("box check needs a relation among the lattice points");
    }
    MultiPoly pos = class_monomial(generic, idx.u, idx.v);
    MultiPoly neg = pos;
    for (std::size_t p = 0; p < config.size(); ++p) {
        const auto &pt = config.points[p];
        WeylOp d = twist_mu(generic, config, pt.j, pt.i);
        long times = b[p].get_si();
        MultiPoly &target = times > 0 ? pos : neg;
        for (long t = 0; t < std::abs(times); ++t) {
            target = d.apply(target);
        }
    }
    if (pos.size() != 1) {
        throw IdentityFailure("shift rule did not produce a single monomial");
    }
    std::string name = "box b=(";
    for (std::size_t p = 0; p < b.size(); ++p) {
        name += (p ? "," : "") + b[p].get_str();
    }
    return finish(name + ") " + index_text(idx), pos, neg);
}

} // namespace dwork
