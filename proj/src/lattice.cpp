#include "dwork/lattice.hpp"

#include <algorithm>

namespace dwork {

std::size_t PointConfig::index(std::size_t j, std::size_t i) const {
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (points[k].j == j && points[k].i == i) {
            return k;
        }
    }
    throw PreconditionError("no lattice point with index (" + std::to_string(j) + ", " + std::to_string(i) + ")");
}

IntMatrix PointConfig::matrix() const {
    IntMatrix m(N + r, IntVector(points.size(), Integer(0)));
    for (std::size_t k = 0; k < points.size(); ++k) {
        for (std::size_t a = 0; a < N; ++a) {
            m[a][k] = points[k].d[a];
        }
        m[N + points[k].j][k] = 1;
    }
    return m;
}

PointConfig PointConfig::from_exponents(std::size_t N, const std::vector<std::vector<Monomial>> &per_equation) {
    PointConfig c;
    c.N = N;
    c.r = per_equation.size();
    VarList names;
    for (std::size_t j = 0; j < per_equation.size(); ++j) {
        if (per_equation[j].empty()) {
            throw PreconditionError("equation without monomials");
        }
        c.delta.push_back(per_equation[j].size());
        for (std::size_t i = 0; i < per_equation[j].size(); ++i) {
            if (per_equation[j][i].size() != N) {
                throw PreconditionError("exponent vector length differs from N");
            }
            c.points.push_back({j, i, per_equation[j][i]});
            names.push_back("mu_" + std::to_string(c.points.size()));
        }
    }
    c.mu_vars = make_vars(std::move(names));
    return c;
}

PointConfig point_config(const TwistData &td) {
    std::vector<std::vector<Monomial>> per;
    for (const auto &fj : td.f) {
        std::vector<Monomial> ms;
        for (const auto &t : fj.terms()) {
            ms.emplace_back(t.exponents.begin(), t.exponents.begin() + static_cast<std::ptrdiff_t>(td.N()));
        }
        std::sort(ms.begin(), ms.end(), [](const Monomial &a, const Monomial &b) {
            return std::lexicographical_compare(b.rbegin(), b.rend(), a.rbegin(), a.rend());
        });
        per.push_back(std::move(ms));
    }
    return PointConfig::from_exponents(td.N(), per);
}

ColumnEchelon column_echelon(const IntMatrix &a) {
    ColumnEchelon out;
    out.h = a;
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a[0].size();
    out.u.assign(n, IntVector(n, Integer(0)));
    for (std::size_t k = 0; k < n; ++k) {
        out.u[k][k] = 1;
    }
    auto &h = out.h;
    auto &u = out.u;
    auto swap_cols = [&](std::size_t c1, std::size_t c2) {
        for (auto &row : h) {
            std::swap(row[c1], row[c2]);
        }
        for (auto &row : u) {
            std::swap(row[c1], row[c2]);
        }
    };
    // col c -= q * col p
    auto sub_col = [&](std::size_t c, std::size_t p, const Integer &q) {
        for (auto &row : h) {
            row[c] -= q * row[p];
        }
        for (auto &row : u) {
            row[c] -= q * row[p];
        }
    };
    std::size_t p = 0;
    for (std::size_t i = 0; i < m && p < n; ++i) {
        while (true) {
            std::size_t best = n;
            for (std::size_t c = p; c < n; ++c) {
                if (h[i][c] != 0 && (best == n || abs(h[i][c]) < abs(h[i][best]))) {
                    best = c;
                }
            }
            if (best == n) {
                break;
            }
            if (best != p) {
                swap_cols(best, p);
            }
            bool done = true;
            for (std::size_t c = p + 1; c < n; ++c) {
                if (h[i][c] != 0) {
                    Integer q;
                    mpz_fdiv_q(q.get_mpz_t(), h[i][c].get_mpz_t(), h[i][p].get_mpz_t());
                    sub_col(c, p, q);
                    if (h[i][c] != 0) {
                        done = false;
                    }
                }
            }
            if (done) {
                if (h[i][p] < 0) {
                    for (auto &row : h) {
                        row[p] = -row[p];
                    }
                    for (auto &row : u) {
                        row[p] = -row[p];
                    }
                }
                ++p;
                break;
            }
        }
    }
    out.rank = p;
    return out;
}

bool is_saturated(const std::vector<IntVector> &rows) {
    if (rows.empty()) {
        return true;
    }
    ColumnEchelon e = column_echelon(rows);
    if (e.rank != rows.size()) {
        return false;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (abs(e.h[i][i]) != 1) {
            return false;
        }
    }
    return true;
}

RelationBasis integer_kernel_basis(const IntMatrix &a) {
    ColumnEchelon e = column_echelon(a);
    const std::size_t n = e.u.size();
    RelationBasis out;
    for (std::size_t c = e.rank; c < n; ++c) {
        IntVector v(n);
        for (std::size_t k = 0; k < n; ++k) {
            v[k] = e.u[k][c];
        }
        auto first = std::find_if(v.begin(), v.end(), [](const Integer &x) { return x != 0; });
        if (first != v.end() && *first > 0) {
            for (auto &x : v) {
                x = -x;
            }
        }
        out.vectors.push_back(std::move(v));
    }
    return out;
}

RelationBasis integer_kernel_basis(const PointConfig &config) {
    if (config.points.empty()) {
        throw PreconditionError("empty point configuration");
    }
    return integer_kernel_basis(config.matrix());
}

bool relation_check(const PointConfig &config, const IntVector &b) {
    if (b.size() != config.size()) {
        throw PreconditionError("relation length does not match the configuration");
    }
    IntMatrix m = config.matrix();
    for (const auto &row : m) {
        Integer acc = 0;
        for (std::size_t k = 0; k < b.size(); ++k) {
            acc += row[k] * b[k];
        }
        if (acc != 0) {
            return false;
        }
    }
    return true;
}

ParamContext empty_params() {
    static const VarsPtr none = make_vars({});
    return {none};
}

MultiPoly mu_constant(const PointConfig &config, long value) {
    auto ctx = empty_params();
    return MultiPoly::constant(config.mu_vars, ctx, RatFunc::from_integer(value, ctx));
}

MultiPoly mu_variable(const PointConfig &config, std::size_t k) {
    return MultiPoly::variable(config.mu_vars, empty_params(), k);
}

WeylOp mu_derivative(const PointConfig &config, std::size_t k, Exponent e) {
    return WeylOp::derivative(config.mu_vars, config.mu_vars, empty_params(), k, e);
}

WeylOp mu_scalar(const PointConfig &config, const MultiPoly &c) { return WeylOp::scalar(config.mu_vars, c); }

WeylOp box_from_relation(const PointConfig &config, const IntVector &b) {
    if (b.size() != config.size()) {
        throw PreconditionError("relation length does not match the configuration");
    }
    Monomial pos(b.size(), 0);
    Monomial neg(b.size(), 0);
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (b[k] > 0) {
            pos[k] = static_cast<Exponent>(b[k].get_ui());
        } else if (b[k] < 0) {
            neg[k] = static_cast<Exponent>(Integer(-b[k]).get_ui());
        }
    }
    MultiPoly one = mu_constant(config, 1);
    return WeylOp::monomial(config.mu_vars, pos, one) - WeylOp::monomial(config.mu_vars, neg, one);
}

} // namespace dwork
