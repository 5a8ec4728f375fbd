#include "dwork/linalg.hpp"

namespace dwork {

namespace {

QPoly poly_lcm(const QPoly &a, const QPoly &b) {
    QPoly g = gcd(a, b);
    return make_monic(divide_exact(a * b, g));
}

QPoly clear_to_poly(const RatFunc &v, const QPoly &common) { return divide_exact(v.num() * common, v.den()); }

} // namespace

LinearSolution ratfunc_solve_linear(const RatMatrix &a, const RatVector &b, const ParamContext &ctx) {
    const std::size_t m = a.size();
    if (b.size() != m) {
        throw PreconditionError("right-hand side length does not match row count");
    }
    const std::size_t n = m == 0 ? 0 : a[0].size();
    for (const auto &row : a) {
        if (row.size() != n) {
            throw PreconditionError("ragged coefficient matrix");
        }
    }

    QPoly one = QPoly::constant(ctx.vars, {}, Rational(1));
    std::vector<std::vector<QPoly>> w(m);
    for (std::size_t i = 0; i < m; ++i) {
        QPoly common = one;
        for (const auto &v : a[i]) {
            common = poly_lcm(common, v.den());
        }
        common = poly_lcm(common, b[i].den());
        w[i].reserve(n + 1);
        for (const auto &v : a[i]) {
            w[i].push_back(clear_to_poly(v, common));
        }
        w[i].push_back(clear_to_poly(b[i], common));
    }

    std::vector<std::size_t> pivot_cols;
    QPoly prev = one;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && w[p][c].is_zero()) {
            ++p;
        }
        if (p == m) {
            continue;
        }
        std::swap(w[p], w[r]);
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j <= n; ++j) {
                QPoly t = w[r][c] * w[i][j] - w[i][c] * w[r][j];
                w[i][j] = prev.is_constant() ? t * prev.constant_term().inverse() : divide_exact(t, prev);
            }
            w[i][c] = w[i][c].zero_like();
        }
        // Rows above the pivot row keep their scale; later divisions stay exact
        // because every entry below is a minor of the pivot columns.
        prev = w[r][c];
        pivot_cols.push_back(c);
        ++r;
    }

    LinearSolution out;
    out.rank = r;
    out.consistent = true;
    for (std::size_t i = r; i < m; ++i) {
        if (!w[i][n].is_zero()) {
            out.consistent = false;
        }
    }

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_cols) {
        is_pivot[c] = true;
    }

    auto back_substitute = [&](RatVector x, bool with_rhs) {
        for (std::size_t k = r; k-- > 0;) {
            std::size_t c = pivot_cols[k];
            RatFunc acc = with_rhs ? RatFunc(w[k][n]) : RatFunc::zero(ctx);
            for (std::size_t j = c + 1; j < n; ++j) {
                if (!w[k][j].is_zero() && !x[j].is_zero()) {
                    acc -= RatFunc(w[k][j]) * x[j];
                }
            }
            x[c] = acc / RatFunc(w[k][c]);
        }
        return x;
    };

    if (out.consistent) {
        out.solution = back_substitute(RatVector(n, RatFunc::zero(ctx)), true);
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        RatVector x(n, RatFunc::zero(ctx));
        x[f] = RatFunc::one(ctx);
        out.kernel.push_back(back_substitute(std::move(x), false));
    }
    if (out.consistent) {
        out.residual_check = mat_vec(a, out.solution, ctx);
        for (std::size_t i = 0; i < m; ++i) {
            out.residual_check[i] -= b[i];
            if (!out.residual_check[i].is_zero()) {
                throw IdentityFailure("back-substitution does not reproduce the right-hand side");
            }
        }
    }
    return out;
}

RatVector mat_vec(const RatMatrix &a, const RatVector &x, const ParamContext &ctx) {
    RatVector out;
    out.reserve(a.size());
    for (const auto &row : a) {
        if (row.size() != x.size()) {
            throw PreconditionError("matrix-vector dimension mismatch");
        }
        RatFunc acc = RatFunc::zero(ctx);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!row[j].is_zero() && !x[j].is_zero()) {
                acc += row[j] * x[j];
            }
        }
        out.push_back(std::move(acc));
    }
    return out;
}

RatMatrix mat_mul(const RatMatrix &a, const RatMatrix &b, const ParamContext &ctx) {
    std::size_t inner = b.size();
    std::size_t cols = inner == 0 ? 0 : b[0].size();
    RatMatrix out(a.size(), RatVector(cols, RatFunc::zero(ctx)));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != inner) {
            throw PreconditionError("matrix product dimension mismatch");
        }
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < cols; ++j) {
                if (!b[k][j].is_zero()) {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    return out;
}

} // namespace dwork
