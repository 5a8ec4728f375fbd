#pragma once

#include "dwork/ratfunc.hpp"

#include <map>
#include <utility>
#include <vector>

namespace dwork {

using RatMatrix = std::vector<std::vector<RatFunc>>;
using RatVector = std::vector<RatFunc>;

struct LinearSolution {
    bool consistent = false;
    std::size_t rank = 0;
    // Particular solution with all free variables set to zero.
    RatVector solution;
    RatVector residual_check;
    std::vector<RatVector> kernel;
};

// Solves A x = b over Q(params) by fraction-free elimination: rows are
// cleared to polynomial rows, eliminated with exact Bareiss divisions and
// back-substituted in the field. Inconsistency is reported, not thrown.
LinearSolution ratfunc_solve_linear(const RatMatrix &a, const RatVector &b, const ParamContext &ctx);

RatVector mat_vec(const RatMatrix &a, const RatVector &x, const ParamContext &ctx);
RatMatrix mat_mul(const RatMatrix &a, const RatMatrix &b, const ParamContext &ctx);

// Sparse vector sorted by descending index, no zero entries.
template <class C>
using SparseVec = std::vector<std::pair<std::size_t, C>>;

// a - c * b
template <class C>
SparseVec<C> sparse_axpy(const SparseVec<C> &a, const C &c, const SparseVec<C> &b) {
    SparseVec<C> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first > a[i].first) {
            out.emplace_back(b[j].first, -(c * b[j].second));
            ++j;
        } else {
            C v = a[i].second - c * b[j].second;
            if (!v.is_zero()) {
                out.emplace_back(a[i].first, std::move(v));
            }
            ++i;
            ++j;
        }
    }
    return out;
}

template <class C>
SparseVec<C> sparse_scale(const SparseVec<C> &a, const C &c) {
    SparseVec<C> out;
    if (c.is_zero()) {
        return out;
    }
    out.reserve(a.size());
    for (const auto &[k, v] : a) {
        out.emplace_back(k, v * c);
    }
    return out;
}

// Incremental row echelon form over a field. Column indices are ranked:
// the largest column of a row is its pivot, so larger columns are
// eliminated in favour of smaller ones. Each row carries the combination of
// inserted generators that produced it.
template <class C>
class Echelon {
public:
    struct Row {
        SparseVec<C> values;
        SparseVec<C> witness;
    };
    struct Reduction {
        SparseVec<C> residue;
        // residue = input - sum(combination[k] * generator k)
        SparseVec<C> combination;
    };

    explicit Echelon(typename C::Context ctx) : ctx_(std::move(ctx)) {}

    // Returns true when the generator enlarges the span.
    bool insert(SparseVec<C> values, SparseVec<C> witness) {
        finalized_ = false;
        while (!values.empty()) {
            auto it = pivots_.find(values.front().first);
            if (it == pivots_.end()) {
                break;
            }
            C lead = values.front().second;
            values = sparse_axpy(values, lead, it->second.values);
            witness = sparse_axpy(witness, lead, it->second.witness);
        }
        if (values.empty()) {
            return false;
        }
        C inv = values.front().second.inverse();
        std::size_t col = values.front().first;
        pivots_.emplace(col, Row{sparse_scale(values, inv), sparse_scale(witness, inv)});
        return true;
    }

    // Brings every pivot row to fully reduced form.
    void finalize() {
        if (finalized_) {
            return;
        }
        for (auto &[col, row] : pivots_) {
            Reduction r = reduce_tail(row.values, col);
            row.values = std::move(r.residue);
            for (const auto &[k, c] : r.combination) {
                // combination entries index pivot rows here
                row.witness = sparse_axpy(row.witness, c, pivots_.at(k).witness);
            }
        }
        finalized_ = true;
    }

    // Reduces v against the span; combination is over inserted generators.
    Reduction reduce(SparseVec<C> v) const {
        if (!finalized_) {
            throw PreconditionError("echelon form used before finalize()");
        }
        Reduction out;
        std::size_t pos = 0;
        while (pos < v.size()) {
            auto it = pivots_.find(v[pos].first);
            if (it == pivots_.end()) {
                ++pos;
                continue;
            }
            C c = v[pos].second;
            v = sparse_axpy(v, c, it->second.values);
            out.combination = sparse_axpy(out.combination, -c, it->second.witness);
        }
        out.residue = std::move(v);
        return out;
    }

    const std::map<std::size_t, Row> &pivots() const { return pivots_; }
    bool is_pivot(std::size_t col) const { return pivots_.count(col) != 0; }
    std::size_t rank() const { return pivots_.size(); }
    const typename C::Context &context() const { return ctx_; }

private:
    // Reduces entries below `col`, whose pivot rows are already final since
    // finalize() walks columns in increasing order. Combination indexes pivots.
    Reduction reduce_tail(SparseVec<C> v, std::size_t col) const {
        Reduction out;
        std::size_t pos = 0;
        while (pos < v.size()) {
            std::size_t k = v[pos].first;
            auto it = (k == col) ? pivots_.end() : pivots_.find(k);
            if (it == pivots_.end()) {
                ++pos;
                continue;
            }
            C c = v[pos].second;
            v = sparse_axpy(v, c, it->second.values);
            out.combination.emplace_back(k, c);
        }
        out.residue = std::move(v);
        return out;
    }

    typename C::Context ctx_;
    std::map<std::size_t, Row> pivots_;
    bool finalized_ = true;
};

} // namespace dwork
