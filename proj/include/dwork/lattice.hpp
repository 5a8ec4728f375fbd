#pragma once

#include "dwork/weyl.hpp"

#include <vector>

namespace dwork {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

// Lattice points (d_{j,i}, e_j), flattened in (j, i) order. Within one
// equation the monomials are listed in descending lexicographic order with
// the last x variable most significant.
struct PointConfig {
    struct Point {
        std::size_t j = 0;
        std::size_t i = 0;
        Monomial d;
    };

    std::size_t N = 0;
    std::size_t r = 0;
    std::vector<std::size_t> delta;
    std::vector<Point> points;
    // mu_1 .. mu_n, one per point.
    VarsPtr mu_vars;

    std::size_t size() const { return points.size(); }
    // Flattened position of (j, i).
    std::size_t index(std::size_t j, std::size_t i) const;
    // The (N + r) x size() integer matrix whose columns are the points.
    IntMatrix matrix() const;

    static PointConfig from_exponents(std::size_t N, const std::vector<std::vector<Monomial>> &per_equation);
};

PointConfig point_config(const TwistData &td);

struct RelationBasis {
    std::vector<IntVector> vectors;
};

struct ColumnEchelon {
    IntMatrix h;
    // Unimodular transform with a * u = h.
    IntMatrix u;
    // Columns [0, rank) of h are nonzero, the rest vanish.
    std::size_t rank = 0;
};

// Column-style Hermite reduction by unimodular column operations.
ColumnEchelon column_echelon(const IntMatrix &a);

// True when the rows span a saturated sublattice of Z^n.
bool is_saturated(const std::vector<IntVector> &rows);

// Z-basis of the relation lattice E. Each vector is normalized so its first
// nonzero entry is negative.
RelationBasis integer_kernel_basis(const PointConfig &config);
RelationBasis integer_kernel_basis(const IntMatrix &a);

bool relation_check(const PointConfig &config, const IntVector &b);

// prod_{b>0} d_mu^b - prod_{b<0} d_mu^(-b) over C[mu].
WeylOp box_from_relation(const PointConfig &config, const IntVector &b);

// Q[mu] carrier for operators in D_{C[mu]}.
ParamContext empty_params();
MultiPoly mu_constant(const PointConfig &config, long value);
MultiPoly mu_variable(const PointConfig &config, std::size_t k);
WeylOp mu_derivative(const PointConfig &config, std::size_t k, Exponent e = 1);
WeylOp mu_scalar(const PointConfig &config, const MultiPoly &c);

} // namespace dwork
