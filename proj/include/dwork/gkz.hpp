#pragma once

#include "dwork/lattice.hpp"

#include <string>
#include <vector>

namespace dwork {

struct ClassIndex {
    std::vector<unsigned> u;
    std::vector<unsigned> v;
};

struct GkzSystem {
    PointConfig config;
    RelationBasis relations;
    std::vector<WeylOp> boxes;
    std::vector<WeylOp> eulers;
    std::vector<Rational> beta;
};

// Z_1 .. Z_{N+r} over C[mu].
std::vector<WeylOp> euler_operators(const PointConfig &config);
std::vector<Rational> beta_from_class(const ClassIndex &idx);
// Boxes of a relation basis, then Z_k + u_k + 1 and Z_{N+k} + v_k + 1.
std::vector<WeylOp> gkz_generators(const ClassIndex &idx, const PointConfig &config);
GkzSystem gkz_system(const ClassIndex &idx, const PointConfig &config);

void check_class_index(const ClassIndex &idx, const PointConfig &config);

// The twist with generic coefficients: f_j^(mu) = sum_i mu_{j,i} x^{d_{j,i}}
// over Q(mu). Its Gauss-Manin lifts are the operators D_{mu_{j,i}}.
TwistData generic_twist(const PointConfig &config, const VarList &x_names, const VarList &y_names);

WeylOp twist_mu(const TwistData &generic, const PointConfig &config, std::size_t j, std::size_t i);

// x^u y^v in the polynomial ring of a twist.
MultiPoly class_monomial(const TwistData &td, const std::vector<unsigned> &u, const std::vector<unsigned> &v);

struct VerificationReport {
    std::string name;
    MultiPoly lhs;
    MultiPoly rhs;
    bool holds = false;
};

// D^(mu)_{x_k}(x_k x^u y^v) = (u_k+1) x^u y^v + sum d_{j,i}(k) mu_{j,i} x^{u+d_{j,i}} y^{v+e_j}.
// Throws IdentityFailure when the sides differ. k is zero-based.
VerificationReport euler_certificate_x(const TwistData &generic, const PointConfig &config, const ClassIndex &idx,
                                       std::size_t k);
// D^(mu)_{y_k}(x^u y^{v+e_k}) = (v_k+1) x^u y^v + f_k^(mu) x^u y^{v+e_k}.
VerificationReport euler_certificate_y(const TwistData &generic, const PointConfig &config, const ClassIndex &idx,
                                       std::size_t k);
// Both products of the box send x^u y^v to the same monomial.
VerificationReport box_annihilation_check(const TwistData &generic, const PointConfig &config, const ClassIndex &idx,
                                          const IntVector &b);

} // namespace dwork
