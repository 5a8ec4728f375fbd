#pragma once

#include "dwork/linalg.hpp"
#include "dwork/weyl.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dwork {

struct DegreeBox {
    unsigned max_x = 0;
    unsigned max_y = 0;
    friend bool operator==(const DegreeBox &, const DegreeBox &) = default;
};

// max_y = N, max_x = (N + 1) * max_j deg f_j.
DegreeBox default_box(const TwistData &td);
DegreeBox doubled(const DegreeBox &b);

// Truncated presentation of C / (sum D_{x_i}(C) + sum D_{y_j}(C)). Columns
// are the monomials x^u y^v of the box; rows are the images D(m) of box
// monomials that stay inside the box. Monomials outside the core (half the
// box in each direction) and, within each region, monomials of higher
// y-degree, then higher x-degree are eliminated first, so the basis consists
// of low-degree core monomials.
class CohomologySpace {
public:
    struct Preimage {
        // 'x' or 'y'
        char kind = 'x';
        std::size_t var = 0;
        Monomial monomial;
    };

    CohomologySpace(TwistData twist, DegreeBox box, std::optional<DegreeBox> core = std::nullopt);

    const TwistData &twist() const { return twist_; }
    const DegreeBox &box() const { return box_; }
    const DegreeBox &core() const { return core_; }
    const std::vector<Monomial> &columns() const { return columns_; }
    const std::vector<Preimage> &preimages() const { return preimages_; }
    const Echelon<RatFunc> &echelon() const { return echelon_; }
    const ParamContext &field() const { return twist_.params; }

    // Monomials x^u y^v (as exponent vectors over x then y) whose classes
    // form the basis, in increasing column order.
    const std::vector<Monomial> &basis() const { return basis_; }
    std::size_t dimension() const { return basis_.size(); }
    std::vector<std::string> basis_strings() const;

    std::optional<std::size_t> column_of(const Monomial &m) const;
    bool in_core(const Monomial &m) const;
    // Sparse column vector of p; nullopt when p leaves the box.
    std::optional<SparseVec<RatFunc>> to_vector(const MultiPoly &p) const;
    MultiPoly to_poly(const SparseVec<RatFunc> &v) const;
    // D(preimage) for generator k.
    MultiPoly relation_image(std::size_t k) const;
    MultiPoly basis_poly(std::size_t b) const;

private:
    TwistData twist_;
    DegreeBox box_;
    DegreeBox core_;
    std::vector<Monomial> columns_;
    std::map<Monomial, std::size_t> index_;
    std::vector<MultiPoly> dx_factor_;
    std::vector<Preimage> preimages_;
    Echelon<RatFunc> echelon_{ParamContext{}};
    std::vector<Monomial> basis_;
};

CohomologySpace build_space(const TwistData &twist, DegreeBox box, std::optional<DegreeBox> core = std::nullopt);

struct CohomClass {
    // Coordinates along CohomologySpace::basis().
    std::vector<RatFunc> coords;
    // The input minus the basis combination, as a combination of relation generators.
    SparseVec<RatFunc> witness;
    friend bool operator==(const CohomClass &a, const CohomClass &b) { return a.coords == b.coords; }
};

// Throws PreconditionError when p leaves the box and TruncationError when
// its residue is not supported on basis monomials.
CohomClass normal_form(const CohomologySpace &space, const MultiPoly &p);
MultiPoly class_poly(const CohomologySpace &space, const CohomClass &c);

// Matrix of D_d = d + sum y_j f_j^d on the basis; column b is the image of
// the b-th basis class.
RatMatrix gm_action(const CohomologySpace &space, std::size_t param);
RatMatrix gm_action(const CohomologySpace &space, const std::string &param);

// Coordinates of D_d applied to the class with coordinates v under the
// matrix a: d(v) + a v.
RatVector gm_apply(const RatMatrix &a, const RatVector &v, std::size_t param);

struct CyclicAnnihilator {
    bool found = false;
    std::size_t order = 0;
    // Monic operator d^m + sum a_i d^i in the single derivation.
    WeylOp op;
    // a_0 .. a_{m-1}
    RatVector coefficients;
};

CyclicAnnihilator cyclic_annihilator(const CohomologySpace &space, const CohomClass &cls, std::size_t param,
                                     std::size_t max_order);
// Applies a monic operator d^m + sum a_i d^i to the class through the
// Gauss-Manin matrix and returns the resulting coordinates.
RatVector apply_operator_to_class(const RatMatrix &a, const RatVector &coefficients, const RatVector &v,
                                  std::size_t param);

// Operator in D_R: base variable is the parameter, no polynomial variables.
WeylOp parameter_operator(const ParamContext &params, std::size_t param, const RatVector &lower);

struct StabilityReport {
    bool stable = false;
    std::vector<std::string> basis_small;
    std::vector<std::string> basis_large;
    std::vector<std::string> notes;
};

// Compares basis and the normal forms of the probes between the box and its double.
StabilityReport check_stability(const TwistData &twist, DegreeBox box, const std::vector<MultiPoly> &probes);

// Rank of the n-th cohomology of the Koszul complex of f truncated at
// polynomial degree `degree_bound`: cocycles of degree <= bound modulo the
// coboundaries of degree <= bound that have a preimage of degree <= bound +
// sum deg f_j.
std::size_t koszul_rank(const std::vector<MultiPoly> &f, std::size_t n, unsigned degree_bound);

// Given mu_1..mu_r whose top y-slices t_j satisfy sum f_j t_j = 0, returns
// replacements of lower top y-degree with the same sum of D_{y_j} images.
// x-degrees of the syzygy are bounded by the space's box.
std::vector<MultiPoly> lower_y_degree(const CohomologySpace &space, const std::vector<MultiPoly> &mu);

} // namespace dwork
