#pragma once

#include "dwork/weyl.hpp"

#include <string>
#include <vector>

namespace dwork {

// Strictly increasing zero-based indices into the x variables.
struct SigmaSet {
    std::vector<std::size_t> indices;
    friend bool operator==(const SigmaSet &, const SigmaSet &) = default;
};

void check_sigma(std::size_t N, std::size_t r, const SigmaSet &sigma);
std::vector<SigmaSet> all_sigmas(std::size_t N, std::size_t r);

// det[d f_j / d x_{sigma_k}] as a polynomial in the x variables.
MultiPoly jacobian_minor(const TwistData &td, const SigmaSet &sigma);

// Sign of the permutation taking dx_1 ... dx_N to dx_{complement} dx_{sigma}.
int sign_sigma(std::size_t N, const SigmaSet &sigma);

struct OmegaForm {
    std::vector<unsigned> u;
    SigmaSet sigma;
    int sign = 1;
    MultiPoly jacobian;
    std::vector<std::size_t> complement;
    // "x1*dx1 / (2*x2)"
    std::string str(const TwistData &td) const;
};

OmegaForm omega_form(const TwistData &td, const std::vector<unsigned> &u, const SigmaSet &sigma);

struct SmoothnessCertificate {
    enum class Status { Certified, ProperIdeal, CapReached };
    Status status = Status::CapReached;
    // f_1 .. f_r followed by the nonzero minors J_sigma.
    std::vector<MultiPoly> generators;
    std::vector<std::string> labels;
    // sum cofactors[k] * generators[k] = 1 when certified.
    std::vector<MultiPoly> cofactors;
    std::size_t basis_size = 0;
    bool certified() const { return status == Status::Certified; }
};

std::string status_name(SmoothnessCertificate::Status s);

// Degree-capped Buchberger search for 1 in (f, J_sigma) over Q(params).
SmoothnessCertificate smoothness_certificate(const TwistData &td, unsigned degree_cap);

} // namespace dwork
