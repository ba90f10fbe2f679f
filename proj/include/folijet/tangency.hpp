#pragma once

#include <vector>

#include "folijet/local_models.hpp"
#include "folijet/normal_forms.hpp"
#include "folijet/series.hpp"

namespace folijet {

// One branch u = anchor + sum_{r>=1} coeffs[r] x^r of the curve of
// tangencies in the blow-up chart. coeffs[0] is always zero.
struct BranchJet {
    Complex anchor;
    XJet<Complex> coeffs;

    int order() const { return coeffs.order(); }
    Complex c(int r) const { return coeffs[r]; }
};

struct TangencyCurveJets {
    int order = 0;
    std::vector<BranchJet> p;  // one branch through each p_i
    std::vector<BranchJet> q;  // one branch through each q_j
};

// The branch image as the pair X = alpha(x), U - anchor = beta(x).
struct ImplicitParam {
    XJet<Complex> alpha;
    XJet<Complex> beta;
};

ImplicitParam implicit_param_p(std::size_t i, const NormalFormTable& table, const FoliationPairData& fp);
ImplicitParam implicit_param_q(std::size_t j, const NormalFormTable& table, const FoliationPairData& fp);

// beta o alpha^{-1}; alpha must be tangent to the identity.
BranchJet curve_coeffs(const XJet<Complex>& alpha, const XJet<Complex>& beta, Complex anchor,
                       const ToleranceConfig& tol = {});

TangencyCurveJets tangency_curves(const NormalFormTable& table, const FoliationPairData& fp);

// Normal form followed by the tangency curves, through `order` (fp.k0 when 0).
TangencyCurveJets compute_tangency(const FoliationPairData& fp, int order = 0, const NormalFormOptions& opt = {});

// y = x * pi(x) in the original coordinates; order grows by one.
XJet<Complex> blow_down(const BranchJet& branch);

}  // namespace folijet
