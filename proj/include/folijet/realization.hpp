#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "folijet/local_models.hpp"
#include "folijet/tangency.hpp"

namespace folijet {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Rows (1, rho, rho^2, rho^3) for rho = p_1..p_{n+1}, q_1..q_m.
CMatrix build_V(const FoliationPairData& fp);

// Level-k system matrix acting on ((s_{i,k})_i, (-z_{j,k}/2)_j):
//   [ diag(1 - k lambda_i)   1/(p_i - q_j)                       ]
//   [ 0                      theta_{j,k} on the diagonal,
//                            1/(q_j - q_l) off the diagonal       ]
CMatrix build_Ak(const FoliationPairData& fp, int k);
// The lower-right m x m block of build_Ak.
CMatrix build_Atilde(const FoliationPairData& fp, int k);

// [ Atilde_1 | Vandermonde rows of q ], an m x (m+4) matrix.
CMatrix build_Lambda(const FoliationPairData& fp);
// Lambda with the columns in J (1-based, within the first m) removed.
CMatrix lambda_J(const CMatrix& lambda, const std::vector<int>& J);
// {4s-3..4s} for s = 1..floor(m/4) followed by {m-3..m}; empty when m <= 4.
std::vector<std::vector<int>> lambda_index_families(int m);
// The (s+4) x (s+4) matrix with a theta/Cauchy block on the first s rows
// and columns and Vandermonde columns (1, y, y^2, y^3). y has s+4 entries.
CMatrix build_Lambda_tilde(const std::vector<Complex>& y, const std::vector<Complex>& theta);

// |det M| divided by the product of max(1, row norm). Rows of size below one
// are left unscaled so that a small 1 x 1 block still reads as small.
double normalized_det(const CMatrix& m, Complex* det = nullptr);

struct CertificateEntry {
    std::string name;
    Complex value;
    double normalized = 0.0;
    bool ok = false;
};

struct GenericityCertificate {
    int k0 = 0;
    double threshold = 0.0;
    std::vector<CertificateEntry> entries;  // factors of the genericity polynomial, then rank tests
    std::vector<Complex> det_A;             // [k-1]
    std::vector<Complex> det_Atilde;        // [k-1]
    std::vector<double> condition;          // condition number of A_k, [k-1]
    bool lambda_route = true;               // every det(Lambda_J) passes (vacuous for m <= 4)
    bool rank_route = true;                 // direct rank test of A_1(C^{n+1} x C^m_j) + Im V
    bool routes_agree = true;
    std::optional<bool> quadratics_admissible;  // z_{j,1} != 0 for the supplied quadratics
    bool verdict = false;
    std::string offending;                  // first failing entry, empty when verdict holds
};

GenericityCertificate check_genericity(const FoliationPairData& fp, int k0 = 0, double threshold = 1e-9,
                                       const std::optional<std::vector<Complex>>& quadratics = std::nullopt);

struct RealizationOptions {
    bool auto_shift_quadratics = false;
    double threshold = 1e-9;
    NormalFormOptions normal_form;
};

struct RealizationResult {
    FoliationPairData data;                 // template with the recovered s and z jets installed
    GenericityCertificate certificate;
    std::vector<Complex> quadratic_shift;   // coefficients w with V w added to the quadratics
    TangencyCurveJets recomputed;
    double residual = 0.0;                  // max |input c - recomputed c|
};

// Adds V w to the quadratic coefficients c_1 of every branch.
TangencyCurveJets shift_quadratics(const TangencyCurveJets& curve, const FoliationPairData& fp,
                                   const std::vector<Complex>& w);

// Recovers s and z jets through order k0 (tmpl.k0 when 0) whose tangency
// curves reproduce `curve`. The lambda, tau, involution and background
// data of the template are kept; its s and z jets are ignored.
RealizationResult realize(const FoliationPairData& tmpl, const TangencyCurveJets& curve, int k0 = 0,
                          const RealizationOptions& opt = {});

}  // namespace folijet
