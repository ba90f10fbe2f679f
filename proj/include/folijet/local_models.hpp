#pragma once

#include <optional>
#include <vector>

#include "folijet/core.hpp"
#include "folijet/series.hpp"
#include "folijet/u_functions.hpp"

namespace folijet {

// Linear model at a singular point: lambda x d/dx + (u - p) d/du together
// with the level curves u + s(x) = const.
struct SingularModel {
    int index = 0;
    Complex p;
    Complex lambda;
    XJet<Complex> s;  // s[0] = 0

    static SingularModel make(int index, Complex p, Complex lambda, XJet<Complex> s);
};

// Model at a tangency point: the vertical foliation together with the level
// curves z(x) + g(u), g(u) = (q - u)(I(u) - q) for an involution I fixing q.
struct TangencyModel {
    int index = 0;
    Complex q;
    Complex tau;                 // quadratic coefficient of I at q
    XJet<Complex> z;             // z[0] = 0, z[1] != 0 for a genuine model
    XJet<Complex> involution;    // jet in v = u - q of I(q + v) - q
    std::optional<Complex> mobius;  // set when I(q + v) - q = -v / (1 + tau v) exactly

    // Canonical involution with the given quadratic coefficient.
    static TangencyModel from_tau(int index, Complex q, Complex tau, XJet<Complex> z, int involution_order);
    // Validates I(0) = 0, I'(0) = -1 and I o I = id to the jet order.
    static TangencyModel from_involution(int index, Complex q, XJet<Complex> involution, XJet<Complex> z,
                                         const ToleranceConfig& tol);
    // I = h^{-1} o (-h) for a tangent-to-identity h.
    static TangencyModel from_conjugator(int index, Complex q, const XJet<Complex>& h, XJet<Complex> z,
                                         int involution_order, const ToleranceConfig& tol);
    // I(v) = -g(v) / v for g = v^2 + g_3 v^3 + ...
    static TangencyModel from_g(int index, Complex q, const XJet<Complex>& g, XJet<Complex> z,
                                const ToleranceConfig& tol);

    // g as a Laurent jet at q, known through (u - q)^order where the data allows.
    LaurentJet g_laurent(int order) const;
    // Taylor coefficients g_0.. of g in v, as far as the involution jet determines them.
    XJet<Complex> g_jet() const;
};

// The epsilon and varsigma families, stored as polynomials in (u - p_i) and
// (u - q_j). Index r runs from 1; missing entries are zero.
struct BackgroundData {
    std::vector<std::vector<std::vector<Complex>>> eps;  // eps[i][r-1]
    std::vector<std::vector<std::vector<Complex>>> sig;  // sig[j][r-1]

    static BackgroundData standard(std::size_t n_p, std::size_t n_q);

    LaurentJet eps_jet(std::size_t i, int r, Complex center) const;
    LaurentJet sig_jet(std::size_t j, int r, Complex center) const;
    Complex sig1_deriv_at_q(std::size_t j) const;
    // eps_{i,1}(p_i) = 1, sig_{j,1}(q_j) = 1 and sig_{j,r}(q_j) = 0 for r >= 3.
    void validate(std::size_t n_p, std::size_t n_q, const ToleranceConfig& tol) const;
    bool is_standard() const;
};

struct FoliationPairData {
    MarkedPoints points;
    std::vector<SingularModel> singular;
    std::vector<TangencyModel> tangency;
    BackgroundData background;
    int k0 = 1;
    ToleranceConfig tol;

    // Structural checks. With require_invariants the s and z jets must reach
    // order k0 and every z_{j,1} must be nonzero.
    void validate(bool require_invariants = true) const;
};

inline constexpr int kMaxOrder = kMaxPartitionOrder;

// Default order of involution jets built from tau or a conjugator.
int default_involution_order(int k0);

// Coefficients of psi = x (1 + s(x)/(u - p))^lambda in x, as Laurent jets at p.
XJet<LaurentJet> psi_hat_coeffs(const SingularModel& sm, int k0);

// Coefficients phi_k of phi(x, u) - u in x, as Laurent jets at q known through
// (u - q)^depth at best, where g(phi(x, u)) = g(u) + z(x).
XJet<LaurentJet> phi_coeffs(const TangencyModel& tm, int k0, int depth);

Complex theta(const TangencyModel& tm, const BackgroundData& bg, int k);

}  // namespace folijet
