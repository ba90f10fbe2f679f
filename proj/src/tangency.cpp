#include "folijet/tangency.hpp"

namespace folijet {

namespace {

// Taylor jet of a holomorphic Laurent jet, coefficients 0..order.
XJet<Complex> taylor(const LaurentJet& f, int order) {
    XJet<Complex> out = XJet<Complex>::zero(order);
    for (int e = 0; e <= order; ++e) out[e] = f.coeff(e);
    return out;
}

}  // namespace

ImplicitParam implicit_param_p(std::size_t i, const NormalFormTable& table, const FoliationPairData& fp) {
    if (i >= fp.singular.size() || i >= table.a_p.size()) throw std::invalid_argument("singular point index out of range");
    const int K = table.order;
    const SingularModel& sm = fp.singular[i];
    // Tangency locus of the local model: u = p + st(x), st = -lambda x s'(x).
    XJet<Complex> st = XJet<Complex>::zero(K);
    for (int r = 1; r <= K; ++r) st[r] = -sm.lambda * static_cast<double>(r) * sm.s[r];
    XJet<Complex> alpha = XJet<Complex>::zero(K);
    XJet<Complex> beta = st;
    for (int r = 1; r <= K; ++r) {
        const int rest = K - r;
        const XJet<Complex> inner = st.truncated(rest);
        const XJet<Complex> a = compose(taylor(table.a_p[i][static_cast<std::size_t>(r)], rest), inner, fp.tol);
        const XJet<Complex> b = compose(taylor(table.b_p[i][static_cast<std::size_t>(r)], rest), inner, fp.tol);
        for (int t = 0; t <= rest; ++t) {
            alpha[r + t] += a[t];
            beta[r + t] += b[t];
        }
    }
    return {alpha, beta};
}

ImplicitParam implicit_param_q(std::size_t j, const NormalFormTable& table, const FoliationPairData& fp) {
    if (j >= fp.tangency.size() || j >= table.a_q.size()) throw std::invalid_argument("tangency point index out of range");
    const int K = table.order;
    XJet<Complex> alpha = XJet<Complex>::zero(K);
    XJet<Complex> beta = XJet<Complex>::zero(K);
    for (int r = 1; r <= K; ++r) {
        alpha[r] = table.a_q[j][static_cast<std::size_t>(r)].coeff(0);
        beta[r] = table.b_q[j][static_cast<std::size_t>(r)].coeff(0);
    }
    return {alpha, beta};
}

BranchJet curve_coeffs(const XJet<Complex>& alpha, const XJet<Complex>& beta, Complex anchor,
                       const ToleranceConfig& tol) {
    if (beta[0] != Complex(0.0)) throw std::invalid_argument("curve_coeffs: beta must vanish at 0");
    const XJet<Complex> inv = revert(alpha, tol);
    XJet<Complex> c = compose(beta, inv, tol);
    c[0] = 0.0;
    return {anchor, c};
}

TangencyCurveJets tangency_curves(const NormalFormTable& table, const FoliationPairData& fp) {
    TangencyCurveJets out;
    out.order = table.order;
    for (std::size_t i = 0; i < fp.singular.size(); ++i) {
        const ImplicitParam ip = implicit_param_p(i, table, fp);
        out.p.push_back(curve_coeffs(ip.alpha, ip.beta, fp.singular[i].p, fp.tol));
    }
    for (std::size_t j = 0; j < fp.tangency.size(); ++j) {
        const ImplicitParam ip = implicit_param_q(j, table, fp);
        out.q.push_back(curve_coeffs(ip.alpha, ip.beta, fp.tangency[j].q, fp.tol));
    }
    return out;
}

TangencyCurveJets compute_tangency(const FoliationPairData& fp, int order, const NormalFormOptions& opt) {
    return tangency_curves(compute_normal_form(fp, order, opt), fp);
}

XJet<Complex> blow_down(const BranchJet& branch) {
    XJet<Complex> y = XJet<Complex>::zero(branch.order() + 1);
    y[1] = branch.anchor;
    for (int r = 1; r <= branch.order(); ++r) y[r + 1] = branch.coeffs[r];
    return y;
}

}  // namespace folijet
