#include "folijet/local_models.hpp"

#include <cmath>
#include <string>

namespace folijet {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

XJet<Complex> padded(const XJet<Complex>& j, int order) {
    XJet<Complex> out = XJet<Complex>::zero(order);
    for (int r = 0; r <= std::min(order, j.order()); ++r) out[r] = j[r];
    return out;
}

XJet<Complex> magnitudes(const XJet<Complex>& j) {
    XJet<Complex> out = XJet<Complex>::zero(j.order());
    for (int r = 0; r <= j.order(); ++r) out[r] = std::abs(j[r]);
    return out;
}

void check_involution(const XJet<Complex>& inv, const ToleranceConfig& tol) {
    if (inv.order() < 2) throw InputError("involution jet must have order >= 2");
    for (int r = 0; r <= inv.order(); ++r) checked(inv[r], "involution coefficient");
    if (!close(inv[0], 0.0, tol)) throw InputError("involution must fix its point (constant term 0)");
    if (!close(inv[1], -1.0, tol)) throw InputError("involution must have linear coefficient -1");
    XJet<Complex> fixed = inv;
    fixed[0] = 0.0;
    const XJet<Complex> twice = compose(fixed, fixed, tol);
    const XJet<Complex> bound = compose(magnitudes(fixed), magnitudes(fixed), tol);
    for (int r = 0; r <= twice.order(); ++r) {
        const Complex want = r == 1 ? Complex(1.0) : Complex(0.0);
        if (std::abs(twice[r] - want) > tol.abs + tol.rel * std::max(1.0, std::abs(bound[r])))
            throw InputError("involution jet does not square to the identity at order " + std::to_string(r));
    }
}

XJet<Complex> check_z(XJet<Complex> z) {
    for (int r = 0; r <= z.order(); ++r) checked(z[r], "z coefficient");
    return z;
}

}  // namespace

int default_involution_order(int k0) { return 8 * k0 + 16; }

SingularModel SingularModel::make(int index, Complex p, Complex lambda, XJet<Complex> s) {
    checked(p, "singular point");
    checked(lambda, "lambda");
    for (int r = 0; r <= s.order(); ++r) checked(s[r], "s coefficient");
    if (s[0] != Complex(0.0)) throw InputError("s jet must have zero constant term");
    return {index, p, lambda, std::move(s)};
}

TangencyModel TangencyModel::from_tau(int index, Complex q, Complex tau, XJet<Complex> z, int involution_order) {
    checked(q, "tangency point");
    checked(tau, "tau");
    if (involution_order < 2) throw InputError("involution order must be >= 2");
    XJet<Complex> inv = XJet<Complex>::zero(involution_order);
    Complex power = 1.0;
    for (int r = 1; r <= involution_order; ++r) {
        inv[r] = -power;
        power *= -tau;
    }
    TangencyModel tm{index, q, tau, check_z(std::move(z)), std::move(inv), tau};
    return tm;
}

TangencyModel TangencyModel::from_involution(int index, Complex q, XJet<Complex> involution, XJet<Complex> z,
                                             const ToleranceConfig& tol) {
    checked(q, "tangency point");
    check_involution(involution, tol);
    involution[0] = 0.0;
    const Complex tau = involution[2];
    return {index, q, tau, check_z(std::move(z)), std::move(involution), std::nullopt};
}

TangencyModel TangencyModel::from_conjugator(int index, Complex q, const XJet<Complex>& h, XJet<Complex> z,
                                             int involution_order, const ToleranceConfig& tol) {
    for (int r = 0; r <= h.order(); ++r) checked(h[r], "conjugator coefficient");
    if (h.order() < 1) throw InputError("conjugator jet must have order >= 1");
    if (!close(h[0], 0.0, tol) || !close(h[1], 1.0, tol))
        throw InputError("conjugator must be tangent to the identity");
    XJet<Complex> hm = padded(h, involution_order);
    hm[0] = 0.0;
    hm[1] = 1.0;
    const XJet<Complex> inv = compose(revert(hm, tol), hm * Complex(-1.0), tol);
    return from_involution(index, q, inv, std::move(z), tol);
}

TangencyModel TangencyModel::from_g(int index, Complex q, const XJet<Complex>& g, XJet<Complex> z,
                                    const ToleranceConfig& tol) {
    if (g.order() < 3) throw InputError("g jet must have order >= 3");
    for (int r = 0; r <= g.order(); ++r) checked(g[r], "g coefficient");
    if (!close(g[0], 0.0, tol) || !close(g[1], 0.0, tol))
        throw InputError("g must vanish to second order at its point");
    if (!close(g[2], 1.0, tol)) throw InputError("g must have second derivative 2 at its point");
    XJet<Complex> inv = XJet<Complex>::zero(g.order() - 1);
    for (int r = 1; r <= inv.order(); ++r) inv[r] = -g[r + 1];
    return from_involution(index, q, std::move(inv), std::move(z), tol);
}

XJet<Complex> TangencyModel::g_jet() const {
    XJet<Complex> g = XJet<Complex>::zero(involution.order() + 1);
    for (int r = 1; r <= involution.order(); ++r) g[r + 1] = -involution[r];
    return g;
}

LaurentJet TangencyModel::g_laurent(int order) const {
    if (mobius) {
        const Complex t = *mobius;
        if (t == Complex(0.0)) return LaurentJet::monomial(q, 1.0, 2);
        std::vector<Complex> c(static_cast<std::size_t>(std::max(order + 1, 0)));
        Complex power = 1.0;
        for (int e = 2; e <= order; ++e) {
            c[static_cast<std::size_t>(e)] = power;
            power *= -t;
        }
        return LaurentJet(q, 0, std::move(c), order);
    }
    const XJet<Complex> g = g_jet();
    return LaurentJet(q, 0, g.coeffs(), std::min(order, g.order()));
}

BackgroundData BackgroundData::standard(std::size_t n_p, std::size_t n_q) {
    BackgroundData bg;
    bg.eps.assign(n_p, {{Complex(1.0)}});
    bg.sig.assign(n_q, {{Complex(1.0)}});
    return bg;
}

LaurentJet BackgroundData::eps_jet(std::size_t i, int r, Complex center) const {
    const auto& rows = eps.at(i);
    if (r < 1 || static_cast<std::size_t>(r) > rows.size()) return LaurentJet();
    return LaurentJet::polynomial(center, rows[static_cast<std::size_t>(r - 1)]);
}

LaurentJet BackgroundData::sig_jet(std::size_t j, int r, Complex center) const {
    const auto& rows = sig.at(j);
    if (r < 1 || static_cast<std::size_t>(r) > rows.size()) return LaurentJet();
    return LaurentJet::polynomial(center, rows[static_cast<std::size_t>(r - 1)]);
}

Complex BackgroundData::sig1_deriv_at_q(std::size_t j) const {
    const auto& rows = sig.at(j);
    if (rows.empty() || rows[0].size() < 2) return 0.0;
    return rows[0][1];
}

void BackgroundData::validate(std::size_t n_p, std::size_t n_q, const ToleranceConfig& tol) const {
    if (eps.size() != n_p) throw InputError("background eps must have one entry per singular point");
    if (sig.size() != n_q) throw InputError("background sig must have one entry per tangency point");
    auto value_at_center = [](const std::vector<std::vector<Complex>>& rows, std::size_t r) -> Complex {
        if (r >= rows.size() || rows[r].empty()) return 0.0;
        return rows[r][0];
    };
    for (std::size_t i = 0; i < n_p; ++i) {
        for (const auto& row : eps[i])
            for (const Complex& c : row) checked(c, "eps coefficient");
        if (!close(value_at_center(eps[i], 0), 1.0, tol))
            throw InputError("eps_{" + std::to_string(i + 1) + ",1} must equal 1 at p_" + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < n_q; ++j) {
        for (const auto& row : sig[j])
            for (const Complex& c : row) checked(c, "sig coefficient");
        if (!close(value_at_center(sig[j], 0), 1.0, tol))
            throw InputError("sig_{" + std::to_string(j + 1) + ",1} must equal 1 at q_" + std::to_string(j + 1));
        for (std::size_t r = 2; r < sig[j].size(); ++r)
            if (!close(value_at_center(sig[j], r), 0.0, tol))
                throw InputError("sig_{" + std::to_string(j + 1) + "," + std::to_string(r + 1) + "} must vanish at q_" +
                                 std::to_string(j + 1));
    }
}

bool BackgroundData::is_standard() const {
    auto standard_rows = [](const std::vector<std::vector<Complex>>& rows) {
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t e = 0; e < rows[r].size(); ++e)
                if (rows[r][e] != Complex(r == 0 && e == 0 ? 1.0 : 0.0)) return false;
        return !rows.empty() && !rows[0].empty();
    };
    for (const auto& rows : eps)
        if (!standard_rows(rows)) return false;
    for (const auto& rows : sig)
        if (!standard_rows(rows)) return false;
    return true;
}

void FoliationPairData::validate(bool require_invariants) const {
    points.validate();
    if (k0 < 1) throw InputError("k0 must be >= 1");
    if (k0 > kMaxOrder) throw InputError("k0 must be <= " + std::to_string(kMaxOrder));
    if (singular.size() != points.p.size()) throw InputError("one singular model per point p is required");
    if (tangency.size() != points.q.size()) throw InputError("one tangency model per point q is required");
    for (std::size_t i = 0; i < singular.size(); ++i) {
        const SingularModel& sm = singular[i];
        if (sm.p != points.p[i] || sm.index != static_cast<int>(i))
            throw InputError("singular model " + std::to_string(i + 1) + " does not match its marked point");
        if (require_invariants && sm.s.order() < k0)
            throw InputError("s_" + std::to_string(i + 1) + " jet is shorter than k0");
    }
    for (std::size_t j = 0; j < tangency.size(); ++j) {
        const TangencyModel& tm = tangency[j];
        if (tm.q != points.q[j] || tm.index != static_cast<int>(j))
            throw InputError("tangency model " + std::to_string(j + 1) + " does not match its marked point");
        if (!require_invariants) continue;
        if (tm.z.order() < k0) throw InputError("z_" + std::to_string(j + 1) + " jet is shorter than k0");
        if (tm.z[0] != Complex(0.0)) throw InputError("z_" + std::to_string(j + 1) + " must have zero constant term");
        if (std::abs(tm.z[1]) <= tol.abs)
            throw InputError("z_" + std::to_string(j + 1) + " must have nonzero linear coefficient");
    }
    background.validate(points.p.size(), points.q.size(), tol);
}

XJet<LaurentJet> psi_hat_coeffs(const SingularModel& sm, int k0) {
    if (k0 < 1) throw std::invalid_argument("psi_hat_coeffs: k0 must be >= 1");
    if (sm.s.order() < k0 - 1) throw std::invalid_argument("psi_hat_coeffs: s jet too short");
    XJet<LaurentJet> out = XJet<LaurentJet>::zero(k0);
    out[1] = LaurentJet::constant(sm.p, 1.0);
    for (int k = 1; k + 1 <= k0; ++k) {
        std::vector<Complex> w(static_cast<std::size_t>(k));
        std::vector<LaurentJet> z(static_cast<std::size_t>(k));
        Complex falling = 1.0;
        for (int r = 1; r <= k; ++r) {
            falling *= sm.lambda - static_cast<double>(r - 1);
            w[static_cast<std::size_t>(r - 1)] = falling;
            z[static_cast<std::size_t>(r - 1)] = LaurentJet::monomial(sm.p, factorial(r) * sm.s[r], -1);
        }
        out[k + 1] = LaurentJet::monomial(sm.p, sm.lambda * sm.s[k], -1) + fdb_Ptilde(k, w, z) / factorial(k);
    }
    return out;
}

XJet<LaurentJet> phi_coeffs(const TangencyModel& tm, int k0, int depth) {
    if (k0 < 1) throw std::invalid_argument("phi_coeffs: k0 must be >= 1");
    if (tm.z.order() < k0) throw std::invalid_argument("phi_coeffs: z jet too short");
    const LaurentJet g = tm.g_laurent(depth + 2 * k0 + 4);
    std::vector<LaurentJet> gd(static_cast<std::size_t>(k0));
    LaurentJet cur = g;
    for (int r = 1; r <= k0; ++r) {
        cur = cur.derivative();
        gd[static_cast<std::size_t>(r - 1)] = cur;
    }
    const LaurentJet inv_gp = gd[0].inverse(depth);
    std::vector<LaurentJet> d(static_cast<std::size_t>(k0));
    XJet<LaurentJet> out = XJet<LaurentJet>::zero(k0);
    for (int k = 1; k <= k0; ++k) {
        const std::vector<LaurentJet> w(gd.begin(), gd.begin() + k);
        std::vector<LaurentJet> z(d.begin(), d.begin() + k);
        z[static_cast<std::size_t>(k - 1)] = LaurentJet();
        LaurentJet rhs = LaurentJet::constant(tm.q, factorial(k) * tm.z[k]) - fdb_Ptilde(k, w, z);
        LaurentJet dk = rhs * inv_gp;
        if (dk.pole_order() > 2 * k0)
            throw PrecisionError("phi coefficient " + std::to_string(k) + " exceeds the pole depth " +
                                 std::to_string(2 * k0));
        d[static_cast<std::size_t>(k - 1)] = dk;
        out[k] = dk / factorial(k);
    }
    return out;
}

Complex theta(const TangencyModel& tm, const BackgroundData& bg, int k) {
    if (k < 1) throw std::invalid_argument("theta: k must be >= 1");
    return -1.5 * tm.tau + static_cast<double>(k) * bg.sig1_deriv_at_q(static_cast<std::size_t>(tm.index));
}

}  // namespace folijet
