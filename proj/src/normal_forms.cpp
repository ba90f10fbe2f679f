#include "folijet/normal_forms.hpp"

#include <algorithm>
#include <string>

namespace folijet {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Everything needed to expand H_n o (local composite) at one marked point.
// With U = u + delta(x, u) and X the x-component of the composite, the x^k
// coefficient of a(U) X^r is sum_s a^{(s)}(u)/s! [X^r delta^s]_k.
struct Point {
    bool at_q = false;
    std::size_t index = 0;
    Complex center;
    int order = 0;
    int depth = 0;
    XJet<LaurentJet> delta;
    XJet<LaurentJet> X;
    std::vector<XJet<LaurentJet>> dpow;            // delta^s, s = 0..order
    std::vector<std::vector<XJet<LaurentJet>>> P;  // X^r delta^s, r >= 1, r + s <= order
    std::vector<LaurentJet> lead, inv_lead;        // (X_1)^k and its inverse
    std::vector<std::vector<LaurentJet>> ea, eb;   // a_{n,r}^{(s)}/s! and b_{n,r}^{(s)}/s! expanded here
};

XJet<LaurentJet> constant_jet(Complex center, const XJet<Complex>& c, int order) {
    XJet<LaurentJet> out = XJet<LaurentJet>::zero(order);
    for (int r = 0; r <= order && r <= c.order(); ++r)
        if (c[r] != Complex(0.0)) out[r] = LaurentJet::constant(center, c[r]);
    return out;
}

// F(u + delta) = sum_t F^{(t)}(u)/t! delta^t for an exact polynomial jet F.
XJet<LaurentJet> shift_by_delta(const LaurentJet& F, const std::vector<XJet<LaurentJet>>& dpow, int order) {
    XJet<LaurentJet> out = XJet<LaurentJet>::zero(order);
    LaurentJet deriv = F;
    for (int t = 0; t <= order; ++t) {
        if (t > 0) deriv = deriv.derivative() / static_cast<double>(t);
        if (deriv.is_exact_zero()) break;
        for (int j = t; j <= order; ++j) out[j] += deriv * dpow[static_cast<std::size_t>(t)][j];
    }
    return out;
}

Point build_point(const FoliationPairData& fp, bool at_q, std::size_t index, int order, int depth) {
    Point pt;
    pt.at_q = at_q;
    pt.index = index;
    pt.order = order;
    pt.depth = depth;
    const BackgroundData& bg = fp.background;
    const bool standard = bg.is_standard();
    XJet<LaurentJet> X = XJet<LaurentJet>::zero(order);
    if (!at_q) {
        const SingularModel& sm = fp.singular[index];
        pt.center = sm.p;
        pt.delta = constant_jet(sm.p, sm.s, order);
        pt.delta[0] = LaurentJet();
    } else {
        const TangencyModel& tm = fp.tangency[index];
        pt.center = tm.q;
        pt.delta = phi_coeffs(tm, order, depth);
    }
    pt.dpow.resize(static_cast<std::size_t>(order) + 1);
    pt.dpow[0] = XJet<LaurentJet>::zero(order);
    pt.dpow[0][0] = LaurentJet::constant(pt.center, 1.0);
    for (int s = 1; s <= order; ++s) pt.dpow[static_cast<std::size_t>(s)] = pt.dpow[static_cast<std::size_t>(s - 1)] * pt.delta;

    if (!at_q) {
        const XJet<LaurentJet> psi = psi_hat_coeffs(fp.singular[index], order);
        if (standard) {
            X = psi;
        } else {
            XJet<LaurentJet> psi_pow = psi;
            for (int r = 1; r <= order; ++r) {
                const LaurentJet e = bg.eps_jet(index, r, pt.center);
                if (!e.is_exact_zero()) X = X + shift_by_delta(e, pt.dpow, order) * psi_pow;
                if (r < order) psi_pow = psi_pow * psi;
            }
        }
    } else {
        if (standard) {
            X[1] = LaurentJet::constant(pt.center, 1.0);
        } else {
            for (int r = 1; r <= order; ++r) {
                const LaurentJet c = bg.sig_jet(index, r, pt.center);
                if (!c.is_exact_zero()) X = X + shift_by_delta(c, pt.dpow, order).shifted(r);
            }
        }
    }
    pt.X = X;

    pt.P.assign(static_cast<std::size_t>(order) + 1, {});
    XJet<LaurentJet> xpow = X;
    for (int r = 1; r <= order; ++r) {
        auto& row = pt.P[static_cast<std::size_t>(r)];
        for (int s = 0; r + s <= order; ++s) row.push_back(xpow * pt.dpow[static_cast<std::size_t>(s)]);
        if (r < order) xpow = xpow * X;
    }

    pt.lead.assign(static_cast<std::size_t>(order) + 1, LaurentJet());
    pt.inv_lead.assign(static_cast<std::size_t>(order) + 1, LaurentJet());
    LaurentJet lead = LaurentJet::constant(pt.center, 1.0);
    for (int k = 1; k <= order; ++k) {
        lead = lead * X[1];
        pt.lead[static_cast<std::size_t>(k)] = lead;
        pt.inv_lead[static_cast<std::size_t>(k)] = lead.inverse(depth);
    }
    pt.ea.assign(static_cast<std::size_t>(order) + 1, {});
    pt.eb.assign(static_cast<std::size_t>(order) + 1, {});
    return pt;
}

// Expansions of F^{(s)}/s! at the point for s = 0..order-r.
std::vector<LaurentJet> expansions(const PoleSum& F, const Point& pt, int r) {
    std::vector<LaurentJet> out;
    PoleSum d = F;
    for (int s = 0; r + s <= pt.order; ++s) {
        if (s > 0) d = d.derivative();
        out.push_back(d.expand_at(pt.center, pt.depth) / factorial(s));
    }
    return out;
}

void install_level(Point& pt, int r, const PoleSum& a, const PoleSum& b) {
    pt.ea[static_cast<std::size_t>(r)] = expansions(a, pt, r);
    pt.eb[static_cast<std::size_t>(r)] = expansions(b, pt, r);
}

// x^k coefficients of the A and B composites with the level-k unknowns removed.
std::pair<LaurentJet, LaurentJet> level_sums(const Point& pt, int k) {
    LaurentJet sa, sb = pt.delta[k];
    for (int r = 1; r < k; ++r) {
        const auto& row = pt.P[static_cast<std::size_t>(r)];
        const auto& ea = pt.ea[static_cast<std::size_t>(r)];
        const auto& eb = pt.eb[static_cast<std::size_t>(r)];
        for (int s = 0; r + s <= k; ++s) {
            const LaurentJet& term = row[static_cast<std::size_t>(s)][k];
            if (term.is_exact_zero()) continue;
            sa += ea[static_cast<std::size_t>(s)] * term;
            sb += eb[static_cast<std::size_t>(s)] * term;
        }
    }
    if (!sa.has_center()) sa = LaurentJet(pt.center, 0, {});
    if (!sb.has_center()) sb = LaurentJet(pt.center, 0, {});
    return {sa, sb};
}

std::vector<Point> build_points(const FoliationPairData& fp, int order, int depth_p, int depth_q) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < fp.singular.size(); ++i) pts.push_back(build_point(fp, false, i, order, depth_p));
    for (std::size_t j = 0; j < fp.tangency.size(); ++j) pts.push_back(build_point(fp, true, j, order, depth_q));
    return pts;
}

NormalFormTable run(const FoliationPairData& fp, int order, int depth_p, int depth_q, double drop) {
    std::vector<Point> pts = build_points(fp, order, depth_p, depth_q);
    const std::size_t np = fp.singular.size(), nq = fp.tangency.size();
    NormalFormTable t;
    t.order = order;
    t.depth_p = depth_p;
    t.depth_q = depth_q;
    const std::size_t slots = static_cast<std::size_t>(order) + 1;
    t.a_n.assign(slots, PoleSum());
    t.b_n.assign(slots, PoleSum());
    t.a_p.assign(np, std::vector<LaurentJet>(slots));
    t.b_p.assign(np, std::vector<LaurentJet>(slots));
    t.a_q.assign(nq, std::vector<LaurentJet>(slots));
    t.b_q.assign(nq, std::vector<LaurentJet>(slots));

    for (int k = 1; k <= order; ++k) {
        std::vector<std::pair<LaurentJet, LaurentJet>> sums;
        for (const Point& pt : pts) sums.push_back(level_sums(pt, k));
        PoleSum a = k == 1 ? PoleSum({Complex(1.0)}) : PoleSum();
        PoleSum b;
        for (std::size_t n = 0; n < pts.size(); ++n) {
            const LaurentJet& inv = pts[n].inv_lead[static_cast<std::size_t>(k)];
            if (k > 1) a.add_principal(-(sums[n].first * inv).principal_part(), drop);
            b.add_principal(-(sums[n].second * inv).principal_part(), drop);
        }
        t.a_n[static_cast<std::size_t>(k)] = a;
        t.b_n[static_cast<std::size_t>(k)] = b;
        for (std::size_t n = 0; n < pts.size(); ++n) {
            Point& pt = pts[n];
            install_level(pt, k, a, b);
            const LaurentJet& lead = pt.lead[static_cast<std::size_t>(k)];
            LaurentJet la = sums[n].first + lead * pt.ea[static_cast<std::size_t>(k)][0];
            LaurentJet lb = sums[n].second + lead * pt.eb[static_cast<std::size_t>(k)][0];
            t.cancellation = std::max({t.cancellation, la.principal_part().max_abs(), lb.principal_part().max_abs()});
            la = la.regular_part();
            lb = lb.regular_part();
            const int need = pt.at_q ? 0 : order - k;
            if (la.max_exp() < need || lb.max_exp() < need)
                throw PrecisionError("level " + std::to_string(k) + " jet at " + (pt.at_q ? "q_" : "p_") +
                                     std::to_string(pt.index + 1) + " known only through exponent " +
                                     std::to_string(std::min(la.max_exp(), lb.max_exp())));
            if (pt.at_q) {
                t.a_q[pt.index][static_cast<std::size_t>(k)] = la;
                t.b_q[pt.index][static_cast<std::size_t>(k)] = lb;
            } else {
                t.a_p[pt.index][static_cast<std::size_t>(k)] = la;
                t.b_p[pt.index][static_cast<std::size_t>(k)] = lb;
            }
        }
    }
    return t;
}

void require_lower(const NormalFormTable& lower, int k) {
    if (k < 1) throw std::invalid_argument("residual level must be >= 1");
    if (lower.order < k - 1 || static_cast<int>(lower.a_n.size()) < k || static_cast<int>(lower.b_n.size()) < k)
        throw std::invalid_argument("lower table does not reach level " + std::to_string(k - 1));
}

ResidualPair residual_at(const FoliationPairData& fp, bool at_q, std::size_t idx, int k, const NormalFormTable& lower) {
    require_lower(lower, k);
    const std::size_t count = at_q ? fp.tangency.size() : fp.singular.size();
    if (idx >= count) throw std::invalid_argument("marked point index out of range");
    const Complex center = at_q ? fp.tangency[idx].q : fp.singular[idx].p;
    if (k == 1) return {LaurentJet(center, 0, {}), LaurentJet(center, 0, {})};
    const int depth = at_q ? default_depth_q(k) : default_depth_p(k);
    Point pt = build_point(fp, at_q, idx, k, depth);
    for (int r = 1; r < k; ++r)
        install_level(pt, r, lower.a_n[static_cast<std::size_t>(r)], lower.b_n[static_cast<std::size_t>(r)]);
    auto [sa, sb] = level_sums(pt, k);
    const LaurentJet b1 = lower.b_n[1].expand_at(center, depth);
    if (!at_q) {
        const LaurentJet e = fp.background.eps_jet(idx, k, center);
        return {sa - e, sb - LaurentJet::constant(center, fp.singular[idx].s[k]) - e * b1};
    }
    const TangencyModel& tm = fp.tangency[idx];
    const LaurentJet c = fp.background.sig_jet(idx, k, center);
    const LaurentJet inv_gp = tm.g_laurent(depth + 2).derivative().inverse(depth);
    return {sa - c, sb - inv_gp * tm.z[k] - c * b1};
}

}  // namespace

int default_depth_p(int order) { return 4 * order + 8; }
int default_depth_q(int order) { return 6 * order + 10; }

NormalFormTable compute_normal_form(const FoliationPairData& fp, int order, const NormalFormOptions& opt) {
    if (order == 0) order = fp.k0;
    if (order < 1 || order > kMaxOrder) throw std::invalid_argument("normal form order out of range");
    int dp = opt.depth_p > 0 ? opt.depth_p : default_depth_p(order);
    int dq = opt.depth_q > 0 ? opt.depth_q : default_depth_q(order);
    for (int attempt = 0;; ++attempt) {
        try {
            return run(fp, order, dp, dq, opt.drop_below);
        } catch (const PrecisionError&) {
            if (attempt >= opt.retries) throw;
            dp *= 2;
            dq *= 2;
        }
    }
}

ResidualPair residual_A_B_at_p(const FoliationPairData& fp, std::size_t i, int k, const NormalFormTable& lower) {
    return residual_at(fp, false, i, k, lower);
}

ResidualPair residual_A_B_at_q(const FoliationPairData& fp, std::size_t j, int k, const NormalFormTable& lower) {
    return residual_at(fp, true, j, k, lower);
}

}  // namespace folijet
