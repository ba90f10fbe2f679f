#include "folijet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace folijet::oracle {

namespace {

int clamp_valid(long long e) {
    if (e >= BiJet::kExact / 2) return BiJet::kExact;
    return static_cast<int>(std::max<long long>(e, -BiJet::kExact));
}

Complex binom(Complex a, int i) {
    Complex c = 1.0;
    for (int l = 0; l < i; ++l) c *= (a - static_cast<double>(l)) / static_cast<double>(l + 1);
    return c;
}

void same_grid(const BiJet& a, const BiJet& b) {
    if (a.kx() != b.kx() || a.lo() != b.lo() || a.cap() != b.cap())
        throw std::invalid_argument("oracle: BiJet grids differ");
}

// Evaluates pole sums at center + w by linear combinations of cached powers.
class Substituter {
public:
    Substituter(Complex center, const BiJet& w, int series_terms) : center_(center), w_(w), terms_(series_terms) {
        const int kx = w.kx();
        BiJet one = BiJet::constant(kx, w.lo(), w.cap(), 1.0);
        wpow_.push_back(one);
        for (int j = 1; j <= terms_ + 1; ++j) wpow_.push_back(wpow_.back() * w);
        // w = v (1 + d), d = (w - v) / v has no x^0 row, so its powers stop at kx.
        const BiJet v = BiJet::v_power(kx, w.lo(), w.cap(), 1);
        const BiJet d = (w - v) * BiJet::v_power(kx, w.lo(), w.cap(), -1);
        dpow_.push_back(one);
        for (int i = 1; i <= kx; ++i) dpow_.push_back(dpow_.back() * d);
    }

    BiJet eval(const RawPoleSum& F) const {
        const int kx = w_.kx();
        CVec series(static_cast<std::size_t>(terms_) + 1);
        bool truncated = false;
        // Polynomial part: (center + w)^deg expanded binomially.
        for (std::size_t deg = 0; deg < F.poly.size(); ++deg) {
            if (deg > static_cast<std::size_t>(terms_)) throw std::invalid_argument("oracle: polynomial part too long");
            for (std::size_t j = 0; j <= deg; ++j)
                series[j] += F.poly[deg] * binom(static_cast<double>(deg), static_cast<int>(j)) *
                             std::pow(center_, static_cast<int>(deg - j));
        }
        BiJet own(kx, w_.lo(), w_.cap());
        bool has_own = false;
        for (std::size_t t = 0; t < F.poles.size(); ++t) {
            const CVec& c = F.coeffs[t];
            if (F.poles[t] == center_) {
                // (w)^{-m} = v^{-m} (1 + d)^{-m}
                for (std::size_t mm = 1; mm <= c.size(); ++mm) {
                    const int m = static_cast<int>(mm);
                    if (c[mm - 1] == Complex(0.0)) continue;
                    BiJet acc(kx, w_.lo(), w_.cap());
                    for (int i = 0; i <= kx; ++i) acc = acc + dpow_[static_cast<std::size_t>(i)].scaled(binom(-m, i));
                    own = own + acc * BiJet::v_power(kx, w_.lo(), w_.cap(), -m, c[mm - 1]);
                    has_own = true;
                }
                continue;
            }
            // (dd + w)^{-m} = sum_j binom(-m, j) dd^{-m-j} w^j
            const Complex dd = center_ - F.poles[t];
            for (std::size_t mm = 1; mm <= c.size(); ++mm) {
                const int m = static_cast<int>(mm);
                if (c[mm - 1] == Complex(0.0)) continue;
                truncated = true;
                for (int j = 0; j <= terms_; ++j)
                    series[static_cast<std::size_t>(j)] += c[mm - 1] * binom(-m, j) * std::pow(dd, -m - j);
            }
        }
        BiJet out(kx, w_.lo(), w_.cap());
        for (int j = 0; j <= terms_; ++j)
            if (series[static_cast<std::size_t>(j)] != Complex(0.0))
                out = out + wpow_[static_cast<std::size_t>(j)].scaled(series[static_cast<std::size_t>(j)]);
        if (truncated) {
            const BiJet& tail = wpow_[static_cast<std::size_t>(terms_) + 1];
            for (int r = 0; r <= kx; ++r) out.limit(r, tail.row_valuation(r) - 1);
        }
        if (has_own) out = out + own;
        return out;
    }

private:
    Complex center_;
    BiJet w_;
    int terms_;
    std::vector<BiJet> wpow_;
    std::vector<BiJet> dpow_;
};

BiJet sum_over_levels(const Substituter& sub, const std::vector<RawPoleSum>& fns, const BiJet& X, BiJet acc) {
    BiJet xpow = X;
    for (std::size_t r = 0; r < fns.size() && static_cast<int>(r) < X.kx(); ++r) {
        acc = acc + sub.eval(fns[r]) * xpow;
        xpow = xpow * X;
    }
    return acc;
}

}  // namespace

CVec substitute(const CVec& outer, const CVec& inner, int order) {
    CVec res(static_cast<std::size_t>(order) + 1);
    for (std::size_t s = outer.size(); s-- > 0;) {
        CVec next(static_cast<std::size_t>(order) + 1);
        for (int i = 0; i <= order; ++i)
            for (int j = 0; i + j <= order && j < static_cast<int>(inner.size()); ++j)
                next[static_cast<std::size_t>(i + j)] += res[static_cast<std::size_t>(i)] * inner[static_cast<std::size_t>(j)];
        next[0] += outer[s];
        res = next;
    }
    return res;
}

std::uint64_t bell_number(int k) {
    if (k < 0) throw std::invalid_argument("bell_number: negative index");
    std::vector<std::uint64_t> row{1};
    for (int n = 0; n < k; ++n) {
        std::vector<std::uint64_t> next{row.back()};
        for (std::uint64_t x : row) next.push_back(next.back() + x);
        row = next;
    }
    return row.front();
}

CVec laurent_divide(const CVec& f, int f_lo, const CVec& h, int h_lo, int count) {
    std::size_t i0 = 0;
    while (i0 < h.size() && h[i0] == Complex(0.0)) ++i0;
    if (i0 == h.size()) throw std::invalid_argument("laurent_divide: zero divisor");
    (void)f_lo;
    (void)h_lo;
    const CVec hs(h.begin() + static_cast<std::ptrdiff_t>(i0), h.end());
    CVec q(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        Complex acc = static_cast<std::size_t>(n) < f.size() ? f[static_cast<std::size_t>(n)] : Complex(0.0);
        for (int i = 1; i <= n && static_cast<std::size_t>(i) < hs.size(); ++i)
            acc -= hs[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(n - i)];
        q[static_cast<std::size_t>(n)] = acc / hs[0];
    }
    return q;
}

BiJet::BiJet(int kx, int lo, int cap) : kx_(kx), lo_(lo), cap_(cap) {
    if (kx < 0 || cap < lo) throw std::invalid_argument("oracle: bad BiJet grid");
    rows_.assign(static_cast<std::size_t>(kx) + 1, CVec(static_cast<std::size_t>(cap - lo) + 1));
    valid_.assign(static_cast<std::size_t>(kx) + 1, kExact);
}

BiJet BiJet::constant(int kx, int lo, int cap, Complex c) { return v_power(kx, lo, cap, 0, c); }

BiJet BiJet::v_power(int kx, int lo, int cap, int e, Complex c) {
    BiJet b(kx, lo, cap);
    b.set(0, e, c);
    return b;
}

BiJet BiJet::x_series(int kx, int lo, int cap, const CVec& c) {
    BiJet b(kx, lo, cap);
    for (int r = 0; r <= kx && r < static_cast<int>(c.size()); ++r) b.set(r, 0, c[static_cast<std::size_t>(r)]);
    return b;
}

Complex BiJet::at(int r, int e) const {
    if (e > valid(r)) throw std::out_of_range("oracle: coefficient beyond the known range");
    if (e < lo_ || e > cap_) return 0.0;
    return rows_[static_cast<std::size_t>(r)][static_cast<std::size_t>(e - lo_)];
}

void BiJet::set(int r, int e, Complex c) {
    if (e < lo_ || e > cap_) {
        if (c != Complex(0.0)) throw std::overflow_error("grid overflow");
        return;
    }
    rows_[static_cast<std::size_t>(r)][static_cast<std::size_t>(e - lo_)] = c;
}

void BiJet::limit(int r, int e) {
    int& v = valid_[static_cast<std::size_t>(r)];
    v = std::min(v, e);
    auto& row = rows_[static_cast<std::size_t>(r)];
    for (int x = std::max(lo_, e + 1); x <= cap_; ++x) row[static_cast<std::size_t>(x - lo_)] = 0.0;
}

int BiJet::row_valuation(int r) const {
    const auto& row = rows_[static_cast<std::size_t>(r)];
    const int top = std::min(cap_, valid(r));
    for (int e = lo_; e <= top; ++e)
        if (row[static_cast<std::size_t>(e - lo_)] != Complex(0.0)) return e;
    return clamp_valid(static_cast<long long>(valid(r)) + 1);
}

BiJet BiJet::operator+(const BiJet& o) const {
    same_grid(*this, o);
    BiJet out = *this;
    for (int r = 0; r <= kx_; ++r) {
        for (std::size_t i = 0; i < out.rows_[static_cast<std::size_t>(r)].size(); ++i)
            out.rows_[static_cast<std::size_t>(r)][i] += o.rows_[static_cast<std::size_t>(r)][i];
        out.limit(r, o.valid(r));
    }
    return out;
}

BiJet BiJet::operator-(const BiJet& o) const { return *this + o.scaled(-1.0); }

BiJet BiJet::scaled(Complex s) const {
    BiJet out = *this;
    for (auto& row : out.rows_)
        for (Complex& c : row) c *= s;
    return out;
}

BiJet BiJet::operator*(const BiJet& o) const {
    same_grid(*this, o);
    BiJet out(kx_, lo_, cap_);
    for (int r = 0; r <= kx_; ++r) {
        auto& dst = out.rows_[static_cast<std::size_t>(r)];
        long long valid = kExact;
        bool dropped = false;
        for (int i = 0; i <= r; ++i) {
            const int j = r - i;
            const int va = row_valuation(i), vb = o.row_valuation(j);
            const bool a_zero = va > std::min(cap_, valid_[static_cast<std::size_t>(i)]);
            const bool b_zero = vb > std::min(cap_, o.valid_[static_cast<std::size_t>(j)]);
            const bool a_exact = valid_[static_cast<std::size_t>(i)] >= kExact;
            const bool b_exact = o.valid_[static_cast<std::size_t>(j)] >= kExact;
            if ((a_zero && a_exact) || (b_zero && b_exact)) continue;
            valid = std::min<long long>(valid, std::min<long long>(static_cast<long long>(valid_[static_cast<std::size_t>(i)]) + vb,
                                                                   static_cast<long long>(o.valid_[static_cast<std::size_t>(j)]) + va));
            if (a_zero || b_zero) continue;
            const auto& ra = rows_[static_cast<std::size_t>(i)];
            const auto& rb = o.rows_[static_cast<std::size_t>(j)];
            const int ta = std::min(cap_, valid_[static_cast<std::size_t>(i)]);
            const int tb = std::min(cap_, o.valid_[static_cast<std::size_t>(j)]);
            for (int e1 = va; e1 <= ta; ++e1) {
                const Complex a = ra[static_cast<std::size_t>(e1 - lo_)];
                if (a == Complex(0.0)) continue;
                for (int e2 = vb; e2 <= tb; ++e2) {
                    const Complex b = rb[static_cast<std::size_t>(e2 - lo_)];
                    if (b == Complex(0.0)) continue;
                    const int e = e1 + e2;
                    if (e < lo_) throw std::overflow_error("grid overflow");
                    if (e > cap_) {
                        dropped = true;
                        continue;
                    }
                    dst[static_cast<std::size_t>(e - lo_)] += a * b;
                }
            }
        }
        if (dropped) valid = std::min<long long>(valid, cap_);
        out.limit(r, clamp_valid(valid));
    }
    return out;
}

BiJet substitute_series(const CVec& c, const BiJet& w, int known_through) {
    BiJet out(w.kx(), w.lo(), w.cap());
    if (c.empty()) return out;
    BiJet power = BiJet::constant(w.kx(), w.lo(), w.cap(), 1.0);
    const std::size_t n = known_through >= 0 ? std::min(c.size(), static_cast<std::size_t>(known_through) + 1) : c.size();
    for (std::size_t s = 0; s < n; ++s) {
        if (c[s] != Complex(0.0)) out = out + power.scaled(c[s]);
        power = power * w;
    }
    if (known_through >= 0) {
        while (static_cast<int>(n) <= known_through) {
            power = power * w;
            ++known_through;
        }
        for (int r = 0; r <= w.kx(); ++r) out.limit(r, power.row_valuation(r) - 1);
    }
    return out;
}

BiJet bicompose(const BiJet& outer, const BiJet& inner_x, const BiJet& inner_v) {
    same_grid(outer, inner_x);
    same_grid(outer, inner_v);
    const int kx = outer.kx();
    for (int r = 0; r <= kx; ++r)
        for (int e = outer.lo(); e < 0; ++e)
            if (outer.at(r, e) != Complex(0.0)) throw std::invalid_argument("bicompose: outer has negative v powers");
    int emax = 0;
    for (int r = 0; r <= kx; ++r) emax = std::max(emax, std::min(outer.cap(), outer.valid(r)));
    std::vector<BiJet> vpow{BiJet::constant(kx, outer.lo(), outer.cap(), 1.0)};
    for (int e = 1; e <= emax + 1; ++e) vpow.push_back(vpow.back() * inner_v);
    BiJet out(kx, outer.lo(), outer.cap());
    BiJet xpow = BiJet::constant(kx, outer.lo(), outer.cap(), 1.0);
    for (int r = 0; r <= kx; ++r) {
        BiJet row(kx, outer.lo(), outer.cap());
        const int top = std::min(outer.cap(), outer.valid(r));
        for (int e = 0; e <= top; ++e)
            if (outer.at(r, e) != Complex(0.0)) row = row + vpow[static_cast<std::size_t>(e)].scaled(outer.at(r, e));
        if (outer.valid(r) < BiJet::kExact) {
            const BiJet& tail = vpow[static_cast<std::size_t>(std::min(top + 1, emax + 1))];
            for (int rr = 0; rr <= kx; ++rr) row.limit(rr, tail.row_valuation(rr) - 1);
        }
        out = out + row * xpow;
        xpow = xpow * inner_x;
    }
    return out;
}

BiJet evaluate_pole_sum(const RawPoleSum& F, Complex center, const BiJet& w, int series_terms) {
    return Substituter(center, w, series_terms).eval(F);
}

Composite composite_at_p(Complex p, Complex lambda, const CVec& s, const std::vector<CVec>& eps,
                         const std::vector<RawPoleSum>& a_n, const std::vector<RawPoleSum>& b_n, const Grid& g) {
    const int kx = g.kx;
    const BiJet v = BiJet::v_power(kx, g.lo, g.cap, 1);
    CVec s0 = s;
    if (!s0.empty()) s0[0] = 0.0;
    const BiJet sx = BiJet::x_series(kx, g.lo, g.cap, s0);
    const BiJet w = v + sx;
    const BiJet S = sx * BiJet::v_power(kx, g.lo, g.cap, -1);
    BiJet factor(kx, g.lo, g.cap);
    BiJet Spow = BiJet::constant(kx, g.lo, g.cap, 1.0);
    for (int j = 0; j <= kx; ++j) {
        factor = factor + Spow.scaled(binom(lambda, j));
        Spow = Spow * S;
    }
    const BiJet xprime = BiJet::x_series(kx, g.lo, g.cap, {0.0, 1.0}) * factor;
    BiJet X(kx, g.lo, g.cap);
    BiJet xp_pow = xprime;
    for (int r = 1; r <= kx; ++r) {
        if (static_cast<std::size_t>(r) <= eps.size()) X = X + substitute_series(eps[static_cast<std::size_t>(r - 1)], w) * xp_pow;
        xp_pow = xp_pow * xprime;
    }
    const Substituter sub(p, w, g.series_terms);
    return {sum_over_levels(sub, a_n, X, BiJet(kx, g.lo, g.cap)), sum_over_levels(sub, b_n, X, w)};
}

BiJet phi_fixed_point(const CVec& gc, int g_known, const CVec& z, const Grid& g) {
    const int kx = g.kx;
    const BiJet v = BiJet::v_power(kx, g.lo, g.cap, 1);
    CVec z0 = z;
    if (!z0.empty()) z0[0] = 0.0;
    const BiJet zx = BiJet::x_series(kx, g.lo, g.cap, z0);
    const BiJet gv = substitute_series(gc, v, g_known);
    // g'(v) as a row in v, then its reciprocal by long division.
    const int n = g_known >= 0 ? std::min<int>(g_known, static_cast<int>(gc.size()) - 1) : static_cast<int>(gc.size()) - 1;
    CVec dg;
    for (int t = 1; t <= n; ++t) dg.push_back(static_cast<double>(t) * gc[static_cast<std::size_t>(t)]);
    std::size_t val = 0;
    while (val < dg.size() && dg[val] == Complex(0.0)) ++val;
    if (val == dg.size()) throw std::invalid_argument("phi_fixed_point: g' vanishes identically");
    const int inv_lo = -static_cast<int>(val);
    const int known_rel = g_known >= 0 ? (n - 1) - static_cast<int>(val) : BiJet::kExact;
    const int count = std::min(g.cap - inv_lo, known_rel) + 1;
    const CVec inv = laurent_divide({1.0}, 0, dg, 0, count);
    BiJet inv_gp(kx, g.lo, g.cap);
    for (int i = 0; i < count; ++i) inv_gp.set(0, inv_lo + i, inv[static_cast<std::size_t>(i)]);
    inv_gp.limit(0, inv_lo + count - 1);
    BiJet delta(kx, g.lo, g.cap);
    for (int it = 0; it <= kx + 1; ++it) {
        const BiJet G = substitute_series(gc, v + delta, g_known);
        delta = delta - (G - gv - zx) * inv_gp;
    }
    return delta;
}

Composite composite_at_q(Complex q, const CVec& gc, int g_known, const CVec& z, const std::vector<CVec>& sig,
                         const std::vector<RawPoleSum>& a_n, const std::vector<RawPoleSum>& b_n, const Grid& g) {
    const int kx = g.kx;
    const BiJet delta = phi_fixed_point(gc, g_known, z, g);
    const BiJet w = BiJet::v_power(kx, g.lo, g.cap, 1) + delta;
    BiJet X(kx, g.lo, g.cap);
    for (int r = 1; r <= kx && static_cast<std::size_t>(r) <= sig.size(); ++r) {
        CVec e(static_cast<std::size_t>(r) + 1);
        e[static_cast<std::size_t>(r)] = 1.0;
        X = X + substitute_series(sig[static_cast<std::size_t>(r - 1)], w) * BiJet::x_series(kx, g.lo, g.cap, e);
    }
    const Substituter sub(q, w, g.series_terms);
    return {sum_over_levels(sub, a_n, X, BiJet(kx, g.lo, g.cap)), sum_over_levels(sub, b_n, X, w)};
}

Complex newton_phi(const std::function<Complex(Complex)>& g, const std::function<Complex(Complex)>& dg, const CVec& z,
                   Complex x0, Complex u0, double tol) {
    Complex zx = 0.0;
    for (std::size_t r = z.size(); r-- > 1;) zx = (zx + z[r]) * x0;
    const Complex target = g(u0) + zx;
    const double scale = std::max(1.0, std::abs(target));
    Complex w = u0;
    Complex F = g(w) - target;
    for (int it = 0; it < 50; ++it) {
        if (std::abs(F) <= tol * scale) return w;
        const Complex step = F / dg(w);
        double t = 1.0;
        Complex wn = w - step, Fn = g(wn) - target;
        for (int h = 0; h < 30 && std::abs(Fn) >= std::abs(F); ++h) {
            t *= 0.5;
            wn = w - t * step;
            Fn = g(wn) - target;
        }
        w = wn;
        F = Fn;
    }
    if (std::abs(F) <= tol * scale) return w;
    throw VerificationError("newton_phi: no convergence in 50 iterations");
}

CVec cauchy_fit(const std::function<Complex(Complex)>& f, int degree, double radius, int samples) {
    if (samples <= degree) throw std::invalid_argument("cauchy_fit: need more samples than the degree");
    CVec vals(static_cast<std::size_t>(samples));
    for (int l = 0; l < samples; ++l)
        vals[static_cast<std::size_t>(l)] = f(std::polar(radius, 2.0 * std::numbers::pi * l / samples));
    CVec c(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) {
        Complex acc = 0.0;
        for (int l = 0; l < samples; ++l)
            acc += vals[static_cast<std::size_t>(l)] * std::polar(1.0, -2.0 * std::numbers::pi * k * l / samples);
        c[static_cast<std::size_t>(k)] = acc / static_cast<double>(samples) / std::pow(radius, k);
    }
    return c;
}

CVec polyfit(const CVec& t, const CVec& y, int degree) {
    const std::size_t n = t.size(), p = static_cast<std::size_t>(degree) + 1;
    if (y.size() != n || n < p) throw std::invalid_argument("polyfit: not enough samples");
    double scale = 0.0;
    for (const Complex& x : t) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) scale = 1.0;
    // Columns (t/scale)^k, orthonormalized twice by modified Gram-Schmidt.
    CMat Q(p, CVec(n));
    CMat R(p, CVec(p));
    for (std::size_t k = 0; k < p; ++k)
        for (std::size_t i = 0; i < n; ++i) Q[k][i] = std::pow(t[i] / scale, static_cast<int>(k));
    for (std::size_t k = 0; k < p; ++k) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < k; ++j) {
                Complex d = 0.0;
                for (std::size_t i = 0; i < n; ++i) d += std::conj(Q[j][i]) * Q[k][i];
                R[j][k] += d;
                for (std::size_t i = 0; i < n; ++i) Q[k][i] -= d * Q[j][i];
            }
        double nrm = 0.0;
        for (const Complex& x : Q[k]) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw std::invalid_argument("polyfit: degenerate sample points");
        R[k][k] = nrm;
        for (Complex& x : Q[k]) x /= nrm;
    }
    CVec qty(p);
    for (std::size_t k = 0; k < p; ++k)
        for (std::size_t i = 0; i < n; ++i) qty[k] += std::conj(Q[k][i]) * y[i];
    CVec c(p);
    for (std::size_t k = p; k-- > 0;) {
        Complex acc = qty[k];
        for (std::size_t j = k + 1; j < p; ++j) acc -= R[k][j] * c[j];
        c[k] = acc / R[k][k];
    }
    for (std::size_t k = 0; k < p; ++k) c[k] /= std::pow(scale, static_cast<int>(k));
    return c;
}

Complex det_lu(CMat m) {
    const std::size_t n = m.size();
    Complex det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[c].size() != n) throw std::invalid_argument("det_lu: matrix is not square");
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (m[piv][c] == Complex(0.0)) return 0.0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const Complex f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

}  // namespace folijet::oracle
