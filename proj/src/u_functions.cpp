#include "folijet/u_functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace folijet {

namespace {

constexpr int kExactThreshold = LaurentJet::kExact / 2;

int clamp_validity(long long e) {
    if (e >= kExactThreshold) return LaurentJet::kExact;
    if (e <= -kExactThreshold) return -kExactThreshold;
    return static_cast<int>(e);
}

std::string fmt(Complex z) {
    std::ostringstream os;
    os << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

}  // namespace

LaurentJet::LaurentJet(Complex center, int min_exp, std::vector<Complex> coeffs, int max_exp)
    : center_(center), anchored_(true), min_exp_(min_exp), max_exp_(max_exp), c_(std::move(coeffs)) {
    normalize();
}

LaurentJet LaurentJet::constant(Complex center, Complex c) { return LaurentJet(center, 0, {c}); }

LaurentJet LaurentJet::monomial(Complex center, Complex c, int exp) { return LaurentJet(center, exp, {c}); }

LaurentJet LaurentJet::polynomial(Complex center, const std::vector<Complex>& coeffs) {
    return LaurentJet(center, 0, coeffs);
}

void LaurentJet::normalize() {
    max_exp_ = clamp_validity(max_exp_);
    const long long keep = static_cast<long long>(max_exp_) - min_exp_ + 1;
    if (keep <= 0) {
        c_.clear();
    } else if (static_cast<long long>(c_.size()) > keep) {
        c_.resize(static_cast<std::size_t>(keep));
    }
    while (!c_.empty() && c_.back() == Complex(0.0)) c_.pop_back();
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == Complex(0.0)) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        min_exp_ = 0;
        return;
    }
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        min_exp_ += static_cast<int>(lead);
    }
}

Complex LaurentJet::common_center(const LaurentJet& a, const LaurentJet& b) {
    if (a.anchored_ && b.anchored_ && a.center_ != b.center_)
        throw std::invalid_argument("Laurent jets at different centers " + fmt(a.center_) + " and " +
                                    fmt(b.center_));
    return a.anchored_ ? a.center_ : b.center_;
}

Complex LaurentJet::coeff(int e) const {
    if (e > max_exp_)
        throw PrecisionError("Laurent coefficient of exponent " + std::to_string(e) + " requested, known through " +
                             std::to_string(max_exp_));
    if (c_.empty() || e < min_exp_ || e > top_exp()) return 0.0;
    return c_[static_cast<std::size_t>(e - min_exp_)];
}

int LaurentJet::valuation() const {
    if (c_.empty()) return clamp_validity(static_cast<long long>(max_exp_) + 1);
    return min_exp_;
}

int LaurentJet::pole_order() const {
    if (c_.empty()) return 0;
    return std::max(0, -min_exp_);
}

LaurentJet LaurentJet::principal_part() const {
    if (max_exp_ < -1)
        throw PrecisionError("principal part needs exponent -1, jet known through " + std::to_string(max_exp_));
    LaurentJet out;
    out.anchored_ = anchored_;
    out.center_ = center_;
    if (!c_.empty() && min_exp_ < 0) {
        out.min_exp_ = min_exp_;
        out.c_.assign(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(-min_exp_, static_cast<std::ptrdiff_t>(c_.size())));
    }
    out.normalize();
    return out;
}

LaurentJet LaurentJet::regular_part() const {
    LaurentJet out;
    out.anchored_ = anchored_;
    out.center_ = center_;
    out.max_exp_ = max_exp_;
    for (int e = std::max(0, min_exp_); e <= top_exp(); ++e) {
        if (out.c_.empty()) out.min_exp_ = e;
        out.c_.push_back(c_[static_cast<std::size_t>(e - min_exp_)]);
    }
    out.normalize();
    return out;
}

LaurentJet LaurentJet::derivative() const {
    LaurentJet out;
    out.anchored_ = anchored_;
    out.center_ = center_;
    out.max_exp_ = is_exact() ? kExact : max_exp_ - 1;
    if (!c_.empty()) {
        out.min_exp_ = min_exp_ - 1;
        out.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] * static_cast<double>(min_exp_ + static_cast<int>(i));
    }
    out.normalize();
    return out;
}

LaurentJet LaurentJet::truncated(int max_exp) const {
    LaurentJet out = *this;
    out.max_exp_ = std::min(max_exp_, max_exp);
    out.normalize();
    return out;
}

LaurentJet LaurentJet::chopped(double cutoff) const {
    LaurentJet out = *this;
    for (Complex& c : out.c_)
        if (std::abs(c) <= cutoff) c = 0.0;
    out.normalize();
    return out;
}

LaurentJet LaurentJet::inverse(int order) const {
    if (c_.empty()) throw DegenerateError("inverse of a Laurent jet with no known nonzero coefficient");
    const int v = min_exp_;
    const bool single = c_.size() == 1;
    long long rel = is_exact() ? static_cast<long long>(kExact) : static_cast<long long>(max_exp_) - v;
    long long maxr = std::min<long long>(static_cast<long long>(-v) + rel, order);
    if (single && is_exact()) return monomial(center_, 1.0 / c_[0], -v);
    if (maxr < -v) {
        LaurentJet out(center_, 0, {}, clamp_validity(maxr));
        return out;
    }
    const std::size_t n = static_cast<std::size_t>(maxr + v + 1);
    std::vector<Complex> r(n);
    const Complex inv0 = 1.0 / c_[0];
    r[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        Complex acc = 0.0;
        const std::size_t lim = std::min(k, c_.size() - 1);
        for (std::size_t i = 1; i <= lim; ++i) acc += c_[i] * r[k - i];
        r[k] = -acc * inv0;
    }
    return LaurentJet(center_, -v, std::move(r), static_cast<int>(maxr));
}

double LaurentJet::max_abs() const {
    double m = 0.0;
    for (const Complex& c : c_) m = std::max(m, std::abs(c));
    return m;
}

LaurentJet& LaurentJet::operator+=(const LaurentJet& o) {
    if (o.is_exact_zero()) return *this;
    const Complex center = common_center(*this, o);
    const int maxr = std::min(max_exp_, o.max_exp_);
    if (c_.empty() && o.c_.empty()) {
        *this = LaurentJet(center, 0, {}, maxr);
        return *this;
    }
    int lo = c_.empty() ? o.min_exp_ : (o.c_.empty() ? min_exp_ : std::min(min_exp_, o.min_exp_));
    int hi = std::max(c_.empty() ? lo : top_exp(), o.c_.empty() ? lo : o.top_exp());
    hi = std::min(hi, maxr);
    std::vector<Complex> sum(hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0);
    for (int e = std::max(lo, min_exp_); e <= std::min(hi, top_exp()); ++e)
        sum[static_cast<std::size_t>(e - lo)] += c_[static_cast<std::size_t>(e - min_exp_)];
    for (int e = std::max(lo, o.min_exp_); e <= std::min(hi, o.top_exp()); ++e)
        sum[static_cast<std::size_t>(e - lo)] += o.c_[static_cast<std::size_t>(e - o.min_exp_)];
    *this = LaurentJet(center, lo, std::move(sum), maxr);
    return *this;
}

LaurentJet LaurentJet::operator-() const { return *this * Complex(-1.0); }

LaurentJet& LaurentJet::operator-=(const LaurentJet& o) { return *this += -o; }

LaurentJet operator*(const LaurentJet& a, const LaurentJet& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return LaurentJet();
    const Complex center = LaurentJet::common_center(a, b);
    const long long va = a.valuation(), vb = b.valuation();
    const int maxr = clamp_validity(std::min(static_cast<long long>(a.max_exp_) + vb,
                                             static_cast<long long>(b.max_exp_) + va));
    if (a.c_.empty() || b.c_.empty()) return LaurentJet(center, 0, {}, maxr);
    const int lo = a.min_exp_ + b.min_exp_;
    const int hi = std::min(a.top_exp() + b.top_exp(), maxr);
    if (hi < lo) return LaurentJet(center, 0, {}, maxr);
    std::vector<Complex> out(static_cast<std::size_t>(hi - lo + 1));
    const std::size_t na = a.c_.size(), nb = b.c_.size(), nout = out.size();
    for (std::size_t i = 0; i < na && i < nout; ++i) {
        const Complex ai = a.c_[i];
        if (ai == Complex(0.0)) continue;
        const std::size_t lim = std::min(nb, nout - i);
        for (std::size_t j = 0; j < lim; ++j) out[i + j] += ai * b.c_[j];
    }
    return LaurentJet(center, lo, std::move(out), maxr);
}

LaurentJet operator*(const LaurentJet& a, Complex s) {
    if (s == Complex(0.0)) {
        if (a.is_exact()) return LaurentJet();
        return a.anchored_ ? LaurentJet(a.center_, 0, {}, a.max_exp_) : LaurentJet();
    }
    LaurentJet out = a;
    for (Complex& c : out.c_) c *= s;
    return out;
}

std::vector<Complex> MarkedPoints::all() const {
    std::vector<Complex> out = p;
    out.insert(out.end(), q.begin(), q.end());
    return out;
}

void MarkedPoints::validate(double min_separation) const {
    if (p.empty()) throw InputError("at least one singular point p is required");
    const std::vector<Complex> pts = all();
    for (const Complex& z : pts) checked(z, "marked point");
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            if (std::abs(pts[a] - pts[b]) < min_separation)
                throw DegenerateError("marked points " + fmt(pts[a]) + " and " + fmt(pts[b]) + " are closer than " +
                                      std::to_string(min_separation));
}

void PoleSum::add_principal(Complex pole, const std::vector<Complex>& coeffs) {
    std::vector<Complex> trimmed = coeffs;
    while (!trimmed.empty() && trimmed.back() == Complex(0.0)) trimmed.pop_back();
    if (trimmed.empty()) return;
    for (PoleTerm& t : terms_) {
        if (t.pole != pole) continue;
        if (t.coeffs.size() < trimmed.size()) t.coeffs.resize(trimmed.size());
        for (std::size_t m = 0; m < trimmed.size(); ++m) t.coeffs[m] += trimmed[m];
        return;
    }
    terms_.push_back({pole, std::move(trimmed)});
}

void PoleSum::add_principal(const LaurentJet& principal, double drop_below) {
    if (!principal.has_center() || principal.stored().empty()) return;
    const int order = principal.pole_order();
    std::vector<Complex> coeffs(static_cast<std::size_t>(order));
    for (int m = 1; m <= order; ++m) {
        const Complex c = principal.coeff(-m);
        coeffs[static_cast<std::size_t>(m - 1)] = std::abs(c) < drop_below ? Complex(0.0) : c;
    }
    add_principal(principal.center(), coeffs);
}

std::vector<Complex> PoleSum::principal_at(Complex pole) const {
    for (const PoleTerm& t : terms_)
        if (t.pole == pole) return t.coeffs;
    return {};
}

bool PoleSum::vanishes_at_infinity() const {
    return std::all_of(poly_.begin(), poly_.end(), [](Complex c) { return c == Complex(0.0); });
}

PoleSum PoleSum::derivative() const {
    PoleSum out;
    for (std::size_t d = 1; d < poly_.size(); ++d) {
        if (out.poly_.empty()) out.poly_.resize(poly_.size() - 1);
        out.poly_[d - 1] = poly_[d] * static_cast<double>(d);
    }
    for (const PoleTerm& t : terms_) {
        std::vector<Complex> c(t.coeffs.size() + 1);
        for (std::size_t m = 1; m <= t.coeffs.size(); ++m) c[m] = -static_cast<double>(m) * t.coeffs[m - 1];
        out.add_principal(t.pole, c);
    }
    return out;
}

Complex PoleSum::evaluate(Complex u) const {
    Complex v = 0.0;
    for (std::size_t d = poly_.size(); d-- > 0;) v = v * u + poly_[d];
    for (const PoleTerm& t : terms_) {
        if (u == t.pole) throw DegenerateError("evaluation of a pole sum at its pole " + fmt(u));
        const Complex r = 1.0 / (u - t.pole);
        Complex acc = 0.0;
        for (std::size_t m = t.coeffs.size(); m-- > 0;) acc = (acc + t.coeffs[m]) * r;
        v += acc;
    }
    return v;
}

LaurentJet PoleSum::expand_at(Complex center, int order) const {
    LaurentJet out;
    if (!poly_.empty()) {
        // Taylor shift of the polynomial part to the new center.
        std::vector<Complex> shifted = poly_;
        const std::size_t n = shifted.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j > i; --j) shifted[j - 1] += center * shifted[j];
        out += LaurentJet(center, 0, shifted).truncated(order);
    }
    for (const PoleTerm& t : terms_) {
        if (t.pole == center) {
            std::vector<Complex> c(t.coeffs.rbegin(), t.coeffs.rend());
            out += LaurentJet(center, -static_cast<int>(t.coeffs.size()), c);
            continue;
        }
        if (order < 0) {
            out += LaurentJet(center, 0, {}, order);
            continue;
        }
        const Complex d = center - t.pole;
        const Complex inv = 1.0 / d;
        std::vector<Complex> series(static_cast<std::size_t>(order) + 1);
        for (std::size_t m = 1; m <= t.coeffs.size(); ++m) {
            if (t.coeffs[m - 1] == Complex(0.0)) continue;
            // (t + d)^{-m} = sum_j binom(-m, j) d^{-m-j} t^j
            Complex term = t.coeffs[m - 1] * std::pow(inv, static_cast<int>(m));
            for (int j = 0; j <= order; ++j) {
                series[static_cast<std::size_t>(j)] += term;
                term *= -static_cast<double>(static_cast<int>(m) + j) / (j + 1) * inv;
            }
        }
        out += LaurentJet(center, 0, std::move(series), order);
    }
    if (!out.has_center()) out = LaurentJet(center, 0, {});
    return out;
}

PoleSum& PoleSum::operator+=(const PoleSum& o) {
    if (poly_.size() < o.poly_.size()) poly_.resize(o.poly_.size());
    for (std::size_t d = 0; d < o.poly_.size(); ++d) poly_[d] += o.poly_[d];
    for (const PoleTerm& t : o.terms_) add_principal(t.pole, t.coeffs);
    return *this;
}

PoleSum& PoleSum::operator*=(Complex s) {
    for (Complex& c : poly_) c *= s;
    for (PoleTerm& t : terms_)
        for (Complex& c : t.coeffs) c *= s;
    return *this;
}

QuotientParts principal_part_quotient(const LaurentJet& f, const LaurentJet& h, const ToleranceConfig& tol) {
    if (!h.has_center()) throw DegenerateError("division by the zero function");
    if (f.has_center() && f.center() != h.center())
        throw std::invalid_argument("principal_part_quotient: jets at different centers");
    LaurentJet den = h;
    if (h.min_exp() >= 0 && negligible(h.coeff(0), h.max_abs(), tol)) {
        if (negligible(h.coeff(1), h.max_abs(), tol))
            throw DegenerateError("principal_part_quotient: denominator vanishes to order >= 2 at " + fmt(h.center()));
        std::vector<Complex> c;
        for (int e = 1; e <= h.top_exp(); ++e) c.push_back(h.coeff(e));
        den = LaurentJet(h.center(), 1, std::move(c), h.max_exp());
    }
    if (f.is_exact_zero()) return {LaurentJet(h.center(), 0, {}), 0.0};
    const int need = std::max(0, -f.valuation()) + 1;
    const LaurentJet q = f * den.inverse(need);
    return {q.principal_part(), q.coeff(0)};
}

}  // namespace folijet
