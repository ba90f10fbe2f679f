#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "folijet/core.hpp"

namespace folijet {

inline bool is_zero_element(const Complex& c) { return c == Complex(0.0, 0.0); }

// Truncated power series in x. Coefficient r multiplies x^r, r = 0..order.
// Binary operations truncate to the smaller order; nothing ever extends it.
template <class R>
class XJet {
public:
    XJet() : c_(1) {}
    explicit XJet(std::vector<R> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("XJet needs at least one coefficient");
    }
    static XJet zero(int order) {
        if (order < 0) throw std::invalid_argument("XJet order must be non-negative");
        return XJet(std::vector<R>(static_cast<std::size_t>(order) + 1));
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const R& operator[](int r) const { return c_[static_cast<std::size_t>(r)]; }
    R& operator[](int r) { return c_[static_cast<std::size_t>(r)]; }
    const std::vector<R>& coeffs() const { return c_; }

    XJet truncated(int order) const {
        if (order > this->order()) throw std::invalid_argument("truncation cannot raise the order");
        return XJet(std::vector<R>(c_.begin(), c_.begin() + order + 1));
    }

    // Multiplication by x^t at the same order.
    XJet shifted(int t) const {
        XJet out = zero(order());
        for (int r = 0; r + t <= order(); ++r) out[r + t] = c_[static_cast<std::size_t>(r)];
        return out;
    }

private:
    std::vector<R> c_;
};

template <class R>
XJet<R> operator+(const XJet<R>& a, const XJet<R>& b) {
    const int n = std::min(a.order(), b.order());
    XJet<R> out = XJet<R>::zero(n);
    for (int r = 0; r <= n; ++r) out[r] = a[r] + b[r];
    return out;
}

template <class R>
XJet<R> operator-(const XJet<R>& a, const XJet<R>& b) {
    const int n = std::min(a.order(), b.order());
    XJet<R> out = XJet<R>::zero(n);
    for (int r = 0; r <= n; ++r) out[r] = a[r] - b[r];
    return out;
}

template <class R>
XJet<R> operator*(const XJet<R>& a, const XJet<R>& b) {
    const int n = std::min(a.order(), b.order());
    XJet<R> out = XJet<R>::zero(n);
    for (int i = 0; i <= n; ++i) {
        if (is_zero_element(a[i])) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (is_zero_element(b[j])) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

template <class R>
XJet<R> operator*(const XJet<R>& a, Complex s) {
    XJet<R> out = a;
    for (int r = 0; r <= a.order(); ++r) out[r] = a[r] * s;
    return out;
}

// One term of the Faa di Bruno sum: multiplicities mult[s-1] = r_s with
// sum s*r_s = k, r = sum r_s, weight = k! / prod(r_s! (s!)^r_s).
struct FdBPartition {
    int k = 0;
    std::vector<int> mult;
    int r = 0;
    std::uint64_t weight = 0;
};

inline constexpr int kMaxPartitionOrder = 20;

// Partitions of k in a fixed order (lexicographic in r_k, r_{k-1}, ..., r_1
// descending). Cached; 1 <= k <= kMaxPartitionOrder.
const std::vector<FdBPartition>& enumerate_partitions(int k);

enum class FdBVariant { full, tilde, hat };

namespace detail {

template <class W, class Z>
Z fdb_sum(int k, const std::vector<W>& w, const std::vector<Z>& z, FdBVariant variant) {
    if (k < 1) throw std::invalid_argument("Faa di Bruno order must be >= 1");
    if (static_cast<int>(w.size()) != k || static_cast<int>(z.size()) != k)
        throw std::invalid_argument("Faa di Bruno inputs must have length k");
    Z total{};
    for (const FdBPartition& part : enumerate_partitions(k)) {
        if (variant == FdBVariant::tilde && part.r == 1) continue;
        if (variant == FdBVariant::hat && part.r == k) continue;
        std::optional<Z> prod;
        for (int s = 1; s <= k; ++s) {
            for (int t = 0; t < part.mult[static_cast<std::size_t>(s - 1)]; ++t)
                prod = prod ? Z(*prod * z[static_cast<std::size_t>(s - 1)]) : z[static_cast<std::size_t>(s - 1)];
        }
        total += *prod * (w[static_cast<std::size_t>(part.r - 1)] * static_cast<double>(part.weight));
    }
    return total;
}

}  // namespace detail

// P^k[w; z] = sum over partitions of weight * w_r * z_1^r_1 ... z_k^r_k.
// w and z hold entries 1..k at indices 0..k-1.
template <class W, class Z>
Z fdb_P(int k, const std::vector<W>& w, const std::vector<Z>& z) {
    return detail::fdb_sum(k, w, z, FdBVariant::full);
}

// P^k without the w_1 z_k term.
template <class W, class Z>
Z fdb_Ptilde(int k, const std::vector<W>& w, const std::vector<Z>& z) {
    return detail::fdb_sum(k, w, z, FdBVariant::tilde);
}

// P^k without the w_k z_1^k term.
template <class W, class Z>
Z fdb_Phat(int k, const std::vector<W>& w, const std::vector<Z>& z) {
    return detail::fdb_sum(k, w, z, FdBVariant::hat);
}

// Jet of outer(inner(x)); inner must vanish at 0. Uses the Faa di Bruno
// polynomials up to kMaxPartitionOrder and plain Horner substitution beyond.
XJet<Complex> compose(const XJet<Complex>& outer, const XJet<Complex>& inner,
                      const ToleranceConfig& tol = {});

// Compositional inverse of a tangent-to-identity jet.
XJet<Complex> revert(const XJet<Complex>& f, const ToleranceConfig& tol = {});

// sum_s outer[s] * inner^s for ring coefficients. inner[0] is assumed to be
// the zero element; the caller guarantees it.
template <class R>
XJet<R> substitute(const std::vector<R>& outer, const XJet<R>& inner) {
    const int n = inner.order();
    XJet<R> out = XJet<R>::zero(n);
    if (outer.empty()) return out;
    out[0] = outer[0];
    XJet<R> power = inner;
    for (int s = 1; s <= n && s < static_cast<int>(outer.size()); ++s) {
        if (!is_zero_element(outer[static_cast<std::size_t>(s)])) {
            for (int r = s; r <= n; ++r) {
                if (is_zero_element(power[r])) continue;
                out[r] += power[r] * outer[static_cast<std::size_t>(s)];
            }
        }
        if (s < n) power = power * inner;
    }
    return out;
}

}  // namespace folijet
