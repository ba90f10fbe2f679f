#include "folijet/series.hpp"

#include <cmath>

namespace folijet {

namespace {

void collect(int k, int s, int remaining, std::vector<int>& mult, std::vector<FdBPartition>& out) {
    if (s == 0) {
        if (remaining != 0) return;
        FdBPartition part;
        part.k = k;
        part.mult = mult;
        std::uint64_t w = 1;
        for (int i = 2; i <= k; ++i) w *= static_cast<std::uint64_t>(i);
        for (int t = 1; t <= k; ++t) {
            const int rt = mult[static_cast<std::size_t>(t - 1)];
            part.r += rt;
            std::uint64_t tfact = 1;
            for (int i = 2; i <= t; ++i) tfact *= static_cast<std::uint64_t>(i);
            for (int i = 1; i <= rt; ++i) {
                w /= static_cast<std::uint64_t>(i);
                w /= tfact;
            }
        }
        part.weight = w;
        out.push_back(std::move(part));
        return;
    }
    for (int rs = remaining / s; rs >= 0; --rs) {
        mult[static_cast<std::size_t>(s - 1)] = rs;
        collect(k, s - 1, remaining - rs * s, mult, out);
    }
    mult[static_cast<std::size_t>(s - 1)] = 0;
}

std::vector<std::vector<FdBPartition>> build_table() {
    std::vector<std::vector<FdBPartition>> table(kMaxPartitionOrder + 1);
    for (int k = 1; k <= kMaxPartitionOrder; ++k) {
        std::vector<int> mult(static_cast<std::size_t>(k), 0);
        collect(k, k, k, mult, table[static_cast<std::size_t>(k)]);
    }
    return table;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

XJet<Complex> horner(const XJet<Complex>& outer, const XJet<Complex>& inner, int n) {
    XJet<Complex> out = XJet<Complex>::zero(n);
    XJet<Complex> g = inner.truncated(n);
    for (int s = std::min(outer.order(), n); s >= 0; --s) {
        out = out * g;
        out[0] += outer[s];
    }
    return out;
}

}  // namespace

const std::vector<FdBPartition>& enumerate_partitions(int k) {
    if (k < 1) throw std::invalid_argument("partitions are defined for k >= 1");
    if (k > kMaxPartitionOrder) throw std::domain_error("partition order beyond supported maximum");
    static const std::vector<std::vector<FdBPartition>> table = build_table();
    return table[static_cast<std::size_t>(k)];
}

XJet<Complex> compose(const XJet<Complex>& outer, const XJet<Complex>& inner, const ToleranceConfig& tol) {
    if (std::abs(inner[0]) > tol.abs) throw std::invalid_argument("compose: inner constant term is nonzero");
    const int n = std::min(outer.order(), inner.order());
    if (n > kMaxPartitionOrder) return horner(outer, inner, n);
    XJet<Complex> out = XJet<Complex>::zero(n);
    out[0] = outer[0];
    for (int k = 1; k <= n; ++k) {
        std::vector<Complex> w(static_cast<std::size_t>(k)), z(static_cast<std::size_t>(k));
        for (int s = 1; s <= k; ++s) {
            w[static_cast<std::size_t>(s - 1)] = factorial(s) * outer[s];
            z[static_cast<std::size_t>(s - 1)] = factorial(s) * inner[s];
        }
        out[k] = fdb_P(k, w, z) / factorial(k);
    }
    return out;
}

XJet<Complex> revert(const XJet<Complex>& f, const ToleranceConfig& tol) {
    if (f.order() < 1) throw std::invalid_argument("revert: jet order must be at least 1");
    if (std::abs(f[0]) > tol.abs) throw std::invalid_argument("revert: constant term is nonzero");
    if (std::abs(f[1]) <= tol.abs) throw std::invalid_argument("revert: linear coefficient is zero");
    if (std::abs(f[1] - 1.0) > tol.abs) throw std::invalid_argument("revert: linear coefficient is not 1");
    const int n = f.order();
    XJet<Complex> g = XJet<Complex>::zero(n);
    g[1] = 1.0;
    if (n <= kMaxPartitionOrder) {
        for (int r = 2; r <= n; ++r) {
            std::vector<Complex> w(static_cast<std::size_t>(r)), z(static_cast<std::size_t>(r));
            for (int s = 1; s <= r; ++s) {
                w[static_cast<std::size_t>(s - 1)] = s < r ? factorial(s) * g[s] : Complex(0.0);
                z[static_cast<std::size_t>(s - 1)] = s == 1 ? Complex(1.0) : factorial(s) * f[s];
            }
            g[r] = -fdb_Phat(r, w, z) / factorial(r);
        }
        return g;
    }
    // Coefficient of x^r in sum_{s<r} g_s f^s must vanish for r >= 2.
    std::vector<XJet<Complex>> powers{f};
    for (int s = 2; s < n; ++s) powers.push_back(powers.back() * f);
    for (int r = 2; r <= n; ++r) {
        Complex acc = 0.0;
        for (int s = 1; s < r; ++s) acc += g[s] * powers[static_cast<std::size_t>(s - 1)][r];
        g[r] = -acc;
    }
    return g;
}

}  // namespace folijet
