#include <doctest.h>

#include "folijet/tangency.hpp"

using folijet::Complex;
using folijet::XJet;

namespace {

folijet::FoliationPairData config(int k0) {
    folijet::FoliationPairData fp;
    fp.k0 = k0;
    fp.points.p = {Complex(0.3, 0.1), Complex(-1.1, 0.4)};
    fp.points.q = {Complex(1.2, -0.5)};
    const Complex lambdas[] = {Complex(0.21, -0.37), Complex(-0.55, 0.12)};
    for (std::size_t i = 0; i < 2; ++i) {
        std::vector<Complex> s(static_cast<std::size_t>(k0) + 1);
        for (int k = 1; k <= k0; ++k) s[static_cast<std::size_t>(k)] = Complex(0.1 * k, -0.05 * (i + 1));
        fp.singular.push_back(folijet::SingularModel::make(static_cast<int>(i), fp.points.p[i], lambdas[i], XJet<Complex>(s)));
    }
    std::vector<Complex> z(static_cast<std::size_t>(k0) + 1);
    for (int k = 1; k <= k0; ++k) z[static_cast<std::size_t>(k)] = Complex(k == 1 ? 1.1 : 0.1, 0.05 * k);
    fp.tangency = {folijet::TangencyModel::from_tau(0, fp.points.q[0], Complex(0.35, -0.6), XJet<Complex>(z),
                                                    folijet::default_involution_order(k0))};
    fp.background = folijet::BackgroundData::standard(2, 1);
    return fp;
}

}  // namespace

TEST_CASE("curve_coeffs inverts the implicit parametrization") {
    // beta o alpha^{-1} with alpha = x + x^2 and beta = x.
    const folijet::BranchJet b = folijet::curve_coeffs(XJet<Complex>({0.0, 1.0, 1.0, 0.0, 0.0}),
                                                       XJet<Complex>({0.0, 1.0, 0.0, 0.0, 0.0}), Complex(2.0));
    CHECK(b.anchor == Complex(2.0));
    CHECK(b.c(0) == Complex(0.0));
    CHECK(std::abs(b.c(1) - 1.0) < 1e-15);
    CHECK(std::abs(b.c(2) + 1.0) < 1e-15);
    CHECK(std::abs(b.c(3) - 2.0) < 1e-15);
    CHECK(std::abs(b.c(4) + 5.0) < 1e-14);
}

TEST_CASE("blow_down multiplies by x") {
    folijet::BranchJet b{Complex(0.5, 1.0), XJet<Complex>({0.0, 2.0, 3.0})};
    const XJet<Complex> y = folijet::blow_down(b);
    REQUIRE(y.order() == 3);
    CHECK(y[0] == Complex(0.0));
    CHECK(y[1] == Complex(0.5, 1.0));
    CHECK(y[2] == Complex(2.0));
    CHECK(y[3] == Complex(3.0));
}

TEST_CASE("one branch per marked point, anchored there") {
    const folijet::FoliationPairData fp = config(5);
    const folijet::TangencyCurveJets c = folijet::compute_tangency(fp);
    CHECK(c.order == 5);
    REQUIRE(c.p.size() == 2u);
    REQUIRE(c.q.size() == 1u);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(c.p[i].anchor == fp.points.p[i]);
        CHECK(c.p[i].order() == 5);
    }
    CHECK(c.q[0].anchor == fp.points.q[0]);
}

TEST_CASE("lower orders are prefixes of higher orders") {
    const folijet::FoliationPairData fp = config(6);
    const folijet::TangencyCurveJets hi = folijet::compute_tangency(fp, 6);
    const folijet::TangencyCurveJets lo = folijet::compute_tangency(fp, 3);
    for (std::size_t i = 0; i < 2; ++i)
        for (int k = 1; k <= 3; ++k)
            CHECK(std::abs(hi.p[i].c(k) - lo.p[i].c(k)) < 1e-12 * std::max(1.0, std::abs(hi.p[i].c(k))));
    for (int k = 1; k <= 3; ++k)
        CHECK(std::abs(hi.q[0].c(k) - lo.q[0].c(k)) < 1e-12 * std::max(1.0, std::abs(hi.q[0].c(k))));
}

TEST_CASE("level-k coefficient is affine in the level-k invariants") {
    // Changing s_{1,k} and z_{1,k} at the top level only moves the level-k
    // curve coefficients, and does so linearly.
    const int K = 4;
    const folijet::FoliationPairData base = config(K);
    folijet::FoliationPairData one = base, two = base;
    one.singular[0].s[K] += 0.1;
    two.singular[0].s[K] += 0.2;
    const auto c0 = folijet::compute_tangency(base);
    const auto c1 = folijet::compute_tangency(one);
    const auto c2 = folijet::compute_tangency(two);
    for (int k = 1; k < K; ++k) CHECK(std::abs(c1.p[0].c(k) - c0.p[0].c(k)) < 1e-13);
    const Complex d1 = c1.p[0].c(K) - c0.p[0].c(K);
    const Complex d2 = c2.p[0].c(K) - c0.p[0].c(K);
    CHECK(std::abs(d1) > 1e-3);
    CHECK(std::abs(d2 - 2.0 * d1) < 1e-12);
}
