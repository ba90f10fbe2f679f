#include <doctest.h>

#include <map>

#include "folijet/local_models.hpp"

using folijet::Complex;
using folijet::LaurentJet;
using folijet::XJet;

namespace {

// Exact values from tests/reference/local_models_refs.py.
const std::map<int, std::map<int, double>> kPsiRef = {
    {1, {{0, 1.0}}},
    {2, {{-1, 0.16666666666666666667}, {0, 0}}},
    {3, {{-2, -0.027777777777777777778}, {-1, 0.11111111111111111111}, {0, 0}}},
    {4, {{-3, 0.0077160493827160493827}, {-2, -0.037037037037037037037}, {-1, 0}, {0, 0}}},
};

const std::map<int, std::map<int, double>> kPhiRef = {
    {1, {{-1, 0.5}, {0, -0.75}, {1, 0.125}, {2, 0.0625}, {3, 0.03125}, {4, 0.015625}}},
    {2, {{-3, -0.125}, {-2, 0.1875}, {-1, 0.25}, {0, -0.40625}, {1, 0.0390625}, {2, 0.01953125},
         {3, 0.01171875}, {4, 0.0078125}}},
    {3, {{-5, 0.0625}, {-4, -0.15625}, {-3, -0.015625}, {-2, 0.1796875}, {-1, -0.0078125}, {0, -0.03125},
         {1, -0.021484375}, {2, -0.0107421875}, {3, -0.004150390625}, {4, -0.0008544921875}}},
};

}  // namespace

TEST_CASE("psi coefficients match an exact symbolic expansion") {
    const auto sm = folijet::SingularModel::make(0, 0.0, 1.0 / 3.0, XJet<Complex>({0.0, 0.5, 1.0 / 3.0, 0.0}));
    const XJet<LaurentJet> psi = folijet::psi_hat_coeffs(sm, 4);
    for (const auto& [k, row] : kPsiRef) {
        CHECK(psi[k].pole_order() <= k - 1);
        for (const auto& [e, ref] : row) CHECK(std::abs(psi[k].coeff(e) - Complex(ref)) < 1e-14);
    }
}

TEST_CASE("psi_1 is exactly one") {
    const auto sm = folijet::SingularModel::make(0, Complex(0.4, -0.2), Complex(1.0, 1.0),
                                                 XJet<Complex>({0.0, Complex(0.3, 0.1), 0.2}));
    const XJet<LaurentJet> psi = folijet::psi_hat_coeffs(sm, 3);
    CHECK(psi[1].coeff(0) == Complex(1.0));
    CHECK(psi[1].pole_order() == 0);
}

TEST_CASE("psi for integer lambda is a finite sum") {
    // x (1 + s1 x / u)^2 = x + 2 s1 x^2 / u + s1^2 x^3 / u^2.
    const Complex s1(0.7, -0.4);
    const auto sm = folijet::SingularModel::make(0, 0.0, 2.0, XJet<Complex>({0.0, s1, 0.0, 0.0}));
    const XJet<LaurentJet> psi = folijet::psi_hat_coeffs(sm, 4);
    CHECK(std::abs(psi[2].coeff(-1) - 2.0 * s1) < 1e-15);
    CHECK(std::abs(psi[3].coeff(-2) - s1 * s1) < 1e-15);
    CHECK(psi[4].max_abs() < 1e-15);
}

TEST_CASE("phi coefficients match an exact symbolic expansion") {
    // tau = -1 gives g = v^2 / (1 - v).
    const auto tm = folijet::TangencyModel::from_tau(0, 0.0, -1.0, XJet<Complex>({0.0, 1.0, 0.5, 0.0}), 20);
    const XJet<LaurentJet> phi = folijet::phi_coeffs(tm, 3, 8);
    for (const auto& [k, row] : kPhiRef) {
        for (const auto& [e, ref] : row) {
            INFO("k=" << k << " e=" << e);
            CHECK(std::abs(phi[k].coeff(e) - Complex(ref)) < 1e-12 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("Mobius involution gives g = v^2 / (1 + tau v)") {
    const Complex tau(0.4, -0.3);
    const auto tm = folijet::TangencyModel::from_tau(0, 1.0, tau, XJet<Complex>({0.0, 1.0}), 8);
    REQUIRE(tm.mobius.has_value());
    CHECK(std::abs(tm.involution[1] + 1.0) < 1e-15);
    CHECK(std::abs(tm.involution[2] - tau) < 1e-15);
    const XJet<Complex> g = tm.g_jet();
    CHECK(std::abs(g[2] - 1.0) < 1e-15);
    CHECK(std::abs(g[3] + tau) < 1e-15);
    CHECK(std::abs(g[4] - tau * tau) < 1e-15);
}

TEST_CASE("conjugated involution squares to the identity") {
    const XJet<Complex> h({0.0, 1.0, Complex(-0.2, 0.1), Complex(0.3, 0.0), Complex(0.0, -0.1)});
    const auto tm = folijet::TangencyModel::from_conjugator(0, 0.0, h, XJet<Complex>({0.0, 1.0}), 10, {});
    const XJet<Complex> inv = tm.involution;
    const XJet<Complex> twice = folijet::substitute(inv.coeffs(), inv);
    CHECK(std::abs(twice[1] - 1.0) < 1e-13);
    for (int r = 2; r <= twice.order(); ++r) CHECK(std::abs(twice[r]) < 1e-12);
}

TEST_CASE("involution data is validated") {
    CHECK_THROWS_AS(folijet::TangencyModel::from_involution(0, 0.0, XJet<Complex>({0.0, -1.0, 0.3, 5.0}),
                                                            XJet<Complex>({0.0, 1.0}), {}),
                    folijet::InputError);
    CHECK_THROWS_AS(folijet::TangencyModel::from_g(0, 0.0, XJet<Complex>({0.0, 0.0, 2.0, 0.0}),
                                                   XJet<Complex>({0.0, 1.0}), {}),
                    folijet::InputError);
    CHECK_THROWS_AS(folijet::SingularModel::make(0, 0.0, 0.5, XJet<Complex>({0.1, 0.2})), folijet::InputError);
}

TEST_CASE("background normalizations are enforced") {
    folijet::BackgroundData bg = folijet::BackgroundData::standard(2, 1);
    CHECK(bg.is_standard());
    CHECK_NOTHROW(bg.validate(2, 1, {}));
    bg.eps[1][0] = {2.0};
    CHECK_THROWS_AS(bg.validate(2, 1, {}), folijet::InputError);
}

TEST_CASE("pair data requires invariants through k0") {
    folijet::FoliationPairData fp;
    fp.points.p = {0.0};
    fp.points.q = {1.0};
    fp.k0 = 2;
    fp.singular = {folijet::SingularModel::make(0, 0.0, 0.3, XJet<Complex>({0.0, 0.1, 0.2}))};
    fp.tangency = {folijet::TangencyModel::from_tau(0, 1.0, 0.4, XJet<Complex>({0.0, 0.0, 0.2}), 8)};
    fp.background = folijet::BackgroundData::standard(1, 1);
    CHECK_NOTHROW(fp.validate(false));
    CHECK_THROWS_AS(fp.validate(true), folijet::InputError);
}
