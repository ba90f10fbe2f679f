#include <doctest.h>

#include <random>

#include "folijet/normal_forms.hpp"
#include "folijet/verify.hpp"

using folijet::Complex;
using folijet::XJet;

namespace {

// One singular point, one tangency point with a Mobius involution.
folijet::FoliationPairData tiny(int k0) {
    folijet::FoliationPairData fp;
    fp.k0 = k0;
    fp.points.p = {0.0};
    fp.points.q = {1.0};
    std::vector<Complex> s(static_cast<std::size_t>(k0) + 1), z(static_cast<std::size_t>(k0) + 1);
    for (int k = 1; k <= k0; ++k) {
        s[static_cast<std::size_t>(k)] = Complex(0.5, 0.0) / static_cast<double>(k);
        z[static_cast<std::size_t>(k)] = Complex(k == 1 ? 1.0 : 0.2, 0.1 * k);
    }
    fp.singular = {folijet::SingularModel::make(0, 0.0, Complex(0.3, 0.2), XJet<Complex>(s))};
    fp.tangency = {folijet::TangencyModel::from_tau(0, 1.0, Complex(0.4, -0.1), XJet<Complex>(z),
                                                    folijet::default_involution_order(k0))};
    fp.background = folijet::BackgroundData::standard(1, 1);
    return fp;
}

}  // namespace

TEST_CASE("minimal configuration: a_1 = 1 and b_1 = -z_1/(2(u - q))") {
    const folijet::FoliationPairData fp = tiny(1);
    const folijet::NormalFormTable t = folijet::compute_normal_form(fp);
    REQUIRE(t.order == 1);
    const folijet::PoleSum& a1 = t.a_n[1];
    REQUIRE(a1.poly().size() >= 1u);
    CHECK(a1.poly()[0] == Complex(1.0));
    for (std::size_t e = 1; e < a1.poly().size(); ++e) CHECK(a1.poly()[e] == Complex(0.0));
    for (const auto& term : a1.terms())
        for (Complex c : term.coeffs) CHECK(c == Complex(0.0));

    const folijet::PoleSum& b1 = t.b_n[1];
    const std::vector<Complex> at_q = b1.principal_at(1.0);
    REQUIRE(at_q.size() >= 1u);
    const Complex z1 = fp.tangency[0].z[1];
    CHECK(std::abs(at_q[0] + z1 / 2.0) < 1e-15);
    for (std::size_t m = 1; m < at_q.size(); ++m) CHECK(std::abs(at_q[m]) < 1e-15);
    for (Complex c : b1.principal_at(0.0)) CHECK(std::abs(c) < 1e-15);
    for (Complex c : b1.poly()) CHECK(std::abs(c) < 1e-15);
}

TEST_CASE("local jets are holomorphic at their centers") {
    const folijet::FoliationPairData fp = tiny(4);
    const folijet::NormalFormTable t = folijet::compute_normal_form(fp);
    for (int k = 1; k <= 4; ++k) {
        CHECK(t.a_p[0][static_cast<std::size_t>(k)].pole_order() == 0);
        CHECK(t.b_p[0][static_cast<std::size_t>(k)].pole_order() == 0);
        CHECK(t.a_q[0][static_cast<std::size_t>(k)].pole_order() == 0);
        CHECK(t.b_q[0][static_cast<std::size_t>(k)].pole_order() == 0);
    }
    CHECK(t.cancellation < 1e-10);
}

TEST_CASE("oracle composites reproduce the normal form") {
    for (int k0 : {1, 2, 3, 4}) {
        const auto checks = folijet::verify::check_config(tiny(k0));
        for (const auto& r : checks) {
            INFO("k0=" << k0 << " " << r.name << " measured=" << r.measured << " " << r.detail);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("normal form is deterministic") {
    const folijet::FoliationPairData fp = tiny(5);
    const folijet::NormalFormTable a = folijet::compute_normal_form(fp);
    const folijet::NormalFormTable b = folijet::compute_normal_form(fp);
    for (int k = 1; k <= 5; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        CHECK(a.b_n[kk].poly() == b.b_n[kk].poly());
        REQUIRE(a.b_n[kk].terms().size() == b.b_n[kk].terms().size());
        for (std::size_t t = 0; t < a.b_n[kk].terms().size(); ++t)
            CHECK(a.b_n[kk].terms()[t].coeffs == b.b_n[kk].terms()[t].coeffs);
    }
}

TEST_CASE("residual terms vanish at level one") {
    const folijet::FoliationPairData fp = tiny(2);
    const folijet::NormalFormTable t = folijet::compute_normal_form(fp, 1);
    const folijet::ResidualPair rp = folijet::residual_A_B_at_p(fp, 0, 1, t);
    const folijet::ResidualPair rq = folijet::residual_A_B_at_q(fp, 0, 1, t);
    CHECK(rp.A.max_abs() == 0.0);
    CHECK(rp.B.max_abs() == 0.0);
    CHECK(rq.A.max_abs() == 0.0);
    CHECK(rq.B.max_abs() == 0.0);
}

TEST_CASE("validation rejects a vanishing z_1") {
    folijet::FoliationPairData fp = tiny(3);
    CHECK_NOTHROW(fp.validate(true));
    fp.tangency[0].z[1] = 0.0;
    CHECK_THROWS_AS(fp.validate(true), folijet::InputError);
}
