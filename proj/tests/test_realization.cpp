#include <doctest.h>

#include "folijet/realization.hpp"

using folijet::Complex;
using folijet::XJet;

namespace {

folijet::FoliationPairData config(int k0, Complex lambda1 = Complex(0.21, -0.37)) {
    folijet::FoliationPairData fp;
    fp.k0 = k0;
    fp.points.p = {Complex(0.3, 0.1), Complex(-1.1, 0.4), Complex(0.9, 0.9)};
    fp.points.q = {Complex(1.2, -0.5), Complex(0.1, 1.3)};
    const Complex lambdas[] = {lambda1, Complex(-0.55, 0.12), Complex(0.68, 0.44)};
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<Complex> s(static_cast<std::size_t>(k0) + 1);
        for (int k = 1; k <= k0; ++k) s[static_cast<std::size_t>(k)] = Complex(0.1 * k - 0.2, 0.07 * (i + 1));
        fp.singular.push_back(folijet::SingularModel::make(static_cast<int>(i), fp.points.p[i], lambdas[i], XJet<Complex>(s)));
    }
    const Complex taus[] = {Complex(0.35, -0.6), Complex(-0.4, 0.25)};
    for (std::size_t j = 0; j < 2; ++j) {
        std::vector<Complex> z(static_cast<std::size_t>(k0) + 1);
        for (int k = 1; k <= k0; ++k)
            z[static_cast<std::size_t>(k)] = Complex(k == 1 ? 1.0 + 0.1 * j : 0.1 * j - 0.15, 0.05 * k);
        fp.tangency.push_back(folijet::TangencyModel::from_tau(static_cast<int>(j), fp.points.q[j], taus[j],
                                                               XJet<Complex>(z), folijet::default_involution_order(k0)));
    }
    fp.background = folijet::BackgroundData::standard(3, 2);
    return fp;
}

}  // namespace

TEST_CASE("A_k - A_1 is diagonal") {
    const folijet::FoliationPairData fp = config(4);
    const folijet::CMatrix A1 = folijet::build_Ak(fp, 1);
    for (int k = 2; k <= 4; ++k) {
        const folijet::CMatrix D = folijet::build_Ak(fp, k) - A1;
        for (Eigen::Index r = 0; r < D.rows(); ++r)
            for (Eigen::Index c = 0; c < D.cols(); ++c)
                if (r != c) CHECK(std::abs(D(r, c)) == 0.0);
        for (Eigen::Index i = 0; i < 3; ++i)
            CHECK(std::abs(D(i, i) + static_cast<double>(k - 1) * fp.singular[static_cast<std::size_t>(i)].lambda) < 1e-15);
    }
}

TEST_CASE("A_k block structure") {
    const folijet::FoliationPairData fp = config(2);
    const folijet::CMatrix A = folijet::build_Ak(fp, 2);
    REQUIRE(A.rows() == 5);
    CHECK(std::abs(A(0, 0) - (1.0 - 2.0 * fp.singular[0].lambda)) < 1e-15);
    CHECK(std::abs(A(0, 1)) == 0.0);
    CHECK(std::abs(A(0, 3) - 1.0 / (fp.points.p[0] - fp.points.q[0])) < 1e-15);
    CHECK(std::abs(A(3, 0)) == 0.0);
    CHECK(std::abs(A(3, 4) - 1.0 / (fp.points.q[0] - fp.points.q[1])) < 1e-15);
    CHECK((folijet::build_Atilde(fp, 2) - A.bottomRightCorner(2, 2)).norm() == 0.0);
    const folijet::CMatrix V = folijet::build_V(fp);
    CHECK(V.rows() == 5);
    CHECK(std::abs(V(4, 3) - std::pow(fp.points.q[1], 3)) < 1e-14);
}

TEST_CASE("det(A_k) factors through det(A~_k)") {
    const folijet::FoliationPairData fp = config(5);
    for (int k = 1; k <= 5; ++k) {
        Complex prod = folijet::build_Atilde(fp, k).determinant();
        for (const auto& sm : fp.singular) prod *= 1.0 - static_cast<double>(k) * sm.lambda;
        const Complex d = folijet::build_Ak(fp, k).determinant();
        CHECK(std::abs(d - prod) <= 1e-12 * std::max(1.0, std::abs(d)));
    }
}

TEST_CASE("normalized determinant keeps small 1x1 blocks small") {
    folijet::CMatrix m(1, 1);
    m(0, 0) = 1e-12;
    CHECK(folijet::normalized_det(m) == doctest::Approx(1e-12));
    m(0, 0) = 1e6;
    CHECK(folijet::normalized_det(m) == doctest::Approx(1.0));
    CHECK_THROWS_AS(folijet::normalized_det(folijet::CMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("Lambda index families") {
    CHECK(folijet::lambda_index_families(3).empty());
    CHECK(folijet::lambda_index_families(4).empty());
    const auto f9 = folijet::lambda_index_families(9);
    REQUIRE(f9.size() == 3u);
    CHECK(f9[0] == std::vector<int>{1, 2, 3, 4});
    CHECK(f9[1] == std::vector<int>{5, 6, 7, 8});
    CHECK(f9[2] == std::vector<int>{6, 7, 8, 9});
}

TEST_CASE("lambda = 1/2 is rejected with its named factor") {
    const folijet::GenericityCertificate cert = folijet::check_genericity(config(3, 0.5), 3);
    CHECK_FALSE(cert.verdict);
    CHECK(cert.offending == "(1-2*lambda_1)");
    const folijet::GenericityCertificate ok = folijet::check_genericity(config(3), 3);
    CHECK(ok.verdict);
    CHECK(ok.offending.empty());
    CHECK(ok.det_A.size() == 3u);
}

TEST_CASE("realize inverts the forward map") {
    const folijet::FoliationPairData fp = config(5);
    const folijet::TangencyCurveJets curve = folijet::compute_tangency(fp);
    const folijet::RealizationResult res = folijet::realize(fp, curve);
    CHECK(res.residual < 1e-8);
    CHECK(res.certificate.verdict);
    for (std::size_t i = 0; i < 3; ++i)
        for (int k = 1; k <= 5; ++k) CHECK(std::abs(res.data.singular[i].s[k] - fp.singular[i].s[k]) < 1e-9);
    for (std::size_t j = 0; j < 2; ++j)
        for (int k = 1; k <= 5; ++k) CHECK(std::abs(res.data.tangency[j].z[k] - fp.tangency[j].z[k]) < 1e-9);
}

TEST_CASE("a zero curve is not realizable") {
    const folijet::FoliationPairData fp = config(2);
    folijet::TangencyCurveJets curve = folijet::compute_tangency(fp);
    for (auto& b : curve.p) b.coeffs = XJet<Complex>::zero(2);
    for (auto& b : curve.q) b.coeffs = XJet<Complex>::zero(2);
    CHECK_THROWS_AS(folijet::realize(fp, curve), folijet::NonGenericError);
}

TEST_CASE("quadratic shift rescues an excluded curve") {
    const folijet::FoliationPairData fp = config(2);
    folijet::TangencyCurveJets curve = folijet::compute_tangency(fp);
    for (auto& b : curve.p) b.coeffs = XJet<Complex>::zero(2);
    for (auto& b : curve.q) b.coeffs = XJet<Complex>::zero(2);
    folijet::RealizationOptions opt;
    opt.auto_shift_quadratics = true;
    const folijet::RealizationResult res = folijet::realize(fp, curve, 0, opt);
    double shift = 0.0;
    for (Complex w : res.quadratic_shift) shift = std::max(shift, std::abs(w));
    CHECK(shift > 0.0);
    for (const auto& tm : res.data.tangency) CHECK(std::abs(tm.z[1]) > 1e-9);
}

TEST_CASE("mismatched curves are input errors") {
    const folijet::FoliationPairData fp = config(2);
    folijet::TangencyCurveJets curve = folijet::compute_tangency(fp);
    curve.q.pop_back();
    CHECK_THROWS_AS(folijet::realize(fp, curve), folijet::InputError);
}
