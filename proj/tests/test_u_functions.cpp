#include <doctest.h>

#include "folijet/u_functions.hpp"

using folijet::Complex;
using folijet::LaurentJet;
using folijet::PoleSum;

TEST_CASE("simple pole times its center monomial is one") {
    const Complex c(0.5, -1.0);
    const LaurentJet a = LaurentJet::monomial(c, 2.0, -1);
    const LaurentJet b = LaurentJet::monomial(c, 0.5, 1);
    const LaurentJet p = a * b;
    CHECK(p.is_exact());
    CHECK(p.coeff(0) == Complex(1.0));
    CHECK(p.coeff(-1) == Complex(0.0));
    CHECK(a.pole_order() == 1);
    CHECK(p.pole_order() == 0);
}

TEST_CASE("coefficients beyond the known range raise a precision error") {
    const LaurentJet j(0.0, -1, {1.0, 2.0, 3.0}, 2);
    CHECK(j.coeff(2) == Complex(0.0));
    CHECK_THROWS_AS(j.coeff(3), folijet::PrecisionError);
    CHECK(j.truncated(0).max_exp() == 0);
}

TEST_CASE("inverse of 1 - t is the geometric series") {
    const LaurentJet f = LaurentJet::polynomial(1.0, {1.0, -1.0});
    const LaurentJet inv = f.inverse(10);
    CHECK(inv.max_exp() == 10);
    for (int e = 0; e <= 10; ++e) CHECK(std::abs(inv.coeff(e) - 1.0) < 1e-15);
}

TEST_CASE("jets at different centers do not combine") {
    const LaurentJet a = LaurentJet::constant(0.0, 1.0);
    const LaurentJet b = LaurentJet::constant(1.0, 1.0);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_NOTHROW(LaurentJet() + b);
}

TEST_CASE("derivative and principal part") {
    // 2/t^2 + 3/t + 4 + 5 t
    const LaurentJet j(0.0, -2, {2.0, 3.0, 4.0, 5.0});
    const LaurentJet pp = j.principal_part();
    CHECK(pp.coeff(-2) == Complex(2.0));
    CHECK(pp.coeff(0) == Complex(0.0));
    const LaurentJet d = j.derivative();
    CHECK(d.coeff(-3) == Complex(-4.0));
    CHECK(d.coeff(-2) == Complex(-3.0));
    CHECK(d.coeff(0) == Complex(5.0));
    CHECK(j.regular_part().coeff(1) == Complex(5.0));
}

TEST_CASE("pole sum expansion matches evaluation") {
    PoleSum f({Complex(0.5), Complex(0.0, 1.0)});
    f.add_principal(Complex(1.0, 1.0), {Complex(2.0), Complex(0.0, -1.0)});
    f.add_principal(Complex(-1.0), {Complex(0.3, 0.2)});
    const Complex c(0.2, -0.1);
    const LaurentJet j = f.expand_at(c, 30);
    const Complex h(0.05, 0.03);
    Complex sum = 0.0;
    for (int e = 0; e <= 30; ++e) sum += j.coeff(e) * std::pow(h, e);
    CHECK(std::abs(sum - f.evaluate(c + h)) < 1e-13);
    CHECK_FALSE(f.vanishes_at_infinity());
    CHECK_THROWS_AS(f.evaluate(Complex(-1.0)), folijet::DegenerateError);
}

TEST_CASE("expansion at a pole keeps the principal part") {
    PoleSum f;
    f.add_principal(0.0, {1.0, 2.0});
    f.add_principal(2.0, {1.0});
    const LaurentJet j = f.expand_at(0.0, 3);
    CHECK(j.coeff(-2) == Complex(2.0));
    CHECK(j.coeff(-1) == Complex(1.0));
    // 1/(u - 2) = -1/2 - u/4 - ...
    CHECK(std::abs(j.coeff(0) + 0.5) < 1e-15);
    CHECK(std::abs(j.coeff(1) + 0.25) < 1e-15);
    CHECK(f.vanishes_at_infinity());
    CHECK(f.principal_at(0.0).size() == 2u);
}

TEST_CASE("principal part of a quotient with a simple zero") {
    // 1 / (t (2 + t)) = 1/(2t) - 1/4 + t/8 - ...
    const LaurentJet one = LaurentJet::constant(0.0, 1.0);
    const LaurentJet h = LaurentJet::polynomial(0.0, {0.0, 2.0, 1.0});
    const folijet::QuotientParts q = folijet::principal_part_quotient(one, h);
    CHECK(std::abs(q.principal.coeff(-1) - 0.5) < 1e-15);
    CHECK(std::abs(q.regular_value + 0.25) < 1e-15);
    const LaurentJet h2 = LaurentJet::polynomial(0.0, {0.0, 0.0, 1.0});
    CHECK_THROWS_AS(folijet::principal_part_quotient(one, h2), folijet::DegenerateError);
}

TEST_CASE("marked points are validated") {
    folijet::MarkedPoints pts;
    CHECK_THROWS_AS(pts.validate(), folijet::InputError);
    pts.p = {0.0, 1.0};
    pts.q = {Complex(1.0, 1e-9)};
    CHECK_THROWS_AS(pts.validate(), folijet::DegenerateError);
    pts.q = {Complex(2.0, 0.0)};
    CHECK_NOTHROW(pts.validate());
    CHECK(pts.all().size() == 3u);
}
