#pragma once

#include <vector>

#include "folijet/core.hpp"

namespace folijet {

// Truncated Laurent expansion sum_e c_e (u - center)^e.
//
// Coefficients are stored for exponents min_exp() .. min_exp()+size-1 and are
// implicitly zero above that, up to max_exp(). Beyond max_exp() nothing is
// known. A jet whose max_exp() is kExact is a finite Laurent polynomial.
// The default-constructed value is the exact zero and has no center, so it
// combines with a jet at any point.
class LaurentJet {
public:
    static constexpr int kExact = 1 << 28;

    LaurentJet() = default;
    LaurentJet(Complex center, int min_exp, std::vector<Complex> coeffs, int max_exp = kExact);

    static LaurentJet constant(Complex center, Complex c);
    static LaurentJet monomial(Complex center, Complex c, int exp);
    // Exact jet of sum_e coeffs[e] (u - center)^e.
    static LaurentJet polynomial(Complex center, const std::vector<Complex>& coeffs);

    bool has_center() const { return anchored_; }
    Complex center() const { return center_; }
    int min_exp() const { return min_exp_; }
    int max_exp() const { return max_exp_; }
    // Last stored exponent; min_exp()-1 when nothing is stored.
    int top_exp() const { return min_exp_ + static_cast<int>(c_.size()) - 1; }
    bool is_exact() const { return max_exp_ >= kExact; }
    bool is_exact_zero() const { return c_.empty() && is_exact(); }
    const std::vector<Complex>& stored() const { return c_; }

    // Coefficient of (u - center)^e; PrecisionError when e > max_exp().
    Complex coeff(int e) const;
    // Lowest exponent with a nonzero stored coefficient, or max_exp()+1.
    int valuation() const;
    // Order of the pole at the center (0 when there is none).
    int pole_order() const;

    LaurentJet principal_part() const;
    LaurentJet regular_part() const;
    LaurentJet derivative() const;
    LaurentJet truncated(int max_exp) const;
    // Coefficients of magnitude <= cutoff become exact zeros.
    LaurentJet chopped(double cutoff) const;
    // 1/this, known up to exponent `order` at most.
    LaurentJet inverse(int order) const;
    double max_abs() const;

    LaurentJet& operator+=(const LaurentJet& o);
    LaurentJet& operator-=(const LaurentJet& o);
    LaurentJet operator-() const;

    friend LaurentJet operator+(LaurentJet a, const LaurentJet& b) { return a += b; }
    friend LaurentJet operator-(LaurentJet a, const LaurentJet& b) { return a -= b; }
    friend LaurentJet operator*(const LaurentJet& a, const LaurentJet& b);
    friend LaurentJet operator*(const LaurentJet& a, Complex s);
    friend LaurentJet operator*(Complex s, const LaurentJet& a) { return a * s; }
    friend LaurentJet operator/(const LaurentJet& a, Complex s) { return a * (1.0 / s); }

private:
    void normalize();
    static Complex common_center(const LaurentJet& a, const LaurentJet& b);

    Complex center_{};
    bool anchored_ = false;
    int min_exp_ = 0;
    int max_exp_ = kExact;
    std::vector<Complex> c_;
};

inline bool is_zero_element(const LaurentJet& j) { return j.is_exact_zero(); }

struct MarkedPoints {
    std::vector<Complex> p;
    std::vector<Complex> q;

    std::size_t size() const { return p.size() + q.size(); }
    // p_1..p_{n+1} followed by q_1..q_m.
    std::vector<Complex> all() const;
    // DegenerateError when two points are closer than min_separation or a
    // value is not finite; InputError when p is empty.
    void validate(double min_separation = 1e-6) const;
};

// One principal part: sum_m coeffs[m-1] (u - pole)^{-m}.
struct PoleTerm {
    Complex pole;
    std::vector<Complex> coeffs;
};

// Rational function poly(u) + sum of principal parts at finitely many poles.
// Terms keep their insertion order, which fixes every summation order.
class PoleSum {
public:
    PoleSum() = default;
    explicit PoleSum(std::vector<Complex> poly) : poly_(std::move(poly)) {}

    const std::vector<Complex>& poly() const { return poly_; }
    const std::vector<PoleTerm>& terms() const { return terms_; }

    // Adds c_m (u - pole)^{-m}; merges with an existing term at the same pole.
    void add_principal(Complex pole, const std::vector<Complex>& coeffs);
    // Adds the negative-exponent part of a jet centred at its pole.
    void add_principal(const LaurentJet& principal, double drop_below = 0.0);
    std::vector<Complex> principal_at(Complex pole) const;
    // True when there is no polynomial part, i.e. the function vanishes at infinity.
    bool vanishes_at_infinity() const;

    PoleSum derivative() const;
    // Throws DegenerateError when u is one of the poles.
    Complex evaluate(Complex u) const;
    // Expansion about `center` known through (u - center)^order. The result is
    // exact when no geometric series had to be truncated.
    LaurentJet expand_at(Complex center, int order) const;

    PoleSum& operator+=(const PoleSum& o);
    PoleSum& operator*=(Complex s);
    friend PoleSum operator+(PoleSum a, const PoleSum& b) { return a += b; }
    friend PoleSum operator*(PoleSum a, Complex s) { return a *= s; }

private:
    std::vector<Complex> poly_;
    std::vector<PoleTerm> terms_;
};

struct QuotientParts {
    LaurentJet principal;
    Complex regular_value;
};

// Principal part and regular value at the common center of f/h. When h
// vanishes at the center its first derivative must not; otherwise a
// DegenerateError is raised.
QuotientParts principal_part_quotient(const LaurentJet& f, const LaurentJet& h,
                                      const ToleranceConfig& tol = {});

}  // namespace folijet
