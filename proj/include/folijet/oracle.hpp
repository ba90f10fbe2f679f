#pragma once

// Brute-force reference engines used only for verification. Nothing here
// calls into the series, u-function or normal-form code; inputs are raw
// coefficient vectors so that the two sides can be compared honestly.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "folijet/core.hpp"

namespace folijet::oracle {

using CVec = std::vector<Complex>;
using CMat = std::vector<CVec>;

// Truncated sum_s outer[s] inner(x)^s through x^order, by Horner's rule.
CVec substitute(const CVec& outer, const CVec& inner, int order);

// Bell numbers via the Bell triangle.
std::uint64_t bell_number(int k);

// Long division of Laurent rows: f = sum f[i] t^(f_lo+i), h likewise.
// Returns `count` coefficients of f/h starting at exponent f_lo - val(h).
CVec laurent_divide(const CVec& f, int f_lo, const CVec& h, int h_lo, int count);

// Series in x (rows 0..kx) whose coefficients are Laurent rows in v with
// exponents lo..cap. valid[r] is the last exponent known in row r; kExact
// marks rows that are exact polynomials.
class BiJet {
public:
    static constexpr int kExact = 1 << 20;

    BiJet(int kx, int lo, int cap);
    static BiJet constant(int kx, int lo, int cap, Complex c);
    static BiJet v_power(int kx, int lo, int cap, int e, Complex c = 1.0);
    // sum_r c[r] x^r with constant coefficients.
    static BiJet x_series(int kx, int lo, int cap, const CVec& c);

    int kx() const { return kx_; }
    int lo() const { return lo_; }
    int cap() const { return cap_; }
    Complex at(int r, int e) const;
    void set(int r, int e, Complex c);
    int valid(int r) const { return valid_[static_cast<std::size_t>(r)]; }
    void limit(int r, int e);
    // Lowest exponent with a nonzero entry in row r, or valid(r)+1.
    int row_valuation(int r) const;

    BiJet operator+(const BiJet& o) const;
    BiJet operator-(const BiJet& o) const;
    BiJet operator*(const BiJet& o) const;
    BiJet scaled(Complex s) const;

private:
    int kx_, lo_, cap_;
    std::vector<CVec> rows_;
    std::vector<int> valid_;
};

// sum_s c[s] w^s. When known_through >= 0 the coefficients beyond that
// index are unknown and row validity is reduced accordingly.
BiJet substitute_series(const CVec& c, const BiJet& w, int known_through = -1);

// outer(inner_x, inner_v) for an outer jet with no negative v exponents.
BiJet bicompose(const BiJet& outer, const BiJet& inner_x, const BiJet& inner_v);

// Global rational function: poly(U) + sum_m coeffs[t][m-1] (U - poles[t])^{-m}.
struct RawPoleSum {
    CVec poly;
    CVec poles;
    std::vector<CVec> coeffs;
};

// F(center + w) for a pole sum F, where w = v + (terms with no x^0 part).
BiJet evaluate_pole_sum(const RawPoleSum& F, Complex center, const BiJet& w, int series_terms);

// Geometry of the grid used by the composites.
struct Grid {
    int kx = 6;
    int lo = -30;
    int cap = 24;
    int series_terms = 60;
};

struct Composite {
    BiJet A;
    BiJet B;
};

// H_n o xi o Psi at a singular point: u' = u + s(x),
// x' = x (1 + s(x)/(u - p))^lambda, X = sum_r eps_r(u') x'^r.
Composite composite_at_p(Complex p, Complex lambda, const CVec& s, const std::vector<CVec>& eps,
                         const std::vector<RawPoleSum>& a_n, const std::vector<RawPoleSum>& b_n, const Grid& grid);

// phi(x, u) - u at a tangency point, by the fixed-point iteration
// delta <- delta - (g(v + delta) - g(v) - z(x)) / g'(v). g is given by its
// Taylor coefficients in v, known through index g_known (-1: exact).
BiJet phi_fixed_point(const CVec& g, int g_known, const CVec& z, const Grid& grid);

// H_n o zeta o Phi at a tangency point.
Composite composite_at_q(Complex q, const CVec& g, int g_known, const CVec& z, const std::vector<CVec>& sig,
                         const std::vector<RawPoleSum>& a_n, const std::vector<RawPoleSum>& b_n, const Grid& grid);

// Solves g(w) = g(u0) + z(x0) near u0 by damped Newton; throws
// VerificationError after 50 iterations without reaching tol.
Complex newton_phi(const std::function<Complex(Complex)>& g, const std::function<Complex(Complex)>& dg,
                   const CVec& z, Complex x0, Complex u0, double tol = 1e-12);

// Taylor coefficients 0..degree of f from samples on |t| = radius.
CVec cauchy_fit(const std::function<Complex(Complex)>& f, int degree, double radius, int samples);

// Least-squares polynomial fit sum c_k t^k, k = 0..degree, through (t_i, y_i).
CVec polyfit(const CVec& t, const CVec& y, int degree);

// Determinant by Gaussian elimination with partial pivoting.
Complex det_lu(CMat m);

}  // namespace folijet::oracle
