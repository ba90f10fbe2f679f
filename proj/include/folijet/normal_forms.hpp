#pragma once

#include <vector>

#include "folijet/local_models.hpp"
#include "folijet/u_functions.hpp"

namespace folijet {

// Canonical coefficients of the normalizing transformations
//   H(x, u) = (sum_k a_k(u) x^k, u + sum_k b_k(u) x^k)
// on the regular part (pole sums) and at every marked point (Laurent jets
// holomorphic at their center). Index k runs 1..order; slot 0 is unused.
struct NormalFormTable {
    int order = 0;
    std::vector<PoleSum> a_n, b_n;
    std::vector<std::vector<LaurentJet>> a_p, b_p;  // [i][k]
    std::vector<std::vector<LaurentJet>> a_q, b_q;  // [j][k]
    // Largest principal coefficient that had to be discarded from a local
    // jet; zero up to rounding when the recursion is consistent.
    double cancellation = 0.0;
    int depth_p = 0;
    int depth_q = 0;
};

struct NormalFormOptions {
    int depth_p = 0;  // expansion order at singular points, 0 = automatic
    int depth_q = 0;  // expansion order at tangency points, 0 = automatic
    int retries = 3;  // depth doublings allowed before giving up
    double drop_below = 1e-14;
};

// Runs the level-by-level recursion through `order` (fp.k0 when 0).
NormalFormTable compute_normal_form(const FoliationPairData& fp, int order = 0, const NormalFormOptions& opt = {});

struct ResidualPair {
    LaurentJet A;
    LaurentJet B;
};

// The parts of the level-k factorization equations at p_i (resp. q_j) that
// involve only lower levels, with the explicit eps/sig, s, z and b_{n,1}
// terms separated out. `lower` must hold levels 1..k-1. Level 1 gives zeros.
ResidualPair residual_A_B_at_p(const FoliationPairData& fp, std::size_t i, int k, const NormalFormTable& lower);
ResidualPair residual_A_B_at_q(const FoliationPairData& fp, std::size_t j, int k, const NormalFormTable& lower);

int default_depth_p(int order);
int default_depth_q(int order);

}  // namespace folijet
