#pragma once

// Seeded property suite comparing the library against the brute-force
// oracle. Shared by the acceptance binary and `folijet verify`.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "folijet/local_models.hpp"

namespace folijet::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    double measured = 0.0;   // worst observed error (or failure count where noted)
    double tolerance = 0.0;
    bool pass = false;
    int cases = 0;
    std::string detail;
    double seconds = 0.0;    // wall time; not part of the stable report
};

enum class InvolutionKind { mobius, conjugator };

struct RandomConfigSpec {
    std::size_t n_p = 3;
    std::size_t n_q = 2;
    int k0 = 8;
    bool random_background = false;
    bool random_points = false;
    InvolutionKind involution = InvolutionKind::mobius;
};

// lambda, tau uniform in the unit square; s_r, z_r uniform in the square of
// half-width 0.5 with 1 added to z_1. Fixed points unless random_points.
FoliationPairData random_config(std::mt19937_64& rng, const RandomConfigSpec& spec);

std::vector<int> criterion_ids();
CriterionResult run_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run_all(std::uint64_t seed);

// Config-specific checks for `folijet verify --input`: oracle composite
// residual, defining relation of phi and the determinant identity.
std::vector<CriterionResult> check_config(const FoliationPairData& fp);

}  // namespace folijet::verify
