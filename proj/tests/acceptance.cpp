// Runs the ten acceptance criteria and prints one line per criterion.
// Usage: acceptance [seed] [criterion ...]

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "folijet/verify.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 1;
    std::vector<int> ids;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    for (int a = 2; a < argc; ++a) ids.push_back(std::atoi(argv[a]));
    if (ids.empty()) ids = folijet::verify::criterion_ids();

    int failed = 0;
    double total = 0.0;
    for (int id : ids) {
        const folijet::verify::CriterionResult r = folijet::verify::run_criterion(id, seed);
        total += r.seconds;
        if (!r.pass) ++failed;
        std::printf("criterion %2d: %s  %s  measured=%.3e tol=%.1e cases=%d time=%.2fs  [%s]\n", r.id,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured, r.tolerance, r.cases, r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("summary: %zu criteria, %d failed, seed %llu, total %.2fs\n", ids.size(), failed,
                static_cast<unsigned long long>(seed), total);
    return failed == 0 ? 0 : 1;
}
