#pragma once

/**
 * @file cayley.hpp
 * @brief Word-growth tables from Cayley-graph BFS.
 *
 * Word length counts s and s^-1 one step each: BFS runs over S united with
 * its inverses. Sphere k holds the elements of length exactly k.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "pslgrow/psl2.hpp"

namespace pslgrow {

inline constexpr std::uint64_t kBfsNodeBudget = 10'000'000;

struct GrowthTable {
    std::vector<std::uint64_t> spheres; // a_0, a_1, ...
    std::vector<std::uint64_t> balls;   // gamma(0), gamma(1), ...
    std::optional<int> saturated_at;    // diameter, when BFS exhausted the group

    /// gamma(k); past the stored range only saturated tables extend (constant).
    std::uint64_t ball_at(int k) const;
    int max_index() const { return int(balls.size()) - 1; }
};

GrowthTable table_from_spheres(std::vector<std::uint64_t> spheres, bool exhausted);

/// BFS growth of the subgroup generated by gens inside PSL2(F_p).
GrowthTable cayley_growth(const std::vector<Psl2>& gens, int nmax,
                          std::uint64_t node_budget = kBfsNodeBudget);

/// BFS growth of Z_n (written additively) with the given generators.
GrowthTable cyclic_cayley_growth(std::uint64_t n, const std::vector<std::uint64_t>& gens, int nmax);

namespace serial {
/// Queue-and-hash-set reference implementations, kept for tests and benchmarks.
GrowthTable cayley_growth(const std::vector<Psl2>& gens, int nmax,
                          std::uint64_t node_budget = kBfsNodeBudget);
GrowthTable cyclic_cayley_growth(std::uint64_t n, const std::vector<std::uint64_t>& gens, int nmax);
} // namespace serial

} // namespace pslgrow
