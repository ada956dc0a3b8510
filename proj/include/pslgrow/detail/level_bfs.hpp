#pragma once

/**
 * @file level_bfs.hpp
 * @brief Level-synchronous Cayley-graph BFS over packed element keys.
 *
 * Frontier expansion is OpenMP-parallel; the per-level candidate set is made
 * canonical by sort+unique, so sphere sizes and the visited set are
 * deterministic for any thread count. A plain queue-and-hash-set reference
 * lives next to the callers under the serial namespace.
 */

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pslgrow/error.hpp"
#include "pslgrow/psl2.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pslgrow::detail {

struct Psl2View {
    using Elem = Psl2;
    std::uint32_t p;

    std::uint64_t key(const Elem& e) const { return pack(e); }
    Elem unkey(std::uint64_t k) const { return unpack(k, p); }
    Elem mul(const Elem& x, const Elem& y) const { return group_op(x, y); }
    Elem inv(const Elem& x) const { return inverse(x); }
    Elem identity() const { return psl2_identity(p); }
};

struct CyclicView {
    using Elem = std::uint64_t;
    std::uint64_t n;

    std::uint64_t key(Elem e) const { return e; }
    Elem unkey(std::uint64_t k) const { return k; }
    Elem mul(Elem x, Elem y) const { return (x + y) % n; }
    Elem inv(Elem x) const { return (n - x % n) % n; }
    Elem identity() const { return 0; }
};

struct BfsOutcome {
    std::vector<std::uint64_t> sphere_sizes; // index = word length, starts at 1
    std::vector<std::uint64_t> visited;      // sorted keys
    bool exhausted = false;                  // no new elements at the last step
};

/**
 * Runs BFS from the identity over gens and their inverses.
 *
 * max_levels < 0 means run to exhaustion. node_cap bounds the visited set
 * (resource error beyond it). early_stop > 0 stops expansion once the visited
 * set exceeds that many keys; used for generation checks where only a size
 * threshold matters.
 */
template <class View>
BfsOutcome level_bfs(const View& view, const std::vector<typename View::Elem>& gens,
                     long max_levels, std::uint64_t node_cap, std::uint64_t early_stop) {
    using Elem = typename View::Elem;

    std::vector<Elem> sym;
    std::vector<std::uint64_t> symkeys;
    for (const auto& g : gens) {
        for (const Elem& e : {g, view.inv(g)}) {
            std::uint64_t k = view.key(e);
            if (k == view.key(view.identity())) continue;
            if (std::find(symkeys.begin(), symkeys.end(), k) == symkeys.end()) {
                symkeys.push_back(k);
                sym.push_back(e);
            }
        }
    }

    BfsOutcome out;
    out.visited = {view.key(view.identity())};
    out.sphere_sizes = {1};
    std::vector<Elem> frontier{view.identity()};

    for (long level = 0; max_levels < 0 || level < max_levels; ++level) {
        if (sym.empty()) {
            out.exhausted = true;
            break;
        }
        std::vector<std::uint64_t> cand(frontier.size() * sym.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < std::int64_t(frontier.size()); ++i) {
            for (std::size_t j = 0; j < sym.size(); ++j)
                cand[std::size_t(i) * sym.size() + j] = view.key(view.mul(frontier[i], sym[j]));
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        std::erase_if(cand, [&](std::uint64_t k) {
            return std::binary_search(out.visited.begin(), out.visited.end(), k);
        });
        if (cand.empty()) {
            out.exhausted = true;
            break;
        }
        if (out.visited.size() + cand.size() > node_cap)
            fail(ErrorKind::ResourceBudget,
                 "BFS node budget of " + std::to_string(node_cap) + " keys exceeded");

        std::vector<std::uint64_t> merged(out.visited.size() + cand.size());
        std::merge(out.visited.begin(), out.visited.end(), cand.begin(), cand.end(), merged.begin());
        out.visited = std::move(merged);
        out.sphere_sizes.push_back(cand.size());

        if (early_stop > 0 && out.visited.size() >= early_stop) break;

        frontier.clear();
        frontier.reserve(cand.size());
        for (std::uint64_t k : cand) frontier.push_back(view.unkey(k));
    }
    return out;
}

} // namespace pslgrow::detail
