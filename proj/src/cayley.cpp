#include "pslgrow/cayley.hpp"

#include <deque>
#include <unordered_set>

#include "pslgrow/detail/level_bfs.hpp"

namespace pslgrow {

std::uint64_t GrowthTable::ball_at(int k) const {
    if (k < 0) fail(ErrorKind::BadInput, "negative radius");
    if (k < int(balls.size())) return balls[std::size_t(k)];
    if (saturated_at) return balls.back();
    fail(ErrorKind::BadInput,
         "growth table only defined through n=" + std::to_string(balls.size() - 1));
}

GrowthTable table_from_spheres(std::vector<std::uint64_t> spheres, bool exhausted) {
    GrowthTable t;
    t.spheres = std::move(spheres);
    t.balls.reserve(t.spheres.size());
    std::uint64_t acc = 0;
    for (std::uint64_t s : t.spheres) t.balls.push_back(acc += s);
    if (exhausted) t.saturated_at = int(t.spheres.size()) - 1;
    return t;
}

namespace {

template <class View>
GrowthTable growth_from_bfs(const View& view, const std::vector<typename View::Elem>& gens,
                            int nmax, std::uint64_t node_budget) {
    if (gens.empty()) fail(ErrorKind::BadInput, "growth needs a nonempty generating set");
    if (nmax < 0) fail(ErrorKind::BadInput, "nmax must be nonnegative");
    auto outcome = detail::level_bfs(view, gens, nmax, node_budget, 0);
    return table_from_spheres(std::move(outcome.sphere_sizes), outcome.exhausted);
}

// Reference BFS: one element at a time through a deque, distances in a hash set.
template <class View>
GrowthTable growth_serial(const View& view, const std::vector<typename View::Elem>& gens,
                          int nmax, std::uint64_t node_budget) {
    using Elem = typename View::Elem;
    if (gens.empty()) fail(ErrorKind::BadInput, "growth needs a nonempty generating set");
    if (nmax < 0) fail(ErrorKind::BadInput, "nmax must be nonnegative");

    std::vector<Elem> sym;
    for (const auto& g : gens) {
        sym.push_back(g);
        sym.push_back(view.inv(g));
    }
    std::unordered_set<std::uint64_t> visited{view.key(view.identity())};
    std::deque<std::pair<Elem, int>> queue{{view.identity(), 0}};
    std::vector<std::uint64_t> spheres{1};
    bool exhausted = true;
    while (!queue.empty()) {
        auto [e, dist] = queue.front();
        queue.pop_front();
        if (dist == nmax) {
            exhausted = false; // depth cap reached with work left
            break;
        }
        for (const auto& s : sym) {
            Elem next = view.mul(e, s);
            std::uint64_t k = view.key(next);
            if (!visited.insert(k).second) continue;
            if (visited.size() > node_budget)
                fail(ErrorKind::ResourceBudget, "BFS node budget exceeded");
            if (std::size_t(dist) + 1 >= spheres.size()) spheres.push_back(0);
            ++spheres[std::size_t(dist) + 1];
            queue.emplace_back(next, dist + 1);
        }
    }
    return table_from_spheres(std::move(spheres), exhausted);
}

} // namespace

GrowthTable cayley_growth(const std::vector<Psl2>& gens, int nmax, std::uint64_t node_budget) {
    detail::Psl2View view{gens.empty() ? 0 : gens.front().p};
    return growth_from_bfs(view, gens, nmax, node_budget);
}

GrowthTable cyclic_cayley_growth(std::uint64_t n, const std::vector<std::uint64_t>& gens, int nmax) {
    if (n == 0) fail(ErrorKind::BadInput, "cyclic group order must be positive");
    detail::CyclicView view{n};
    std::vector<std::uint64_t> reduced;
    for (std::uint64_t g : gens) reduced.push_back(g % n);
    return growth_from_bfs(view, reduced, nmax, kBfsNodeBudget);
}

namespace serial {

GrowthTable cayley_growth(const std::vector<Psl2>& gens, int nmax, std::uint64_t node_budget) {
    detail::Psl2View view{gens.empty() ? 0 : gens.front().p};
    return growth_serial(view, gens, nmax, node_budget);
}

GrowthTable cyclic_cayley_growth(std::uint64_t n, const std::vector<std::uint64_t>& gens, int nmax) {
    if (n == 0) fail(ErrorKind::BadInput, "cyclic group order must be positive");
    detail::CyclicView view{n};
    std::vector<std::uint64_t> reduced;
    for (std::uint64_t g : gens) reduced.push_back(g % n);
    return growth_serial(view, reduced, nmax, kBfsNodeBudget);
}

} // namespace serial

} // namespace pslgrow
