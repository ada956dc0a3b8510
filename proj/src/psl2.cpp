#include "pslgrow/psl2.hpp"

#include <algorithm>
#include <cstdio>

#include "pslgrow/detail/level_bfs.hpp"
#include "pslgrow/ffield.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pslgrow {

namespace {

int legendre(std::int64_t a, std::int64_t p) {
    a = ((a % p) + p) % p;
    if (a == 0) return 0;
    return mod_pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

void check_same_modulus(const Psl2& g, const Psl2& h) {
    if (g.p != h.p)
        fail(ErrorKind::FieldMismatch,
             "elements over p=" + std::to_string(g.p) + " and p=" + std::to_string(h.p));
}

Psl2 canonicalize(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t p) {
    std::int64_t half = (p - 1) / 2;
    for (std::int64_t e : {a, b, c, d}) {
        if (e == 0) continue;
        if (e > half) {
            a = (p - a) % p;
            b = (p - b) % p;
            c = (p - c) % p;
            d = (p - d) % p;
        }
        break;
    }
    return {std::uint32_t(a), std::uint32_t(b), std::uint32_t(c), std::uint32_t(d), std::uint32_t(p)};
}

} // namespace

std::uint64_t psl2_order(std::int64_t p) {
    return std::uint64_t(p) * (std::uint64_t(p) * std::uint64_t(p) - 1) / 2;
}

bool is_canonical(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t p) {
    std::int64_t half = (p - 1) / 2;
    for (std::int64_t e : {a, b, c, d}) {
        if (e == 0) continue;
        return e <= half;
    }
    return false; // zero matrix, never valid
}

Psl2 make_psl2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        fail(ErrorKind::InvalidModulus, std::to_string(p) + " is not an odd prime");
    auto r = [p](std::int64_t v) { return ((v % p) + p) % p; };
    a = r(a), b = r(b), c = r(c), d = r(d);
    if (r(a * d - b * c) != 1)
        fail(ErrorKind::BadInput, "matrix determinant is not 1 mod " + std::to_string(p));
    return canonicalize(a, b, c, d, p);
}

Psl2 psl2_identity(std::uint32_t p) { return {1, 0, 0, 1, p}; }

Psl2 group_op(const Psl2& g, const Psl2& h) {
    check_same_modulus(g, h);
    std::int64_t p = g.p;
    std::int64_t a = (std::int64_t(g.a) * h.a + std::int64_t(g.b) * h.c) % p;
    std::int64_t b = (std::int64_t(g.a) * h.b + std::int64_t(g.b) * h.d) % p;
    std::int64_t c = (std::int64_t(g.c) * h.a + std::int64_t(g.d) * h.c) % p;
    std::int64_t d = (std::int64_t(g.c) * h.b + std::int64_t(g.d) * h.d) % p;
    return canonicalize(a, b, c, d, p);
}

Psl2 inverse(const Psl2& g) {
    std::int64_t p = g.p;
    return canonicalize(g.d, (p - g.b) % p, (p - g.c) % p, g.a, p);
}

Psl2 psl2_pow(const Psl2& g, std::uint64_t e) {
    Psl2 acc = psl2_identity(g.p);
    Psl2 base = g;
    while (e > 0) {
        if (e & 1) acc = group_op(acc, base);
        base = group_op(base, base);
        e >>= 1;
    }
    return acc;
}

std::uint64_t pack(const Psl2& g) {
    std::uint64_t p = g.p;
    return ((std::uint64_t(g.a) * p + g.b) * p + g.c) * p + g.d;
}

Psl2 unpack(std::uint64_t key, std::uint32_t p) {
    std::uint32_t d = std::uint32_t(key % p);
    key /= p;
    std::uint32_t c = std::uint32_t(key % p);
    key /= p;
    std::uint32_t b = std::uint32_t(key % p);
    key /= p;
    return {std::uint32_t(key), b, c, d, p};
}

std::int64_t element_order(const Psl2& g) {
    std::int64_t p = g.p;
    if (g == psl2_identity(g.p)) return 1;
    std::int64_t t = (std::int64_t(g.a) + g.d) % p;
    if (t == 2 || t == p - 2) return p;
    if (t == 0) return 2; // M^2 = -I by Cayley-Hamilton
    std::int64_t disc = ((t * t - 4) % p + p) % p;
    std::int64_t bound = legendre(disc, p) == 1 ? (p - 1) / 2 : (p + 1) / 2;
    std::int64_t k = bound;
    const Psl2 id = psl2_identity(g.p);
    for (const auto& [f, e] : factorize(bound)) {
        for (int i = 0; i < e && k % f == 0 && psl2_pow(g, k / f) == id; ++i) k /= f;
    }
    return k;
}

std::string to_string(const Psl2& g) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[[%u,%u],[%u,%u]] mod %u", g.a, g.b, g.c, g.d, g.p);
    return buf;
}

Psl2 parse_psl2(const std::string& text) {
    long long a, b, c, d, p;
    if (std::sscanf(text.c_str(), " [ [ %lld , %lld ] , [ %lld , %lld ] ] mod %lld", &a, &b, &c, &d,
                    &p) != 5)
        fail(ErrorKind::BadInput, "cannot parse element '" + text + "'");
    return make_psl2(a, b, c, d, p);
}

std::string to_string(ClassKind kind) {
    switch (kind) {
        case ClassKind::Identity: return "identity";
        case ClassKind::UnipotentOne: return "unipotent-1";
        case ClassKind::UnipotentEps: return "unipotent-eps";
        case ClassKind::Split: return "split";
        case ClassKind::NonSplit: return "nonsplit";
        case ClassKind::OrderTwo: return "order-two";
    }
    return "?";
}

ConjClass classify_conjugacy(const Psl2& g) {
    std::int64_t p = g.p;
    if (p % 4 != 3)
        fail(ErrorKind::UnsupportedCongruence,
             "conjugacy labels require p = 3 (mod 4), got p=" + std::to_string(p));
    const std::uint64_t q = p;
    if (g == psl2_identity(g.p)) return {ClassKind::Identity, 0, 0, 1};

    std::int64_t t = (std::int64_t(g.a) + g.d) % p;
    if (t == 2 || t == p - 2) {
        // Lift to the trace +2 representative; the class invariant is the
        // residuosity of b (when c = 0) or of -c.
        std::int64_t b = g.b, c = g.c;
        if (t == p - 2) b = (p - b) % p, c = (p - c) % p;
        std::int64_t witness = (c != 0) ? (p - c) % p : b;
        bool square = legendre(witness, p) == 1;
        std::int64_t eps = smallest_nonresidue(p);
        return {square ? ClassKind::UnipotentOne : ClassKind::UnipotentEps, square ? 1 : eps, 0,
                (q * q - 1) / 2};
    }
    if (t == 0) {
        // zeta^2 = -1 in the norm-one subgroup: zeta = y*sqrt(eps) with
        // eps*y^2 = -1.
        std::int64_t eps = smallest_nonresidue(p);
        std::int64_t y = mod_sqrt(((-mod_inverse(eps, p)) % p + p) % p, p);
        y = std::min(y, p - y);
        return {ClassKind::OrderTwo, 0, y, q * (q - 1) / 2};
    }
    std::int64_t disc = ((t * t - 4) % p + p) % p;
    std::int64_t inv2 = mod_inverse(2, p);
    if (legendre(disc, p) == 1) {
        std::int64_t r = mod_sqrt(disc, p);
        std::int64_t x = (t + r) % p * inv2 % p;
        std::int64_t xi = mod_inverse(x, p);
        std::int64_t param = std::min({x, p - x, xi, p - xi});
        return {ClassKind::Split, param, 0, q * (q + 1)};
    }
    std::int64_t eps = smallest_nonresidue(p);
    std::int64_t s = mod_sqrt(disc * mod_inverse(eps, p) % p, p);
    std::int64_t x = t * inv2 % p;
    std::int64_t y = s * inv2 % p;
    return {ClassKind::NonSplit, std::min(x, p - x), std::min(y, p - y), q * (q - 1)};
}

namespace {

// Emits the canonical lift of every SL2 matrix slice with fixed top-left
// entry; each PSL2 element is produced exactly once. Keys come out in
// ascending order, and slices occupy disjoint ascending key ranges, so the
// concatenation over a = 0..p-1 is already sorted.
void emit_slice(std::uint32_t p, std::int64_t a, std::vector<std::uint64_t>& out) {
    std::int64_t pp = p;
    if (a == 0) {
        for (std::int64_t b = 1; b < pp; ++b) {
            std::int64_t c = (pp - mod_inverse(b, pp)) % pp;
            for (std::int64_t d = 0; d < pp; ++d) {
                if (is_canonical(0, b, c, d, pp))
                    out.push_back(pack(Psl2{0, std::uint32_t(b), std::uint32_t(c), std::uint32_t(d), p}));
            }
        }
        return;
    }
    std::int64_t ainv = mod_inverse(a, pp);
    for (std::int64_t b = 0; b < pp; ++b) {
        for (std::int64_t c = 0; c < pp; ++c) {
            std::int64_t d = ainv * ((1 + b * c) % pp) % pp;
            if (is_canonical(a, b, c, d, pp))
                out.push_back(pack(Psl2{std::uint32_t(a), std::uint32_t(b), std::uint32_t(c),
                                        std::uint32_t(d), p}));
        }
    }
}

std::vector<Psl2> keys_to_elements(std::vector<std::uint64_t>& keys, std::uint32_t p) {
    std::sort(keys.begin(), keys.end());
    std::vector<Psl2> out;
    out.reserve(keys.size());
    for (std::uint64_t k : keys) out.push_back(unpack(k, p));
    return out;
}

void check_enumeration_budget(std::uint32_t p, std::uint64_t budget) {
    if (p < 3 || !is_prime(p))
        fail(ErrorKind::InvalidModulus, std::to_string(p) + " is not an odd prime");
    if (psl2_order(p) > budget)
        fail(ErrorKind::ResourceBudget, "PSL2(F_" + std::to_string(p) + ") has " +
                                            std::to_string(psl2_order(p)) +
                                            " elements, budget is " + std::to_string(budget));
}

} // namespace

std::vector<Psl2> enumerate_group(std::uint32_t p, std::uint64_t budget) {
    check_enumeration_budget(p, budget);
    std::vector<std::vector<std::uint64_t>> parts(p);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t a = 0; a < std::int64_t(p); ++a) {
        parts[std::size_t(a)].reserve(std::size_t(p) * p / 2 + p);
        emit_slice(p, a, parts[std::size_t(a)]);
    }

    std::vector<std::size_t> offset(std::size_t(p) + 1, 0);
    for (std::size_t a = 0; a < p; ++a) offset[a + 1] = offset[a] + parts[a].size();
    std::vector<Psl2> out(offset[p]);
#pragma omp parallel for schedule(static)
    for (std::int64_t a = 0; a < std::int64_t(p); ++a) {
        const auto& part = parts[std::size_t(a)];
        for (std::size_t i = 0; i < part.size(); ++i)
            out[offset[std::size_t(a)] + i] = unpack(part[i], p);
    }
    return out;
}

namespace serial {

std::vector<Psl2> enumerate_group(std::uint32_t p, std::uint64_t budget) {
    check_enumeration_budget(p, budget);
    std::vector<std::uint64_t> keys;
    keys.reserve(psl2_order(p));
    for (std::int64_t a = 0; a < std::int64_t(p); ++a) emit_slice(p, a, keys);
    return keys_to_elements(keys, p);
}

} // namespace serial

std::vector<Psl2> closure(std::uint32_t p, const std::vector<Psl2>& gens, std::uint64_t cap) {
    if (gens.empty()) return {psl2_identity(p)};
    for (const auto& g : gens)
        if (g.p != p)
            fail(ErrorKind::FieldMismatch, "generator over p=" + std::to_string(g.p) +
                                               " in closure over p=" + std::to_string(p));
    detail::Psl2View view{p};
    auto outcome = detail::level_bfs(view, gens, -1, cap, 0);
    std::vector<Psl2> out;
    out.reserve(outcome.visited.size());
    for (std::uint64_t k : outcome.visited) out.push_back(unpack(k, view.p));
    return out;
}

bool generates_full_group(const std::vector<Psl2>& gens, std::uint64_t cap) {
    if (gens.empty()) return false;
    std::uint64_t order = psl2_order(gens.front().p);
    detail::Psl2View view{gens.front().p};
    // A proper subgroup has at most half the elements; stop as soon as the
    // closure grows past that.
    auto outcome = detail::level_bfs(view, gens, -1, cap, order / 2 + 1);
    return outcome.visited.size() > order / 2;
}

} // namespace pslgrow
