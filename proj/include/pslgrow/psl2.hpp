#pragma once

/**
 * @file psl2.hpp
 * @brief Elements, orders, enumeration, conjugacy classification and subgroup
 *        closure for PSL2(F_p).
 *
 * An element is a unit-determinant 2x2 matrix mod +-I. The sign ambiguity is
 * resolved deterministically: the first nonzero entry in scan order
 * (a, b, c, d) of the stored representative lies in [1, (p-1)/2].
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pslgrow/error.hpp"

namespace pslgrow {

inline constexpr std::uint64_t kDefaultEnumBudget = 10'000'000;

struct Psl2 {
    std::uint32_t a = 1, b = 0, c = 0, d = 1;
    std::uint32_t p = 0;

    friend bool operator==(const Psl2&, const Psl2&) = default;
};

/// Number of elements of PSL2(F_p): p(p^2-1)/2.
std::uint64_t psl2_order(std::int64_t p);

/// Builds the canonical representative; validates the modulus and det = 1.
Psl2 make_psl2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t p);

Psl2 psl2_identity(std::uint32_t p);

/// Canonical form of the product g*h. Moduli must match.
Psl2 group_op(const Psl2& g, const Psl2& h);

/// Canonical form of g^-1 = (d, -b; -c, a).
Psl2 inverse(const Psl2& g);

Psl2 psl2_pow(const Psl2& g, std::uint64_t e);

/// Injective key ((a*p + b)*p + c)*p + d; total order used by all set kernels.
std::uint64_t pack(const Psl2& g);
Psl2 unpack(std::uint64_t key, std::uint32_t p);

bool is_canonical(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t p);

/// Least k >= 1 with g^k = +-I, computed from the trace/eigenvalue structure.
std::int64_t element_order(const Psl2& g);

/// "[[a,b],[c,d]] mod p", canonical form only.
std::string to_string(const Psl2& g);
Psl2 parse_psl2(const std::string& text);

enum class ClassKind { Identity, UnipotentOne, UnipotentEps, Split, NonSplit, OrderTwo };

std::string to_string(ClassKind kind);

/**
 * @brief Conjugacy class label for p = 3 (mod 4).
 *
 * Split classes carry the eigenvalue x canonicalized over {x, x^-1, -x, -x^-1};
 * non-split classes carry the norm-one eigenvalue zeta = x + y sqrt(eps)
 * canonicalized over {zeta, zeta^-1, -zeta, -zeta^-1}. The trace-zero class
 * (zeta^2 = -1) is singled out as OrderTwo.
 */
struct ConjClass {
    ClassKind kind = ClassKind::Identity;
    std::int64_t param_x = 0;
    std::int64_t param_y = 0;
    std::uint64_t size = 0;

    friend bool operator==(const ConjClass&, const ConjClass&) = default;
};

/// Trace/residuosity-based classification; requires p = 3 (mod 4).
ConjClass classify_conjugacy(const Psl2& g);

/// All canonical elements, sorted by pack(); length p(p^2-1)/2.
std::vector<Psl2> enumerate_group(std::uint32_t p, std::uint64_t budget = kDefaultEnumBudget);

/// Subgroup generated by gens, as a pack()-sorted element list. Empty input
/// yields {identity}. Exceeding cap raises a resource error.
std::vector<Psl2> closure(std::uint32_t p, const std::vector<Psl2>& gens,
                          std::uint64_t cap = kDefaultEnumBudget);

/// True iff the generated subgroup is all of PSL2(F_p). Stops the closure as
/// soon as more than half the group has been reached (Lagrange).
bool generates_full_group(const std::vector<Psl2>& gens, std::uint64_t cap = kDefaultEnumBudget);

namespace serial {
/// Single-threaded reference enumeration, kept for tests and benchmarks.
std::vector<Psl2> enumerate_group(std::uint32_t p, std::uint64_t budget = kDefaultEnumBudget);
} // namespace serial

} // namespace pslgrow
