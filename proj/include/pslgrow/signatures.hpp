#pragma once

/**
 * @file signatures.hpp
 * @brief Signature admissibility for PSL2(F_p) actions (p = 3 mod 4), the
 *        period-duplication extension step, class-product counts from
 *        character sums, and randomized surface-kernel epimorphism search
 *        with exact verification.
 *
 * The admissibility decision follows the three orbit-genus case rules
 * (h = 0 area inequality, h = 1 nonempty periods, h >= 2 unconditional);
 * the unified two-inequality test is kept behind key_lemma_check together
 * with a consistency report, since its printed constant terms disagree with
 * the case rules on simple inputs. All decider arithmetic is exact rational.
 */

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "pslgrow/chartab.hpp"
#include "pslgrow/psl2.hpp"

namespace pslgrow {

inline constexpr std::uint64_t kDefaultEpiBudget = 1'000'000;

/// Orbit genus plus period multiset, stored sorted ascending.
struct Signature {
    int h = 0;
    std::vector<std::int64_t> periods;

    friend bool operator==(const Signature&, const Signature&) = default;
};

Signature make_signature(int h, std::vector<std::int64_t> periods);

/// Text grammar "h:m1,m2,..." with "h:-" for an empty period list.
Signature parse_signature(const std::string& text);
std::string to_string(const Signature& sig);

/// Minimal e >= 7 dividing (p-1)/2 or (p+1)/2, when one exists.
std::optional<std::int64_t> d_value(std::int64_t p);

/// The period alphabet {2,3,4,5,d,(p-1)/2,(p+1)/2,p}, deduplicated by value
/// (roles collide for small p).
struct PeriodAlphabet {
    std::int64_t p = 0;
    std::optional<std::int64_t> d;
    std::vector<std::int64_t> entries;

    static PeriodAlphabet for_prime(std::int64_t p);
    bool contains(std::int64_t m) const;
};

/// Covering genus 1 + |G|(h-1) + (|G|/2) * sum(1 - 1/m_i), |G| = p(p^2-1)/2.
mpq_class rh_genus(const Signature& sig, std::int64_t p);

struct Admissibility {
    bool admissible = false;
    std::string reason;
    mpq_class genus;
    bool genus_integral = false;
};

/// Case-rule decision; requires p = 3 (mod 4) and alphabet periods. The
/// covering genus and its integrality are reported in the reason, not
/// enforced.
Admissibility admissible(const Signature& sig, std::int64_t p);

struct KeyLemmaResult {
    bool ineq1 = false;
    bool ineq2 = false;
    bool applicable = false;
    mpq_class lhs1;
    mpq_class lhs2;
};

/// Evaluates the two unified inequalities exactly as displayed. Terms in d
/// are dropped only when d is absent and its multiplicity is zero.
KeyLemmaResult key_lemma_check(const Signature& sig, std::int64_t p);

/// Duplicates one occurrence of m; m must be present and either 2 or an odd
/// prime dividing |G|. The resulting covering genus is re-checked to be
/// integral.
Signature extend_signature(const Signature& sig, std::int64_t m, std::int64_t p);

struct ClassProductResult {
    std::uint64_t count = 0;
    std::complex<double> char_sum;
};

/// Number of ways g = u*v with u in class X and v in the inverse class,
/// from the character-sum formula; char_sum is the bare sum
/// sum_chi |chi(X)|^2 conj(chi(g)) / chi(1), nonzero iff count > 0.
ClassProductResult class_product_count(const CharacterTable& table, const ConjClass& class_x,
                                       const Psl2& g);

struct EpiWitness {
    Signature sig;
    std::int64_t p = 0;
    std::uint64_t seed = 0;
    std::vector<Psl2> images; // A1,B1,...,Ah,Bh,C1,...,Cr
};

nlohmann::json witness_to_json(const EpiWitness& w);
EpiWitness witness_from_json(const nlohmann::json& j);

enum class EpiStatus { Found, NotAdmissible, BudgetExhausted };

std::string to_string(EpiStatus status);

struct EpiSearchResult {
    EpiStatus status = EpiStatus::BudgetExhausted;
    std::optional<EpiWitness> witness;
    std::string note;
};

/**
 * Seeded rejection search: periods are sampled from per-order element pools,
 * the last torsion image is solved from the long relation, hyperbolic images
 * are sampled uniformly; a candidate is accepted when exact orders, the
 * product relation, and generation of the full group all hold.
 *
 * The search runs fixed independent seed streams and reports the witness of
 * the lowest-numbered successful stream, so the result is deterministic for
 * any thread count. Budget exhaustion is inconclusive, not a proof of
 * inadmissibility.
 */
EpiSearchResult find_epimorphism(const Signature& sig, std::int64_t p,
                                 std::uint64_t budget = kDefaultEpiBudget, std::uint64_t seed = 0);

namespace serial {
EpiSearchResult find_epimorphism(const Signature& sig, std::int64_t p,
                                 std::uint64_t budget = kDefaultEpiBudget, std::uint64_t seed = 0);
} // namespace serial

struct VerifyResult {
    bool ok = false;
    std::string reason;
};

/// Re-checks the three witness invariants in order: exact torsion orders,
/// the long product relation, full-group generation.
VerifyResult verify_epimorphism(const EpiWitness& w);

struct ConsistencyReport {
    std::int64_t p = 0;
    std::uint64_t seed = 0;
    int samples = 0;
    int applicable = 0;
    // counts indexed [case rule verdict][key-lemma verdict]
    int agree_true = 0;   // both true
    int agree_false = 0;  // both false
    int case_only = 0;    // case rules true, key lemma false
    int key_only = 0;     // key lemma true, case rules false
    nlohmann::json to_json() const;
    std::string to_csv() const;
};

/// Samples random signatures over the alphabet and tabulates agreement
/// between the case rules and the unified inequalities.
ConsistencyReport consistency_report(std::int64_t p, int samples, std::uint64_t seed);

} // namespace pslgrow
