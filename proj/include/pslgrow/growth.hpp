#pragma once

/**
 * @file growth.hpp
 * @brief Rational growth series of the polygon Fuchsian groups, coefficient
 *        extraction, growth-rate estimation, family growth, and the
 *        quotient-vs-Fuchsian comparison.
 */

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "pslgrow/cayley.hpp"
#include "pslgrow/signatures.hpp"

namespace pslgrow {

/// Generating function numerator/denominator as integer coefficient lists,
/// constant terms first; denominator[0] = 1.
struct RationalSeries {
    std::vector<std::int64_t> numerator;
    std::vector<std::int64_t> denominator;
};

enum class PolygonVariant { Cone3, Smooth };

PolygonVariant parse_polygon_variant(const std::string& name);
std::string to_string(PolygonVariant variant);

/**
 * Growth series of the two polygon Fuchsian-group families, genus n:
 * Cone3 is the group with signature (n;3) — degree 6n, interior numerator
 * coefficients 2 and denominator coefficients 2-4n; Smooth is the surface
 * group (n;-) for n >= 2 — same shape of degree 2n. Both polynomials are
 * palindromic.
 */
RationalSeries polygon_series(int n, PolygonVariant variant);

/// Power-series coefficients a_0..a_N by the linear recurrence
/// a_k = num[k] - sum_{j>=1} den[j] a_{k-j}.
std::vector<mpz_class> series_coeffs(const RationalSeries& series, int n_terms);

struct GrowthRate {
    double lambda = 0.0;         // a_N / a_{N-1}
    double dominant_root = 0.0;  // largest real root of the reciprocal denominator
    bool agree = false;          // within 1e-6 relative
    bool exponential = false;    // lambda > 1
};

/// Ratio estimate against an independent bisection root bracket.
GrowthRate growth_rate(const RationalSeries& series, int n_terms = 200);

/// Pointwise maximum of the member balls through nmax; spheres recomputed by
/// differencing. Saturated members extend constantly; an unsaturated member
/// that is too short is an error.
GrowthTable family_growth(const std::vector<GrowthTable>& tables, int nmax);

enum class CyclicVariant { OneGen, TwoGen };

/**
 * Growth of the family of cyclic groups Z_{p_i q_i} over coprime pairs:
 * OneGen uses the single generator 1, TwoGen uses x = q_i (order p_i) and
 * y = p_i (order q_i).
 */
GrowthTable cyclic_family_growth(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
                                 CyclicVariant variant, int nmax);

struct ExponentFit {
    double exponent = 0.0;
    double intercept = 0.0;
    int window_lo = 0;
    int window_hi = 0;
};

/// Least-squares slope of ln(gamma(n)) against ln(n+1) over the unsaturated
/// window [0, saturated_at). The +1 keeps the radius-0 ball in the fit.
ExponentFit fit_growth_exponent(const GrowthTable& table);

struct QuotientComparison {
    struct Row {
        int k = 0;
        std::uint64_t gamma_quotient = 0;
        mpz_class gamma_fuchsian;
        bool equal = false;
    };

    std::int64_t p = 0;
    Signature sig;
    std::uint64_t seed_used = 0;
    EpiWitness witness;
    std::vector<Row> rows;
    bool inequality_holds = false; // gamma_p(k) <= gamma_Gamma(k) for all rows
    int equality_depth = -1;       // largest k with equality through k

    nlohmann::json to_json() const;
};

/**
 * Compares the growth of PSL2(F_p) under the images of the hyperbolic
 * generators of the polygon group against the polygon series: sig (h;3)
 * uses the genus-h cone-point series, sig (h;-) with h >= 2 the smooth one.
 * The torsion image (the commutator product) is excluded from the generating
 * set, matching the polygon's generator pairs. Witnesses are searched with
 * increasing seeds until the 2h images and their inverses are pairwise
 * distinct and nontrivial, so that the radius-1 balls are comparable.
 */
QuotientComparison compare_quotient_vs_fuchsian(std::int64_t p, const Signature& sig, int nmax,
                                                std::uint64_t budget = kDefaultEpiBudget,
                                                std::uint64_t seed = 0);

nlohmann::json growth_table_to_json(const GrowthTable& table);
std::string growth_table_to_csv(const GrowthTable& table);

} // namespace pslgrow
