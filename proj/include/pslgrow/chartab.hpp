#pragma once

/**
 * @file chartab.hpp
 * @brief Complex character table of PSL2(F_p) for p = 3 (mod 4).
 *
 * Classes are ordered: identity, unipotent-1, unipotent-eps, split classes
 * ascending by parameter, nonsplit classes ascending, order-two class last.
 * Characters of F_p* and of the norm-one subgroup C are indexed by discrete
 * logarithm against the fixed generators from the field module, so the table
 * is reproducible across runs.
 *
 * Where the source table of values admits more than one reading (halved vs
 * unhalved split entries, the order-two column), the build keeps the variant
 * that satisfies orthogonality and records the defect of each rejected
 * variant; see variant_diagnostics().
 */

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pslgrow/ffield.hpp"
#include "pslgrow/psl2.hpp"

namespace pslgrow {

struct Character {
    enum class Family { U, V, WAlpha, ChiPhi, ChiPsiPrime, ChiPsiDoublePrime };

    Family family;
    int index = 0; // character index k (W_alpha) or l (chi_phi); 0 otherwise
    std::int64_t degree = 0;
    std::vector<std::complex<double>> values; // one per class column
};

std::string to_string(Character::Family family);

/// Max deviation over all row-pair and column-pair orthogonality relations.
double orthogonality_defect(const std::vector<std::uint64_t>& class_sizes,
                            const std::vector<std::vector<std::complex<double>>>& rows);

class CharacterTable {
  public:
    struct VariantDefect {
        std::string description;
        double defect;
        bool selected;
    };

    static constexpr double kTolerance = 1e-9;
    static constexpr std::int64_t kMaxPrime = 499;

    /// Requires p prime, p = 3 (mod 4), 7 <= p <= kMaxPrime.
    static CharacterTable build(std::int64_t p);

    std::int64_t p() const { return p_; }
    const PrimeField& field() const { return field_; }
    const std::vector<ConjClass>& classes() const { return classes_; }
    const std::vector<Character>& characters() const { return chars_; }

    std::size_t class_index(const ConjClass& label) const;
    std::complex<double> value(std::size_t char_index, const Psl2& g) const;
    double orthogonality_defect() const { return defect_; }
    const std::vector<VariantDefect>& variant_diagnostics() const { return variants_; }

    nlohmann::json to_json() const;
    std::string to_csv() const;

  private:
    explicit CharacterTable(std::int64_t p);

    std::int64_t p_;
    PrimeField field_;
    std::vector<ConjClass> classes_;
    std::vector<Character> chars_;
    double defect_ = 0.0;
    std::vector<VariantDefect> variants_;
};

} // namespace pslgrow
