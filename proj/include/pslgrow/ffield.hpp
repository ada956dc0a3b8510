#pragma once

/**
 * @file ffield.hpp
 * @brief Exact arithmetic in F_p and its quadratic extension F_p(sqrt(eps)).
 *
 * eps is fixed as the smallest quadratic non-residue mod p, and the primitive
 * root is the smallest one, so that conjugacy representatives and character
 * indexings are reproducible across runs. Residues live in [0, p-1]; all
 * arithmetic widens before reduction, which is exact for the supported range
 * p <= 10^4.
 */

#include <cstdint>
#include <utility>
#include <vector>

#include "pslgrow/error.hpp"

namespace pslgrow {

bool is_prime(std::int64_t n);

/// Prime factorization of n >= 1 as (prime, exponent) pairs, ascending.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p);
std::int64_t mod_inverse(std::int64_t a, std::int64_t p);

/// Square root mod an odd prime (Tonelli-Shanks); a must be a residue.
std::int64_t mod_sqrt(std::int64_t a, std::int64_t p);

/// Smallest n >= 2 with n^((p-1)/2) = -1 mod p. Rejects non-prime or even moduli.
std::int64_t smallest_nonresidue(std::int64_t p);

/// Element x + y*sqrt(eps) of F_{p^2}, tagged with its modulus.
struct QuadExt {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t p = 0;

    friend bool operator==(const QuadExt&, const QuadExt&) = default;
};

/**
 * @brief F_p bundled with its canonical non-residue and primitive root.
 *
 * The multiplicative group of the quadratic extension is handled through
 * QuadExt values in the fixed basis {1, sqrt(eps)}.
 */
class PrimeField {
  public:
    explicit PrimeField(std::int64_t p);

    std::int64_t p() const { return p_; }
    std::int64_t epsilon() const { return epsilon_; }
    std::int64_t primitive_root() const { return root_; }

    std::int64_t reduce(std::int64_t a) const;
    std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % p_; }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return ((a - b) % p_ + p_) % p_; }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % p_; }
    std::int64_t neg(std::int64_t a) const { return (p_ - a % p_) % p_; }
    std::int64_t pow(std::int64_t a, std::int64_t e) const { return mod_pow(a, e, p_); }
    std::int64_t inv(std::int64_t a) const { return mod_inverse(a, p_); }

    QuadExt ext(std::int64_t x, std::int64_t y) const { return {reduce(x), reduce(y), p_}; }
    QuadExt ext_one() const { return {1, 0, p_}; }

    /// (x1 + y1 s)(x2 + y2 s) = (x1 x2 + eps y1 y2) + (x1 y2 + x2 y1) s, s^2 = eps.
    QuadExt ext_mul(const QuadExt& a, const QuadExt& b) const;
    QuadExt ext_pow(QuadExt a, std::int64_t e) const;
    QuadExt ext_inv(const QuadExt& a) const;
    QuadExt ext_neg(const QuadExt& a) const;
    /// N(x + y s) = x^2 - eps y^2; the norm-one elements form the cyclic
    /// subgroup of order p+1.
    std::int64_t norm(const QuadExt& a) const;

    /// Least k >= 1 with z^k = 1; divides p-1. Rejects z = 0.
    std::int64_t mult_order(std::int64_t z) const;
    /// Least k >= 1 with z^k = 1; divides p^2-1. Rejects z = 0.
    std::int64_t mult_order(const QuadExt& z) const;

  private:
    void check_element(const QuadExt& a) const;

    std::int64_t p_;
    std::int64_t epsilon_;
    std::int64_t root_;
};

} // namespace pslgrow
