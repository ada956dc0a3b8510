#include "pslgrow/ffield.hpp"

#include <numeric>

namespace pslgrow {

namespace {
constexpr std::int64_t kMaxPrime = 10'000;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
        if (n % d != 0) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
    base = ((base % p) + p) % p;
    std::int64_t acc = 1;
    while (exp > 0) {
        if (exp & 1) acc = acc * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return acc;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    a = ((a % p) + p) % p;
    if (a == 0) fail(ErrorKind::ZeroElement, "inverse of zero mod " + std::to_string(p));
    return mod_pow(a, p - 2, p);
}

std::int64_t mod_sqrt(std::int64_t a, std::int64_t p) {
    a = ((a % p) + p) % p;
    if (a == 0) return 0;
    if (mod_pow(a, (p - 1) / 2, p) != 1)
        fail(ErrorKind::BadInput, std::to_string(a) + " is not a quadratic residue mod " + std::to_string(p));
    if (p % 4 == 3) return mod_pow(a, (p + 1) / 4, p);

    // Tonelli-Shanks for p = 1 (mod 4).
    std::int64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::int64_t z = 2;
    while (mod_pow(z, (p - 1) / 2, p) != p - 1) ++z;
    std::int64_t m = s;
    std::int64_t c = mod_pow(z, q, p);
    std::int64_t t = mod_pow(a, q, p);
    std::int64_t r = mod_pow(a, (q + 1) / 2, p);
    while (t != 1) {
        std::int64_t i = 0;
        std::int64_t t2 = t;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        std::int64_t b = mod_pow(c, std::int64_t(1) << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

std::int64_t smallest_nonresidue(std::int64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        fail(ErrorKind::InvalidModulus, std::to_string(p) + " is not an odd prime");
    for (std::int64_t n = 2; n < p; ++n) {
        if (mod_pow(n, (p - 1) / 2, p) == p - 1) return n;
    }
    fail(ErrorKind::InvalidModulus, "no non-residue found mod " + std::to_string(p));
}

PrimeField::PrimeField(std::int64_t p) : p_(p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        fail(ErrorKind::InvalidModulus, std::to_string(p) + " is not an odd prime");
    if (p > kMaxPrime)
        fail(ErrorKind::InvalidModulus, "prime " + std::to_string(p) + " exceeds supported range");
    epsilon_ = smallest_nonresidue(p);

    auto factors = factorize(p - 1);
    for (std::int64_t g = 2;; ++g) {
        bool primitive = true;
        for (const auto& [f, e] : factors) {
            if (mod_pow(g, (p - 1) / f, p) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            root_ = g;
            break;
        }
    }
}

std::int64_t PrimeField::reduce(std::int64_t a) const { return ((a % p_) + p_) % p_; }

void PrimeField::check_element(const QuadExt& a) const {
    if (a.p != p_)
        fail(ErrorKind::FieldMismatch,
             "element over F_" + std::to_string(a.p) + " used in F_" + std::to_string(p_));
}

QuadExt PrimeField::ext_mul(const QuadExt& a, const QuadExt& b) const {
    check_element(a);
    check_element(b);
    return {(a.x * b.x + epsilon_ * a.y % p_ * b.y) % p_, (a.x * b.y + a.y * b.x) % p_, p_};
}

QuadExt PrimeField::ext_pow(QuadExt a, std::int64_t e) const {
    check_element(a);
    QuadExt acc = ext_one();
    while (e > 0) {
        if (e & 1) acc = ext_mul(acc, a);
        a = ext_mul(a, a);
        e >>= 1;
    }
    return acc;
}

std::int64_t PrimeField::norm(const QuadExt& a) const {
    check_element(a);
    return sub(mul(a.x, a.x), mul(epsilon_, mul(a.y, a.y)));
}

QuadExt PrimeField::ext_inv(const QuadExt& a) const {
    std::int64_t n = norm(a);
    if (n == 0) fail(ErrorKind::ZeroElement, "inverse of zero extension element");
    std::int64_t ninv = inv(n);
    // (x + y s)^-1 = (x - y s) / N(x + y s)
    return {mul(a.x, ninv), mul(neg(a.y), ninv), p_};
}

QuadExt PrimeField::ext_neg(const QuadExt& a) const {
    check_element(a);
    return {neg(a.x), neg(a.y), p_};
}

std::int64_t PrimeField::mult_order(std::int64_t z) const {
    z = reduce(z);
    if (z == 0) fail(ErrorKind::ZeroElement, "order of zero");
    std::int64_t order = p_ - 1;
    for (const auto& [f, e] : factorize(p_ - 1)) {
        for (int i = 0; i < e && order % f == 0 && pow(z, order / f) == 1; ++i) order /= f;
    }
    return order;
}

std::int64_t PrimeField::mult_order(const QuadExt& z) const {
    check_element(z);
    if (z.x == 0 && z.y == 0) fail(ErrorKind::ZeroElement, "order of zero extension element");
    std::int64_t group = p_ * p_ - 1;
    std::int64_t order = group;
    for (const auto& [f, e] : factorize(group)) {
        for (int i = 0; i < e && order % f == 0 && ext_pow(z, order / f) == ext_one(); ++i) order /= f;
    }
    return order;
}

} // namespace pslgrow
