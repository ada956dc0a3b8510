#include "pslgrow/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

namespace pslgrow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// cos(2 pi k j / n) with the phase reduced mod n in exact integers, so the
// cosine argument never exceeds one turn.
double cos_root_of_unity(std::int64_t k, std::int64_t j, std::int64_t n) {
    std::int64_t m = (k % n) * (j % n) % n;
    return std::cos(kTwoPi * double(m) / double(n));
}

std::pair<std::int64_t, std::int64_t> canonical_nonsplit(std::int64_t x, std::int64_t y,
                                                         std::int64_t p) {
    return {std::min(x, (p - x) % p), std::min(y, (p - y) % p)};
}

// Generator of the norm-one subgroup C (cyclic of order p+1): the (p-1)-th
// power of a generator of the extension's multiplicative group, searched in
// lexicographic element order for reproducibility.
QuadExt norm_one_generator(const PrimeField& f) {
    std::int64_t p = f.p();
    for (std::int64_t x = 0; x < p; ++x) {
        for (std::int64_t y = 1; y < p; ++y) {
            QuadExt w = f.ext(x, y);
            if (f.mult_order(w) == p * p - 1) return f.ext_pow(w, p - 1);
        }
    }
    fail(ErrorKind::InvalidModulus, "no generator of F_{p^2}* found");
}

struct ClassColumn {
    ConjClass label;
    // Discrete log of the split parameter (base: primitive root) or of the
    // nonsplit parameter in C (base: norm-one generator); -1 when unused.
    std::int64_t dlog = -1;
};

} // namespace

std::string to_string(Character::Family family) {
    switch (family) {
        case Character::Family::U: return "U";
        case Character::Family::V: return "V";
        case Character::Family::WAlpha: return "W_alpha";
        case Character::Family::ChiPhi: return "chi_phi";
        case Character::Family::ChiPsiPrime: return "chi_psi_prime";
        case Character::Family::ChiPsiDoublePrime: return "chi_psi_double_prime";
    }
    return "?";
}

namespace {

// Compensated accumulator; the orthogonality sums mix terms of very
// different magnitude (degree products vs unit-modulus values).
struct KahanSum {
    std::complex<double> sum{0.0};
    std::complex<double> carry{0.0};

    void add(std::complex<double> value) {
        std::complex<double> y = value - carry;
        std::complex<double> t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

} // namespace

double orthogonality_defect(const std::vector<std::uint64_t>& class_sizes,
                            const std::vector<std::vector<std::complex<double>>>& rows) {
    const std::size_t nclass = class_sizes.size();
    const std::size_t nchar = rows.size();
    double group_order = 0.0;
    for (std::uint64_t s : class_sizes) group_order += double(s);

    double defect = 0.0;
    for (std::size_t i = 0; i < nchar; ++i) {
        for (std::size_t j = i; j < nchar; ++j) {
            KahanSum acc;
            for (std::size_t c = 0; c < nclass; ++c)
                acc.add(double(class_sizes[c]) * rows[i][c] * std::conj(rows[j][c]));
            std::complex<double> value = acc.sum / group_order;
            if (i == j) value -= 1.0;
            defect = std::max(defect, std::abs(value));
        }
    }
    for (std::size_t c = 0; c < nclass; ++c) {
        for (std::size_t d = c; d < nclass; ++d) {
            KahanSum acc;
            for (std::size_t i = 0; i < nchar; ++i) acc.add(rows[i][c] * std::conj(rows[i][d]));
            std::complex<double> value = acc.sum;
            if (c == d) value -= group_order / double(class_sizes[c]);
            defect = std::max(defect, std::abs(value));
        }
    }
    return defect;
}

CharacterTable::CharacterTable(std::int64_t p) : p_(p), field_(p) {}

CharacterTable CharacterTable::build(std::int64_t p) {
    if (!is_prime(p)) fail(ErrorKind::InvalidModulus, std::to_string(p) + " is not prime");
    if (p % 4 != 3)
        fail(ErrorKind::UnsupportedCongruence,
             "character table implemented for p = 3 (mod 4), got p=" + std::to_string(p));
    if (p < 7)
        fail(ErrorKind::DegenerateTable,
             "character table degenerates for p < 7, got p=" + std::to_string(p));
    if (p > kMaxPrime)
        fail(ErrorKind::ResourceBudget,
             "character table build supports p <= " + std::to_string(kMaxPrime) +
                 " (the full orthogonality check is cubic in the class count)");

    CharacterTable table(p);
    const PrimeField& f = table.field_;
    const std::uint64_t q = std::uint64_t(p);

    // Discrete logs in F_p* with respect to the fixed primitive root.
    std::vector<std::int64_t> dlog(std::size_t(p), -1);
    {
        std::int64_t g = f.primitive_root(), v = 1;
        for (std::int64_t j = 0; j < p - 1; ++j) {
            dlog[std::size_t(v)] = j;
            v = f.mul(v, g);
        }
    }
    // Discrete logs in C with respect to the fixed norm-one generator.
    QuadExt c0 = norm_one_generator(f);
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> cdlog;
    {
        QuadExt v = f.ext_one();
        for (std::int64_t j = 0; j < p + 1; ++j) {
            cdlog[{v.x, v.y}] = j;
            v = f.ext_mul(v, c0);
        }
    }

    // Class columns in the fixed order.
    std::vector<ClassColumn> cols;
    cols.push_back({{ClassKind::Identity, 0, 0, 1}, -1});
    cols.push_back({{ClassKind::UnipotentOne, 1, 0, (q * q - 1) / 2}, -1});
    cols.push_back({{ClassKind::UnipotentEps, f.epsilon(), 0, (q * q - 1) / 2}, -1});
    for (std::int64_t x = 2; x <= p - 2; ++x) {
        std::int64_t xi = mod_inverse(x, p);
        if (x == std::min({x, p - x, xi, p - xi}))
            cols.push_back({{ClassKind::Split, x, 0, q * (q + 1)}, dlog[std::size_t(x)]});
    }
    std::vector<ClassColumn> nonsplit_cols;
    std::int64_t order_two_dlog = -1;
    std::int64_t order_two_y = 0;
    {
        QuadExt zeta = c0;
        for (std::int64_t j = 1; j < p + 1; ++j, zeta = f.ext_mul(zeta, c0)) {
            if (zeta.y == 0) continue; // +-1
            auto [cx, cy] = canonical_nonsplit(zeta.x, zeta.y, p);
            if (cx != zeta.x || cy != zeta.y) continue; // not the canonical orbit member
            if (zeta.x == 0) {
                order_two_dlog = j; // zeta^2 = -1
                order_two_y = zeta.y;
                continue;
            }
            nonsplit_cols.push_back({{ClassKind::NonSplit, zeta.x, zeta.y, q * (q - 1)}, j});
        }
    }
    std::sort(nonsplit_cols.begin(), nonsplit_cols.end(), [](const auto& lhs, const auto& rhs) {
        return std::pair(lhs.label.param_x, lhs.label.param_y) <
               std::pair(rhs.label.param_x, rhs.label.param_y);
    });
    cols.insert(cols.end(), nonsplit_cols.begin(), nonsplit_cols.end());
    cols.push_back({{ClassKind::OrderTwo, 0, order_two_y, q * (q - 1) / 2}, order_two_dlog});

    const std::size_t ncols = cols.size();
    const std::size_t split_begin = 3;
    const std::size_t split_count = std::size_t((p - 3) / 4);
    const std::size_t nonsplit_begin = split_begin + split_count;
    const std::size_t order_two_col = ncols - 1;

    for (std::size_t i = 0; i < ncols; ++i) table.classes_.push_back(cols[i].label);

    auto make_char = [&](Character::Family fam, int index, std::int64_t degree) {
        Character chr;
        chr.family = fam;
        chr.index = index;
        chr.degree = degree;
        chr.values.assign(ncols, 0.0);
        chr.values[0] = double(degree);
        return chr;
    };

    std::vector<Character>& chars = table.chars_;

    { // trivial character
        Character u = make_char(Character::Family::U, 0, 1);
        std::fill(u.values.begin(), u.values.end(), 1.0);
        chars.push_back(u);
    }
    { // Steinberg: +1 on split classes, -1 on nonsplit-type classes
        Character v = make_char(Character::Family::V, 0, p);
        for (std::size_t c = split_begin; c < nonsplit_begin; ++c) v.values[c] = 1.0;
        for (std::size_t c = nonsplit_begin; c < order_two_col; ++c) v.values[c] = -1.0;
        v.values[order_two_col] = -1.0;
        chars.push_back(v);
    }
    // W_alpha, degree p+1, for alpha = alpha_k with k even (alpha(-1)=1),
    // 0 < k < (p-1)/2 (alpha up to inversion, alpha^2 != 1).
    for (std::int64_t k = 2; k < (p - 1) / 2; k += 2) {
        Character w = make_char(Character::Family::WAlpha, int(k), p + 1);
        w.values[1] = w.values[2] = 1.0;
        for (std::size_t c = split_begin; c < nonsplit_begin; ++c)
            w.values[c] = 2.0 * cos_root_of_unity(k, cols[c].dlog, p - 1);
        chars.push_back(w);
    }
    // chi_phi, degree p-1, for phi = phi_l with l even (phi(-1)=1),
    // 0 < l < (p+1)/2 so phi is taken up to inversion with phi^2 != 1.
    for (std::int64_t l = 2; l < (p + 1) / 2; l += 2) {
        Character chi = make_char(Character::Family::ChiPhi, int(l), p - 1);
        chi.values[1] = chi.values[2] = -1.0;
        for (std::size_t c = nonsplit_begin; c <= order_two_col; ++c)
            chi.values[c] = -2.0 * cos_root_of_unity(l, cols[c].dlog, p + 1);
        chars.push_back(chi);
    }
    // The two halves of degree (p-1)/2 attached to the order-2 character psi
    // of C; psi(zeta) = (-1)^dlog.
    {
        const std::complex<double> u(-0.5, 0.5 * std::sqrt(double(p)));
        const std::complex<double> v = std::conj(u);
        auto psi_at = [&](std::size_t c) { return (cols[c].dlog % 2 == 0) ? 1.0 : -1.0; };
        Character prime = make_char(Character::Family::ChiPsiPrime, 0, (p - 1) / 2);
        Character dbl = make_char(Character::Family::ChiPsiDoublePrime, 0, (p - 1) / 2);
        prime.values[1] = u, prime.values[2] = v;
        dbl.values[1] = v, dbl.values[2] = u;
        for (std::size_t c = nonsplit_begin; c <= order_two_col; ++c)
            prime.values[c] = dbl.values[c] = -psi_at(c);
        chars.push_back(prime);
        chars.push_back(dbl);
    }

    // Orthogonality gate, plus defects of the rejected readings of the table.
    std::vector<std::uint64_t> sizes;
    for (const auto& c : table.classes_) sizes.push_back(c.size);
    auto rows_of = [&](const std::vector<Character>& cs) {
        std::vector<std::vector<std::complex<double>>> rows;
        for (const auto& c : cs) rows.push_back(c.values);
        return rows;
    };
    table.defect_ = pslgrow::orthogonality_defect(sizes, rows_of(chars));
    table.variants_.push_back({"selected table", table.defect_, true});
    {
        auto alt = chars; // split entries halved
        for (auto& chr : alt)
            if (chr.family == Character::Family::WAlpha)
                for (std::size_t c = split_begin; c < nonsplit_begin; ++c) chr.values[c] *= 0.5;
        table.variants_.push_back(
            {"W_alpha split entries halved", pslgrow::orthogonality_defect(sizes, rows_of(alt)), false});
    }
    {
        auto alt = chars; // Steinberg +1 on the order-two class
        alt[1].values[order_two_col] = 1.0;
        table.variants_.push_back(
            {"V order-two entry +1", pslgrow::orthogonality_defect(sizes, rows_of(alt)), false});
    }
    {
        // order-two column evaluated at -1 instead of at the order-4 element
        // of C: chi_phi -> -2, both psi halves -> -1.
        auto alt = chars;
        for (auto& chr : alt) {
            if (chr.family == Character::Family::ChiPhi) chr.values[order_two_col] = -2.0;
            if (chr.family == Character::Family::ChiPsiPrime ||
                chr.family == Character::Family::ChiPsiDoublePrime)
                chr.values[order_two_col] = -1.0;
        }
        table.variants_.push_back({"order-two column evaluated at -1",
                                   pslgrow::orthogonality_defect(sizes, rows_of(alt)), false});
    }

    if (table.defect_ > kTolerance) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "character table failed orthogonality, defect=%.3e",
                      table.defect_);
        fail(ErrorKind::NumericInstability, msg);
    }
    return table;
}

std::size_t CharacterTable::class_index(const ConjClass& label) const {
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        if (classes_[i] == label) return i;
    }
    fail(ErrorKind::BadInput, "unknown conjugacy class label");
}

std::complex<double> CharacterTable::value(std::size_t char_index, const Psl2& g) const {
    if (char_index >= chars_.size())
        fail(ErrorKind::BadInput, "character index " + std::to_string(char_index) + " out of range");
    if (std::int64_t(g.p) != p_)
        fail(ErrorKind::FieldMismatch, "element modulus does not match table");
    return chars_[char_index].values[class_index(classify_conjugacy(g))];
}

nlohmann::json CharacterTable::to_json() const {
    nlohmann::json j;
    j["p"] = p_;
    j["classes"] = nlohmann::json::array();
    for (const auto& c : classes_) {
        nlohmann::json jc;
        jc["kind"] = to_string(c.kind);
        switch (c.kind) {
            case ClassKind::Split:
            case ClassKind::UnipotentOne:
            case ClassKind::UnipotentEps: jc["param"] = c.param_x; break;
            case ClassKind::NonSplit:
            case ClassKind::OrderTwo: jc["param"] = {c.param_x, c.param_y}; break;
            case ClassKind::Identity: jc["param"] = nullptr; break;
        }
        jc["size"] = c.size;
        j["classes"].push_back(jc);
    }
    j["characters"] = nlohmann::json::array();
    for (const auto& chr : chars_) {
        nlohmann::json jc;
        jc["family"] = to_string(chr.family);
        jc["index"] = chr.index;
        jc["degree"] = chr.degree;
        jc["values"] = nlohmann::json::array();
        for (const auto& v : chr.values) jc["values"].push_back({v.real(), v.imag()});
        j["characters"].push_back(jc);
    }
    j["orthogonality_defect"] = defect_;
    j["variants"] = nlohmann::json::array();
    for (const auto& v : variants_)
        j["variants"].push_back({{"description", v.description}, {"defect", v.defect},
                                 {"selected", v.selected}});
    return j;
}

std::string CharacterTable::to_csv() const {
    std::ostringstream out;
    out << "family,index,degree";
    for (const auto& c : classes_) {
        out << "," << to_string(c.kind);
        if (c.kind == ClassKind::Split) out << "(" << c.param_x << ")";
        if (c.kind == ClassKind::NonSplit) out << "(" << c.param_x << "+" << c.param_y << "s)";
    }
    out << "\n";
    for (const auto& chr : chars_) {
        out << to_string(chr.family) << "," << chr.index << "," << chr.degree;
        for (const auto& v : chr.values) {
            out << ",";
            if (v.imag() == 0.0)
                out << v.real();
            else
                out << v.real() << (v.imag() >= 0 ? "+" : "") << v.imag() << "i";
        }
        out << "\n";
    }
    return out.str();
}

} // namespace pslgrow
