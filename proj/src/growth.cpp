#include "pslgrow/growth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace pslgrow {

PolygonVariant parse_polygon_variant(const std::string& name) {
    if (name == "cone3") return PolygonVariant::Cone3;
    if (name == "smooth") return PolygonVariant::Smooth;
    fail(ErrorKind::BadInput, "unknown polygon variant '" + name + "' (want cone3 or smooth)");
}

std::string to_string(PolygonVariant variant) {
    return variant == PolygonVariant::Cone3 ? "cone3" : "smooth";
}

RationalSeries polygon_series(int n, PolygonVariant variant) {
    if (n < 1) fail(ErrorKind::BadInput, "polygon genus must be >= 1");
    if (variant == PolygonVariant::Smooth && n < 2)
        fail(ErrorKind::BadInput, "smooth polygon series needs genus >= 2 (non-hyperbolic below)");
    const int degree = variant == PolygonVariant::Cone3 ? 6 * n : 2 * n;
    RationalSeries s;
    s.numerator.assign(std::size_t(degree) + 1, 2);
    s.denominator.assign(std::size_t(degree) + 1, 2 - 4 * std::int64_t(n));
    s.numerator.front() = s.numerator.back() = 1;
    s.denominator.front() = s.denominator.back() = 1;
    return s;
}

std::vector<mpz_class> series_coeffs(const RationalSeries& series, int n_terms) {
    if (series.denominator.empty() || series.denominator.front() != 1)
        fail(ErrorKind::BadInput, "series denominator must have constant term 1");
    if (n_terms < 0) fail(ErrorKind::BadInput, "coefficient count must be nonnegative");
    std::vector<mpz_class> a(std::size_t(n_terms) + 1, 0);
    for (int k = 0; k <= n_terms; ++k) {
        mpz_class acc = std::size_t(k) < series.numerator.size() ? series.numerator[std::size_t(k)] : 0;
        for (std::size_t j = 1; j < series.denominator.size() && j <= std::size_t(k); ++j)
            acc -= series.denominator[j] * a[std::size_t(k) - j];
        a[std::size_t(k)] = acc;
    }
    return a;
}

namespace {

// Reciprocal denominator r(x) = sum_j den[j] x^(deg-j); its largest real root
// is the growth rate of the series.
double eval_reciprocal(const std::vector<std::int64_t>& den, double x) {
    double acc = 0.0;
    for (std::int64_t c : den) acc = acc * x + double(c);
    return acc;
}

} // namespace

GrowthRate growth_rate(const RationalSeries& series, int n_terms) {
    if (n_terms < 2) fail(ErrorKind::BadInput, "rate estimation needs at least two terms");
    auto coeffs = series_coeffs(series, n_terms);
    GrowthRate out;
    if (coeffs[std::size_t(n_terms) - 1] == 0)
        fail(ErrorKind::NumericInstability, "zero coefficient in ratio estimate");
    mpq_class ratio(coeffs[std::size_t(n_terms)], coeffs[std::size_t(n_terms) - 1]);
    ratio.canonicalize();
    out.lambda = ratio.get_d();
    out.exponential = out.lambda > 1.0;

    // Bisection for the largest real root, scanning down from a Cauchy bound.
    std::int64_t maxc = 1;
    for (std::int64_t c : series.denominator) maxc = std::max(maxc, std::abs(c));
    double hi = 1.0 + double(maxc);
    double step = hi / 1024.0;
    double lo = hi - step;
    while (lo > 1e-9 && !(eval_reciprocal(series.denominator, lo) <= 0.0 &&
                          eval_reciprocal(series.denominator, hi) >= 0.0)) {
        hi = lo;
        lo -= step;
    }
    if (lo <= 1e-9) {
        out.dominant_root = 0.0;
        out.agree = false;
        return out;
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (eval_reciprocal(series.denominator, mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    out.dominant_root = 0.5 * (lo + hi);
    out.agree = std::abs(out.lambda - out.dominant_root) <= 1e-6 * std::abs(out.dominant_root);
    return out;
}

GrowthTable family_growth(const std::vector<GrowthTable>& tables, int nmax) {
    if (tables.empty()) fail(ErrorKind::BadInput, "family growth needs at least one table");
    if (nmax < 0) fail(ErrorKind::BadInput, "nmax must be nonnegative");
    std::vector<std::uint64_t> balls(std::size_t(nmax) + 1, 0);
    for (const auto& t : tables)
        for (int k = 0; k <= nmax; ++k)
            balls[std::size_t(k)] = std::max(balls[std::size_t(k)], t.ball_at(k));

    GrowthTable out;
    out.balls = std::move(balls);
    out.spheres.resize(out.balls.size());
    out.spheres[0] = out.balls[0];
    for (std::size_t k = 1; k < out.balls.size(); ++k)
        out.spheres[k] = out.balls[k] - out.balls[k - 1];

    bool all_saturated =
        std::all_of(tables.begin(), tables.end(), [](const auto& t) { return t.saturated_at.has_value(); });
    if (all_saturated) {
        std::uint64_t final_size = out.balls.back();
        for (std::size_t k = 0; k < out.balls.size(); ++k) {
            if (out.balls[k] == final_size) {
                out.saturated_at = int(k);
                break;
            }
        }
    }
    return out;
}

GrowthTable cyclic_family_growth(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
                                 CyclicVariant variant, int nmax) {
    if (pairs.empty()) fail(ErrorKind::BadInput, "empty pair list");
    if (nmax < 1) fail(ErrorKind::BadInput, "nmax must be >= 1");
    std::vector<GrowthTable> tables;
    for (auto [pi, qi] : pairs) {
        if (pi < 1 || qi < 1 || std::gcd(pi, qi) != 1)
            fail(ErrorKind::BadInput, "pair (" + std::to_string(pi) + "," + std::to_string(qi) +
                                          ") is not coprime");
        std::uint64_t n = std::uint64_t(pi) * std::uint64_t(qi);
        std::vector<std::uint64_t> gens;
        if (variant == CyclicVariant::OneGen)
            gens = {1};
        else
            gens = {std::uint64_t(qi) % n, std::uint64_t(pi) % n};
        tables.push_back(cyclic_cayley_growth(n, gens, nmax));
    }
    return family_growth(tables, nmax);
}

ExponentFit fit_growth_exponent(const GrowthTable& table) {
    int hi = table.saturated_at ? *table.saturated_at - 1 : table.max_index();
    if (hi < 1) fail(ErrorKind::BadInput, "not enough unsaturated points for an exponent fit");
    ExponentFit fit;
    fit.window_lo = 0;
    fit.window_hi = hi;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = hi + 1;
    for (int k = 0; k <= hi; ++k) {
        double x = std::log(double(k + 1));
        double y = std::log(double(table.balls[std::size_t(k)]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = double(n) * sxx - sx * sx;
    fit.exponent = (double(n) * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.exponent * sx) / double(n);
    return fit;
}

namespace {

// The quotient growth at radius 1 should see 2h distinct generator images
// and their inverses, all nontrivial, like the polygon group does.
bool images_nondegenerate(const std::vector<Psl2>& hyperbolic, std::uint32_t p) {
    std::set<std::uint64_t> keys;
    for (const auto& g : hyperbolic) {
        if (g == psl2_identity(p)) return false;
        keys.insert(pack(g));
        keys.insert(pack(inverse(g)));
    }
    return keys.size() == 2 * hyperbolic.size();
}

} // namespace

QuotientComparison compare_quotient_vs_fuchsian(std::int64_t p, const Signature& sig, int nmax,
                                                std::uint64_t budget, std::uint64_t seed) {
    PolygonVariant variant;
    if (sig.periods == std::vector<std::int64_t>{3} && sig.h >= 1)
        variant = PolygonVariant::Cone3;
    else if (sig.periods.empty() && sig.h >= 2)
        variant = PolygonVariant::Smooth;
    else
        fail(ErrorKind::BadInput,
             "comparison is defined for signatures h:3 (h >= 1) and h:- (h >= 2), got " +
                 to_string(sig));
    if (nmax < 1) fail(ErrorKind::BadInput, "nmax must be >= 1");

    QuotientComparison out;
    out.p = p;
    out.sig = sig;

    constexpr int kSeedTries = 64;
    std::vector<Psl2> gens;
    bool found = false;
    for (int attempt = 0; attempt < kSeedTries; ++attempt) {
        std::uint64_t try_seed = seed + std::uint64_t(attempt);
        EpiSearchResult res = find_epimorphism(sig, p, budget, try_seed);
        if (res.status != EpiStatus::Found) continue;
        std::vector<Psl2> hyperbolic(res.witness->images.begin(),
                                     res.witness->images.begin() + 2 * sig.h);
        if (!images_nondegenerate(hyperbolic, std::uint32_t(p))) continue;
        out.witness = *res.witness;
        out.seed_used = try_seed;
        gens = std::move(hyperbolic);
        found = true;
        break;
    }
    if (!found)
        fail(ErrorKind::ResourceBudget,
             "no nondegenerate witness found for " + to_string(sig) + " at p=" + std::to_string(p));

    GrowthTable quotient = cayley_growth(gens, nmax);
    auto coeffs = series_coeffs(polygon_series(sig.h, variant), nmax);

    mpz_class fuchsian_ball = 0;
    out.inequality_holds = true;
    out.equality_depth = -1;
    bool equal_prefix = true;
    for (int k = 0; k <= nmax; ++k) {
        fuchsian_ball += coeffs[std::size_t(k)];
        QuotientComparison::Row row;
        row.k = k;
        row.gamma_quotient = quotient.ball_at(k);
        row.gamma_fuchsian = fuchsian_ball;
        row.equal = mpz_class(long(row.gamma_quotient)) == fuchsian_ball;
        if (mpz_class(long(row.gamma_quotient)) > fuchsian_ball) out.inequality_holds = false;
        if (equal_prefix && row.equal)
            out.equality_depth = k;
        else
            equal_prefix = false;
        out.rows.push_back(std::move(row));
    }
    return out;
}

nlohmann::json QuotientComparison::to_json() const {
    nlohmann::json j;
    j["p"] = p;
    j["signature"] = to_string(sig);
    j["seed_used"] = seed_used;
    j["witness"] = witness_to_json(witness);
    j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json jr;
        jr["k"] = row.k;
        jr["gamma_p"] = row.gamma_quotient;
        if (row.gamma_fuchsian.fits_slong_p())
            jr["gamma_gamma"] = row.gamma_fuchsian.get_si();
        else
            jr["gamma_gamma"] = row.gamma_fuchsian.get_str();
        jr["equal"] = row.equal;
        j["rows"].push_back(jr);
    }
    j["inequality_holds"] = inequality_holds;
    j["equality_depth"] = equality_depth;
    return j;
}

nlohmann::json growth_table_to_json(const GrowthTable& table) {
    nlohmann::json j;
    j["spheres"] = table.spheres;
    j["balls"] = table.balls;
    if (table.saturated_at)
        j["saturated_at"] = *table.saturated_at;
    else
        j["saturated_at"] = nullptr;
    return j;
}

std::string growth_table_to_csv(const GrowthTable& table) {
    std::ostringstream out;
    out << "k,sphere,ball\n";
    for (std::size_t k = 0; k < table.balls.size(); ++k)
        out << k << "," << table.spheres[k] << "," << table.balls[k] << "\n";
    return out.str();
}

} // namespace pslgrow
