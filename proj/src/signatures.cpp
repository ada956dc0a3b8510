#include "pslgrow/signatures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pslgrow {

namespace {

mpq_class frac(std::int64_t num, std::int64_t den) {
    mpq_class q{long(num), long(den)};
    q.canonicalize();
    return q;
}

bool is_integral(const mpq_class& q) { return q.get_den() == 1; }

void require_congruence(std::int64_t p, const char* what) {
    if (!is_prime(p)) fail(ErrorKind::InvalidModulus, std::to_string(p) + " is not prime");
    if (p % 4 != 3)
        fail(ErrorKind::UnsupportedCongruence,
             std::string(what) + " requires p = 3 (mod 4), got p=" + std::to_string(p));
}

// Role order 2,3,4,5,d,(p-1)/2,(p+1)/2,p; a period integer resolves to the
// first role carrying its value.
struct RoleMultiplicities {
    std::int64_t a2 = 0, a3 = 0, a4 = 0, a5 = 0, ad = 0, alow = 0, ahigh = 0, ap = 0;
};

RoleMultiplicities role_multiplicities(const Signature& sig, const PeriodAlphabet& alphabet) {
    RoleMultiplicities m;
    std::vector<std::pair<std::int64_t, std::int64_t*>> roles;
    roles.emplace_back(2, &m.a2);
    roles.emplace_back(3, &m.a3);
    roles.emplace_back(4, &m.a4);
    roles.emplace_back(5, &m.a5);
    if (alphabet.d) roles.emplace_back(*alphabet.d, &m.ad);
    roles.emplace_back((alphabet.p - 1) / 2, &m.alow);
    roles.emplace_back((alphabet.p + 1) / 2, &m.ahigh);
    roles.emplace_back(alphabet.p, &m.ap);

    for (std::int64_t period : sig.periods) {
        bool matched = false;
        for (auto& [value, slot] : roles) {
            if (value == period) {
                ++*slot;
                matched = true;
                break;
            }
        }
        if (!matched)
            fail(ErrorKind::UnsupportedPeriod,
                 "period " + std::to_string(period) + " is outside the alphabet for p=" +
                     std::to_string(alphabet.p));
    }
    return m;
}

} // namespace

Signature make_signature(int h, std::vector<std::int64_t> periods) {
    if (h < 0) fail(ErrorKind::BadInput, "orbit genus must be nonnegative");
    for (std::int64_t m : periods)
        if (m < 2) fail(ErrorKind::BadInput, "periods must be >= 2, got " + std::to_string(m));
    std::sort(periods.begin(), periods.end());
    return {h, std::move(periods)};
}

Signature parse_signature(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        fail(ErrorKind::BadInput, "signature must look like 'h:m1,m2' or 'h:-', got '" + text + "'");
    int h = 0;
    try {
        std::size_t used = 0;
        h = std::stoi(text.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("");
    } catch (const std::exception&) {
        fail(ErrorKind::BadInput, "bad orbit genus in '" + text + "'");
    }
    std::vector<std::int64_t> periods;
    std::string rest = text.substr(colon + 1);
    if (rest != "-") {
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                periods.push_back(std::stoll(item, &used));
                if (used != item.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                fail(ErrorKind::BadInput, "bad period '" + item + "' in '" + text + "'");
            }
        }
        if (periods.empty()) fail(ErrorKind::BadInput, "empty period list in '" + text + "'");
    }
    return make_signature(h, std::move(periods));
}

std::string to_string(const Signature& sig) {
    std::string out = std::to_string(sig.h) + ":";
    if (sig.periods.empty()) return out + "-";
    for (std::size_t i = 0; i < sig.periods.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(sig.periods[i]);
    }
    return out;
}

std::optional<std::int64_t> d_value(std::int64_t p) {
    if (!is_prime(p)) fail(ErrorKind::InvalidModulus, std::to_string(p) + " is not prime");
    std::optional<std::int64_t> best;
    for (std::int64_t half : {(p - 1) / 2, (p + 1) / 2}) {
        for (std::int64_t e = 7; e <= half; ++e) {
            if (half % e == 0) {
                if (!best || e < *best) best = e;
                break; // smallest divisor >= 7 of this half
            }
        }
    }
    return best;
}

PeriodAlphabet PeriodAlphabet::for_prime(std::int64_t p) {
    if (!is_prime(p)) fail(ErrorKind::InvalidModulus, std::to_string(p) + " is not prime");
    PeriodAlphabet a;
    a.p = p;
    a.d = d_value(p);
    std::vector<std::int64_t> entries{2, 3, 4, 5, (p - 1) / 2, (p + 1) / 2, p};
    if (a.d) entries.push_back(*a.d);
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    a.entries = std::move(entries);
    return a;
}

bool PeriodAlphabet::contains(std::int64_t m) const {
    return std::binary_search(entries.begin(), entries.end(), m);
}

mpq_class rh_genus(const Signature& sig, std::int64_t p) {
    if (!is_prime(p)) fail(ErrorKind::InvalidModulus, std::to_string(p) + " is not prime");
    mpq_class order(long(psl2_order(p)));
    mpq_class g = 1 + order * (sig.h - 1);
    for (std::int64_t m : sig.periods) g += order / 2 * (1 - frac(1, m));
    return g;
}

Admissibility admissible(const Signature& sig, std::int64_t p) {
    require_congruence(p, "signature admissibility");
    PeriodAlphabet alphabet = PeriodAlphabet::for_prime(p);
    for (std::int64_t m : sig.periods)
        if (!alphabet.contains(m))
            fail(ErrorKind::UnsupportedPeriod,
                 "period " + std::to_string(m) + " is outside the alphabet for p=" + std::to_string(p));

    Admissibility out;
    out.genus = rh_genus(sig, p);
    out.genus_integral = is_integral(out.genus);

    if (sig.h >= 2) {
        out.admissible = true;
        out.reason = "h >= 2: admissible for every period multiset";
    } else if (sig.h == 1) {
        out.admissible = !sig.periods.empty();
        out.reason = out.admissible ? "h = 1 with at least one period"
                                    : "h = 1 requires at least one period";
    } else {
        mpq_class sum = 0;
        for (std::int64_t m : sig.periods) sum += 1 - frac(1, m);
        out.admissible = sum >= 2;
        out.reason = "h = 0: sum(1 - 1/m) = " + sum.get_str() + (out.admissible ? " >= 2" : " < 2");
    }
    out.reason += "; covering genus " + out.genus.get_str() +
                  (out.genus_integral ? " (integral)" : " (non-integral)");
    return out;
}

KeyLemmaResult key_lemma_check(const Signature& sig, std::int64_t p) {
    require_congruence(p, "key lemma check");
    PeriodAlphabet alphabet = PeriodAlphabet::for_prime(p);
    RoleMultiplicities m = role_multiplicities(sig, alphabet);

    KeyLemmaResult out;
    const std::int64_t h = sig.h;
    out.lhs1 = 2 * (h - 1) + frac(m.a2 - 1, 2) + frac(2 * m.a3 - 1, 3) + frac(3 * m.a4, 4) +
               frac(4 * m.a5, 5) + frac(m.alow * (p - 3), p - 1) + frac(m.ahigh * (p - 1), p + 1) +
               frac((p - 1) * m.ap, p);
    out.lhs2 = frac(m.a2, 2) + frac(2 * m.a3, 3) + frac(3 * m.a4, 4) + frac(4 * m.a5, 5) +
               frac((p - 3) * m.alow, p - 1) + frac((p - 1) * m.ahigh, p + 1) +
               frac((p - 1) * m.ap, p);
    if (alphabet.d) {
        std::int64_t d = *alphabet.d;
        out.lhs1 += frac((d - 1) * m.ad + 1, d);
        out.lhs2 += frac((d - 1) * m.ad, d);
    }
    out.lhs2 = 20 * (h - 1) + 10 * out.lhs2;
    out.ineq1 = out.lhs1 >= 0;
    out.ineq2 = out.lhs2 >= 1;
    out.applicable = p >= 13 && (p % 5 == 1 || p % 5 == 4) && p % 8 != 1 && p % 8 != 7 &&
                     alphabet.d && *alphabet.d >= 15;
    return out;
}

Signature extend_signature(const Signature& sig, std::int64_t m, std::int64_t p) {
    if (std::find(sig.periods.begin(), sig.periods.end(), m) == sig.periods.end())
        fail(ErrorKind::MissingPeriod,
             "period " + std::to_string(m) + " does not occur in " + to_string(sig));
    if (m != 2) {
        if (m % 2 == 0 || !is_prime(m))
            fail(ErrorKind::ConditionViolated,
                 "duplicated period must be 2 or an odd prime, got " + std::to_string(m));
        if (psl2_order(p) % std::uint64_t(m) != 0)
            fail(ErrorKind::ConditionViolated, "period " + std::to_string(m) +
                                                   " does not divide the group order for p=" +
                                                   std::to_string(p));
    }
    std::vector<std::int64_t> periods = sig.periods;
    periods.push_back(m);
    Signature out = make_signature(sig.h, std::move(periods));
    if (!is_integral(rh_genus(out, p)))
        fail(ErrorKind::ConditionViolated,
             "extension produced a non-integral covering genus for " + to_string(out));
    return out;
}

ClassProductResult class_product_count(const CharacterTable& table, const ConjClass& class_x,
                                       const Psl2& g) {
    const std::size_t xcol = table.class_index(class_x);
    const std::size_t gcol = table.class_index(classify_conjugacy(g));

    std::complex<double> sum = 0.0;
    for (const auto& chr : table.characters())
        sum += std::norm(chr.values[xcol]) * std::conj(chr.values[gcol]) / double(chr.degree);

    const double scale =
        double(class_x.size) * double(class_x.size) / double(psl2_order(table.p()));
    const std::complex<double> exact = scale * sum;
    const double rounded = std::llround(exact.real());
    if (std::abs(exact - rounded) > 1e-4 || rounded < 0)
        fail(ErrorKind::NumericInstability,
             "class product count " + std::to_string(exact.real()) + " is not close to an integer");
    return {std::uint64_t(rounded), sum};
}

nlohmann::json witness_to_json(const EpiWitness& w) {
    nlohmann::json j;
    j["signature"] = to_string(w.sig);
    j["p"] = w.p;
    j["seed"] = w.seed;
    j["images"] = nlohmann::json::array();
    for (const auto& e : w.images) j["images"].push_back(to_string(e));
    return j;
}

EpiWitness witness_from_json(const nlohmann::json& j) {
    try {
        EpiWitness w;
        w.sig = parse_signature(j.at("signature").get<std::string>());
        w.p = j.at("p").get<std::int64_t>();
        w.seed = j.value("seed", std::uint64_t(0));
        for (const auto& s : j.at("images")) w.images.push_back(parse_psl2(s.get<std::string>()));
        return w;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::BadInput, std::string("malformed witness json: ") + e.what());
    }
}

std::string to_string(EpiStatus status) {
    switch (status) {
        case EpiStatus::Found: return "found";
        case EpiStatus::NotAdmissible: return "not-admissible";
        case EpiStatus::BudgetExhausted: return "search-failure";
    }
    return "?";
}

namespace {

struct GroupPools {
    std::vector<Psl2> elements;        // sorted by pack()
    std::vector<std::uint64_t> keys;   // parallel, sorted
    std::vector<std::int64_t> orders;  // parallel
    std::map<std::int64_t, std::vector<std::uint32_t>> by_order;

    std::int64_t order_of(const Psl2& g) const {
        auto it = std::lower_bound(keys.begin(), keys.end(), pack(g));
        return orders[std::size_t(it - keys.begin())];
    }
};

GroupPools build_pools(std::int64_t p) {
    GroupPools pools;
    pools.elements = enumerate_group(std::uint32_t(p));
    pools.keys.reserve(pools.elements.size());
    for (const auto& e : pools.elements) pools.keys.push_back(pack(e));
    pools.orders.assign(pools.elements.size(), 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < std::int64_t(pools.elements.size()); ++i)
        pools.orders[std::size_t(i)] = element_order(pools.elements[std::size_t(i)]);
    for (std::uint32_t i = 0; i < pools.elements.size(); ++i)
        pools.by_order[pools.orders[i]].push_back(i);
    return pools;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr int kStreams = 8;

// One seeded rejection stream; returns the witness images on success.
std::optional<std::vector<Psl2>> run_stream(const Signature& sig, const GroupPools& pools,
                                            std::int64_t p, std::uint64_t stream_seed,
                                            std::uint64_t attempts,
                                            const std::atomic<int>* cancel_below, int stream_index) {
    const std::size_t r = sig.periods.size();
    const int h = sig.h;
    std::mt19937_64 rng(stream_seed);
    std::uniform_int_distribution<std::size_t> any(0, pools.elements.size() - 1);

    std::vector<const std::vector<std::uint32_t>*> period_pools;
    for (std::size_t j = 0; j + 1 < r; ++j)
        period_pools.push_back(&pools.by_order.at(sig.periods[j]));

    const Psl2 id = psl2_identity(std::uint32_t(p));
    std::vector<Psl2> images(std::size_t(2 * h) + r, id);

    for (std::uint64_t attempt = 0; attempt < attempts; ++attempt) {
        if (cancel_below && cancel_below->load(std::memory_order_relaxed) < stream_index)
            return std::nullopt;

        Psl2 prod = id;
        for (int i = 0; i < h; ++i) {
            Psl2 a = pools.elements[any(rng)];
            Psl2 b = pools.elements[any(rng)];
            images[std::size_t(2 * i)] = a;
            images[std::size_t(2 * i) + 1] = b;
            Psl2 comm = group_op(group_op(a, b), group_op(inverse(a), inverse(b)));
            prod = group_op(prod, comm);
        }
        for (std::size_t j = 0; j + 1 < r; ++j) {
            const auto& pool = *period_pools[j];
            Psl2 c = pools.elements[pool[rng() % pool.size()]];
            images[std::size_t(2 * h) + j] = c;
            prod = group_op(prod, c);
        }
        if (r >= 1) {
            Psl2 last = inverse(prod);
            if (pools.order_of(last) != sig.periods[r - 1]) continue;
            images[std::size_t(2 * h) + r - 1] = last;
        } else if (!(prod == id)) {
            continue;
        }
        if (!generates_full_group(images)) continue;
        return images;
    }
    return std::nullopt;
}

EpiSearchResult search_impl(const Signature& sig, std::int64_t p, std::uint64_t budget,
                            std::uint64_t seed, bool parallel) {
    if (rh_genus(sig, p) < 0)
        fail(ErrorKind::NoFuchsianGroup,
             "negative covering genus: no Fuchsian group with signature " + to_string(sig));
    Admissibility adm = admissible(sig, p);
    if (!adm.admissible) return {EpiStatus::NotAdmissible, std::nullopt, adm.reason};

    GroupPools pools = build_pools(p);
    for (std::int64_t m : sig.periods) {
        if (!pools.by_order.count(m) || pools.by_order.at(m).empty())
            return {EpiStatus::BudgetExhausted, std::nullopt,
                    "PSL2(F_" + std::to_string(p) + ") has no elements of order " +
                        std::to_string(m)};
    }

    std::vector<std::optional<std::vector<Psl2>>> found(kStreams);
    std::atomic<int> best(kStreams);
    auto slice = [&](int k) { return budget / kStreams + (std::uint64_t(k) < budget % kStreams); };

    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int k = 0; k < kStreams; ++k) {
            if (best.load(std::memory_order_relaxed) < k) continue;
            auto w = run_stream(sig, pools, p, mix_seed(seed, std::uint64_t(k)), slice(k), &best, k);
            if (w) {
                found[std::size_t(k)] = std::move(w);
                int cur = best.load();
                while (k < cur && !best.compare_exchange_weak(cur, k)) {
                }
            }
        }
    } else {
        for (int k = 0; k < kStreams; ++k) {
            auto w = run_stream(sig, pools, p, mix_seed(seed, std::uint64_t(k)), slice(k), nullptr, k);
            if (w) {
                found[std::size_t(k)] = std::move(w);
                break;
            }
        }
    }

    for (int k = 0; k < kStreams; ++k) {
        if (found[std::size_t(k)]) {
            EpiWitness w{sig, p, seed, std::move(*found[std::size_t(k)])};
            VerifyResult check = verify_epimorphism(w);
            if (!check.ok)
                fail(ErrorKind::NumericInstability, "search produced an invalid witness: " + check.reason);
            return {EpiStatus::Found, std::move(w), "stream " + std::to_string(k)};
        }
    }
    return {EpiStatus::BudgetExhausted, std::nullopt,
            "no witness within " + std::to_string(budget) + " samples"};
}

} // namespace

EpiSearchResult find_epimorphism(const Signature& sig, std::int64_t p, std::uint64_t budget,
                                 std::uint64_t seed) {
    return search_impl(sig, p, budget, seed, true);
}

namespace serial {
EpiSearchResult find_epimorphism(const Signature& sig, std::int64_t p, std::uint64_t budget,
                                 std::uint64_t seed) {
    return search_impl(sig, p, budget, seed, false);
}
} // namespace serial

VerifyResult verify_epimorphism(const EpiWitness& w) {
    const std::size_t r = w.sig.periods.size();
    const std::size_t expected = std::size_t(2 * w.sig.h) + r;
    if (w.images.size() != expected)
        fail(ErrorKind::BadInput, "witness has " + std::to_string(w.images.size()) +
                                      " images, signature needs " + std::to_string(expected));
    for (const auto& g : w.images)
        if (std::int64_t(g.p) != w.p) fail(ErrorKind::FieldMismatch, "witness image over wrong modulus");

    for (std::size_t j = 0; j < r; ++j) {
        const Psl2& c = w.images[std::size_t(2 * w.sig.h) + j];
        std::int64_t order = element_order(c);
        if (order != w.sig.periods[j])
            return {false, "order mismatch: torsion image " + std::to_string(j) + " has order " +
                               std::to_string(order) + ", expected " +
                               std::to_string(w.sig.periods[j])};
    }
    Psl2 prod = psl2_identity(std::uint32_t(w.p));
    for (int i = 0; i < w.sig.h; ++i) {
        const Psl2& a = w.images[std::size_t(2 * i)];
        const Psl2& b = w.images[std::size_t(2 * i) + 1];
        prod = group_op(prod, group_op(group_op(a, b), group_op(inverse(a), inverse(b))));
    }
    for (std::size_t j = 0; j < r; ++j) prod = group_op(prod, w.images[std::size_t(2 * w.sig.h) + j]);
    if (!(prod == psl2_identity(std::uint32_t(w.p)))) return {false, "product relation fails"};

    if (!generates_full_group(w.images)) return {false, "proper subgroup"};
    return {true, "witness verified"};
}

nlohmann::json ConsistencyReport::to_json() const {
    return {{"p", p},
            {"seed", seed},
            {"samples", samples},
            {"applicable", applicable},
            {"agree_true", agree_true},
            {"agree_false", agree_false},
            {"case_only", case_only},
            {"key_only", key_only},
            {"agreement_rate", samples ? double(agree_true + agree_false) / samples : 1.0}};
}

std::string ConsistencyReport::to_csv() const {
    std::ostringstream out;
    out << "p,seed,samples,applicable,agree_true,agree_false,case_only,key_only\n"
        << p << "," << seed << "," << samples << "," << applicable << "," << agree_true << ","
        << agree_false << "," << case_only << "," << key_only << "\n";
    return out.str();
}

ConsistencyReport consistency_report(std::int64_t p, int samples, std::uint64_t seed) {
    require_congruence(p, "consistency report");
    PeriodAlphabet alphabet = PeriodAlphabet::for_prime(p);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> genus(0, 3);
    std::uniform_int_distribution<int> mult(0, 4);

    ConsistencyReport report;
    report.p = p;
    report.seed = seed;
    report.samples = samples;
    for (int i = 0; i < samples; ++i) {
        std::vector<std::int64_t> periods;
        for (std::int64_t e : alphabet.entries) {
            int count = mult(rng);
            periods.insert(periods.end(), std::size_t(count), e);
        }
        Signature sig = make_signature(genus(rng), std::move(periods));
        bool case_verdict = admissible(sig, p).admissible;
        KeyLemmaResult key = key_lemma_check(sig, p);
        bool key_verdict = key.ineq1 || key.ineq2;
        if (key.applicable) ++report.applicable;
        if (case_verdict && key_verdict) ++report.agree_true;
        else if (!case_verdict && !key_verdict) ++report.agree_false;
        else if (case_verdict) ++report.case_only;
        else ++report.key_only;
    }
    return report;
}

} // namespace pslgrow
