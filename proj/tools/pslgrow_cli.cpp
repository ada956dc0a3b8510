// Command-line front end: character tables, signature checks, epimorphism
// search, growth tables and series, with machine-readable output and an
// optional on-disk cache for repeated runs.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pslgrow/chartab.hpp"
#include "pslgrow/growth.hpp"
#include "pslgrow/psl2.hpp"
#include "pslgrow/signatures.hpp"

namespace {

using nlohmann::json;

struct Options {
    std::int64_t p = 7;
    std::string sig = "1:3";
    int nmax = 10;
    std::uint64_t budget = pslgrow::kDefaultEpiBudget;
    std::uint64_t seed = 0;
    int terms = 200;
    int polygon_n = 1;
    std::string variant = "cone3";
    std::string format = "json";
    std::string cache_dir;
    std::string p_list = "7,11,19,23";
};

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_odd_prime(std::int64_t p) {
    if (!pslgrow::is_prime(p) || p == 2)
        pslgrow::fail(pslgrow::ErrorKind::InvalidModulus, std::to_string(p) + " is not an odd prime");
}

std::vector<std::int64_t> parse_p_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            pslgrow::fail(pslgrow::ErrorKind::BadInput, "bad prime '" + item + "' in --p-list");
        }
    }
    if (out.empty()) pslgrow::fail(pslgrow::ErrorKind::BadInput, "--p-list is empty");
    return out;
}

// Classical generating pair: the order-2 rotation and the translation.
std::vector<pslgrow::Psl2> classical_generators(std::int64_t p) {
    return {pslgrow::make_psl2(0, -1, 1, 0, p), pslgrow::make_psl2(1, 1, 0, 1, p)};
}

std::string run_chartab(const Options& opt) {
    auto table = pslgrow::CharacterTable::build(opt.p);
    return opt.format == "csv" ? table.to_csv() : dump(table.to_json());
}

std::string run_signature_check(const Options& opt) {
    auto sig = pslgrow::parse_signature(opt.sig);
    auto result = pslgrow::admissible(sig, opt.p);
    if (opt.format == "csv") {
        std::ostringstream out;
        out << "p,signature,admissible,rh_genus,rh_integral\n"
            << opt.p << "," << to_string(sig) << "," << (result.admissible ? "true" : "false") << ","
            << result.genus.get_str() << "," << (result.genus_integral ? "true" : "false") << "\n";
        return out.str();
    }
    json j{{"p", opt.p},
           {"signature", to_string(sig)},
           {"admissible", result.admissible},
           {"reason", result.reason},
           {"rh_genus", result.genus.get_str()},
           {"rh_integral", result.genus_integral}};
    return dump(j);
}

std::string run_signature_keylemma(const Options& opt) {
    auto sig = pslgrow::parse_signature(opt.sig);
    auto result = pslgrow::key_lemma_check(sig, opt.p);
    auto cases = pslgrow::admissible(sig, opt.p);
    json j{{"p", opt.p},
           {"signature", to_string(sig)},
           {"ineq1", result.ineq1},
           {"ineq2", result.ineq2},
           {"lhs1", result.lhs1.get_str()},
           {"lhs2", result.lhs2.get_str()},
           {"applicable", result.applicable},
           {"case_lemma_admissible", cases.admissible}};
    return dump(j);
}

std::string run_epi_find(const Options& opt) {
    auto sig = pslgrow::parse_signature(opt.sig);
    auto result = pslgrow::find_epimorphism(sig, opt.p, opt.budget, opt.seed);
    json j{{"status", to_string(result.status)}, {"note", result.note}};
    if (result.witness) j["witness"] = witness_to_json(*result.witness);
    return dump(j);
}

std::string run_epi_verify() {
    json in = json::parse(std::cin, nullptr, true);
    // accept either a bare witness or the output of `epi find`
    if (in.contains("witness")) in = in["witness"];
    auto witness = pslgrow::witness_from_json(in);
    auto result = pslgrow::verify_epimorphism(witness);
    return dump(json{{"ok", result.ok}, {"reason", result.reason}});
}

std::string run_growth_cayley(const Options& opt) {
    require_odd_prime(opt.p);
    auto table = pslgrow::cayley_growth(classical_generators(opt.p), opt.nmax);
    if (opt.format == "csv") return growth_table_to_csv(table);
    json j = pslgrow::growth_table_to_json(table);
    j["p"] = opt.p;
    j["generators"] = {to_string(classical_generators(opt.p)[0]),
                       to_string(classical_generators(opt.p)[1])};
    return dump(j);
}

std::string run_growth_series(const Options& opt) {
    auto variant = pslgrow::parse_polygon_variant(opt.variant);
    auto series = pslgrow::polygon_series(opt.polygon_n, variant);
    auto coeffs = pslgrow::series_coeffs(series, opt.terms);
    // the ratio estimate needs deep coefficients regardless of how many are shown
    auto rate = pslgrow::growth_rate(series, std::max(opt.terms, 200));
    if (opt.format == "csv") {
        std::ostringstream out;
        out << "k,a_k\n";
        for (std::size_t k = 0; k < coeffs.size(); ++k) out << k << "," << coeffs[k].get_str() << "\n";
        return out.str();
    }
    json j{{"variant", to_string(variant)},
           {"n", opt.polygon_n},
           {"numerator", series.numerator},
           {"denominator", series.denominator},
           {"rate",
            {{"lambda", rate.lambda},
             {"dominant_root", rate.dominant_root},
             {"agree", rate.agree},
             {"exponential", rate.exponential}}}};
    j["coefficients"] = json::array();
    for (const auto& c : coeffs) {
        if (c.fits_slong_p())
            j["coefficients"].push_back(c.get_si());
        else
            j["coefficients"].push_back(c.get_str());
    }
    return dump(j);
}

std::string run_growth_compare(const Options& opt) {
    auto sig = pslgrow::parse_signature(opt.sig);
    auto cmp = pslgrow::compare_quotient_vs_fuchsian(opt.p, sig, opt.nmax, opt.budget, opt.seed);
    if (opt.format == "csv") {
        std::ostringstream out;
        out << "k,gamma_p,gamma_gamma,equal\n";
        for (const auto& row : cmp.rows)
            out << row.k << "," << row.gamma_quotient << "," << row.gamma_fuchsian.get_str() << ","
                << (row.equal ? "true" : "false") << "\n";
        return out.str();
    }
    return dump(cmp.to_json());
}

std::string run_family_sweep(const Options& opt) {
    auto primes = parse_p_list(opt.p_list);
    std::vector<pslgrow::GrowthTable> tables;
    json members = json::array();
    for (std::int64_t p : primes) {
        require_odd_prime(p);
        auto table = pslgrow::cayley_growth(classical_generators(p), opt.nmax);
        json jm = pslgrow::growth_table_to_json(table);
        jm["p"] = p;
        members.push_back(jm);
        tables.push_back(std::move(table));
    }
    auto family = pslgrow::family_growth(tables, opt.nmax);
    if (opt.format == "csv") return growth_table_to_csv(family);
    json j{{"p_list", primes}, {"members", members}, {"family", pslgrow::growth_table_to_json(family)}};
    return dump(j);
}

std::string run_consistency_report(const Options& opt) {
    auto report = pslgrow::consistency_report(opt.p, opt.terms, opt.seed);
    return opt.format == "csv" ? report.to_csv() : dump(report.to_json());
}

int dispatch(const std::string& command, const Options& opt, const std::string& cache_key) {
    std::string output;
    std::filesystem::path cache_file;
    // epi-verify consumes stdin, which the cache key cannot see
    if (!opt.cache_dir.empty() && command != "epi-verify") {
        std::filesystem::create_directories(opt.cache_dir);
        char hash[32];
        std::snprintf(hash, sizeof hash, "%016llx", (unsigned long long)fnv1a(cache_key));
        cache_file = std::filesystem::path(opt.cache_dir) /
                     (command + "-" + hash + (opt.format == "csv" ? ".csv" : ".json"));
        if (std::filesystem::exists(cache_file)) {
            std::ifstream in(cache_file);
            std::ostringstream buf;
            buf << in.rdbuf();
            std::cout << buf.str();
            return 0;
        }
    }

    if (command == "chartab") output = run_chartab(opt);
    else if (command == "signature-check") output = run_signature_check(opt);
    else if (command == "signature-keylemma") output = run_signature_keylemma(opt);
    else if (command == "epi-find") output = run_epi_find(opt);
    else if (command == "epi-verify") output = run_epi_verify();
    else if (command == "growth-cayley") output = run_growth_cayley(opt);
    else if (command == "growth-series") output = run_growth_series(opt);
    else if (command == "growth-compare") output = run_growth_compare(opt);
    else if (command == "family-sweep") output = run_family_sweep(opt);
    else if (command == "consistency-report") output = run_consistency_report(opt);
    else pslgrow::fail(pslgrow::ErrorKind::BadInput, "unknown command " + command);

    if (!cache_file.empty()) {
        std::ofstream out(cache_file);
        out << output;
    }
    std::cout << output;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"word growth toolkit for the family PSL2(F_p), p = 3 (mod 4)"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_p = true) {
        if (with_p) cmd->add_option("--p", opt.p, "prime modulus");
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--cache-dir", opt.cache_dir, "cache directory for results");
    };

    std::string command;
    auto leaf = [&](CLI::App* cmd, const std::string& name) {
        cmd->callback([&command, name]() { command = name; });
    };

    auto* chartab = app.add_subcommand("chartab", "character table of PSL2(F_p)");
    add_common(chartab);
    leaf(chartab, "chartab");

    auto* signature = app.add_subcommand("signature", "signature admissibility");
    signature->require_subcommand(1);
    auto* sig_check = signature->add_subcommand("check", "case-rule admissibility decision");
    add_common(sig_check);
    sig_check->add_option("--sig", opt.sig, "signature, e.g. 0:2,3,7 or 2:-");
    leaf(sig_check, "signature-check");
    auto* sig_key = signature->add_subcommand("keylemma", "unified inequality check");
    add_common(sig_key);
    sig_key->add_option("--sig", opt.sig, "signature");
    leaf(sig_key, "signature-keylemma");

    auto* epi = app.add_subcommand("epi", "surface-kernel epimorphism search");
    epi->require_subcommand(1);
    auto* epi_find = epi->add_subcommand("find", "seeded witness search");
    add_common(epi_find);
    epi_find->add_option("--sig", opt.sig, "signature");
    epi_find->add_option("--budget", opt.budget, "sample budget");
    epi_find->add_option("--seed", opt.seed, "random seed");
    leaf(epi_find, "epi-find");
    auto* epi_verify = epi->add_subcommand("verify", "verify a witness JSON read from stdin");
    add_common(epi_verify, false);
    leaf(epi_verify, "epi-verify");

    auto* growth = app.add_subcommand("growth", "growth tables and series");
    growth->require_subcommand(1);
    auto* g_cayley = growth->add_subcommand("cayley", "BFS growth with the classical generators");
    add_common(g_cayley);
    g_cayley->add_option("--nmax", opt.nmax, "maximum radius");
    leaf(g_cayley, "growth-cayley");
    auto* g_series = growth->add_subcommand("series", "polygon growth series");
    add_common(g_series, false);
    g_series->add_option("--polygon-n", opt.polygon_n, "polygon genus");
    g_series->add_option("--variant", opt.variant, "cone3 or smooth")
        ->check(CLI::IsMember({"cone3", "smooth"}));
    g_series->add_option("--terms", opt.terms, "number of coefficients");
    leaf(g_series, "growth-series");
    auto* g_compare = growth->add_subcommand("compare", "quotient vs Fuchsian growth");
    add_common(g_compare);
    g_compare->add_option("--sig", opt.sig, "signature (h:3 or h:-)");
    g_compare->add_option("--nmax", opt.nmax, "maximum radius");
    g_compare->add_option("--budget", opt.budget, "sample budget");
    g_compare->add_option("--seed", opt.seed, "random seed");
    leaf(g_compare, "growth-compare");

    auto* family = app.add_subcommand("family", "family growth sweeps");
    family->require_subcommand(1);
    auto* f_sweep = family->add_subcommand("sweep", "PSL2 family over a prime list");
    add_common(f_sweep, false);
    f_sweep->add_option("--p-list", opt.p_list, "comma-separated primes");
    f_sweep->add_option("--nmax", opt.nmax, "maximum radius");
    leaf(f_sweep, "family-sweep");

    auto* consistency = app.add_subcommand("consistency", "key-lemma consistency");
    consistency->require_subcommand(1);
    auto* c_report = consistency->add_subcommand("report", "agreement table over random signatures");
    add_common(c_report);
    c_report->add_option("--terms", opt.terms, "number of sampled signatures");
    c_report->add_option("--seed", opt.seed, "random seed");
    leaf(c_report, "consistency-report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    std::string cache_key = command;
    for (int i = 2; i < argc; ++i) cache_key += std::string(" ") + argv[i];

    try {
        return dispatch(command, opt, cache_key);
    } catch (const pslgrow::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
