#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "pslgrow/psl2.hpp"

using namespace pslgrow;

namespace {

Psl2 random_element(std::mt19937_64& rng, const std::vector<Psl2>& elements) {
    return elements[rng() % elements.size()];
}

} // namespace

TEST_CASE("products and inverses") {
    Psl2 t = make_psl2(1, 1, 0, 1, 7);
    CHECK(group_op(t, t) == make_psl2(1, 2, 0, 1, 7));
    CHECK(group_op(t, inverse(t)) == psl2_identity(7));

    Psl2 s = make_psl2(0, -1, 1, 0, 7);
    CHECK(group_op(s, t) == make_psl2(0, -1, 1, 1, 7));
    CHECK(group_op(s, inverse(s)) == psl2_identity(7));
}

TEST_CASE("group laws on random triples") {
    std::mt19937_64 rng(31);
    auto elements = enumerate_group(11);
    for (int i = 0; i < 500; ++i) {
        Psl2 g = random_element(rng, elements);
        Psl2 h = random_element(rng, elements);
        Psl2 k = random_element(rng, elements);
        CHECK(group_op(group_op(g, h), k) == group_op(g, group_op(h, k)));
        CHECK(inverse(group_op(g, h)) == group_op(inverse(h), inverse(g)));
        CHECK(inverse(inverse(g)) == g);
    }
}

TEST_CASE("modulus mismatch is rejected") {
    try {
        group_op(psl2_identity(7), psl2_identity(11));
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FieldMismatch);
    }
}

TEST_CASE("canonical representative: idempotent, exactly one of +-m") {
    std::mt19937_64 rng(7);
    for (std::int64_t p : {7, 23}) {
        auto elements = enumerate_group(std::uint32_t(p));
        for (int i = 0; i < 300; ++i) {
            Psl2 g = random_element(rng, elements);
            CHECK(make_psl2(g.a, g.b, g.c, g.d, p) == g);
            // the negated matrix canonicalizes back to the same representative
            CHECK(make_psl2(p - g.a, p - g.b, p - g.c, p - g.d, p) == g);
            CHECK(is_canonical(g.a, g.b, g.c, g.d, p) !=
                  is_canonical((p - g.a) % p, (p - g.b) % p, (p - g.c) % p, (p - g.d) % p, p));
        }
    }
}

TEST_CASE("element orders against brute force") {
    CHECK(element_order(psl2_identity(7)) == 1);
    CHECK(element_order(make_psl2(1, 1, 0, 1, 7)) == 7);
    CHECK(element_order(make_psl2(0, -1, 1, 0, 7)) == 2);

    std::mt19937_64 rng(11);
    for (std::int64_t p : {7, 11, 19}) {
        auto elements = enumerate_group(std::uint32_t(p));
        for (int i = 0; i < 200; ++i) {
            Psl2 g = random_element(rng, elements);
            std::int64_t order = element_order(g);
            CHECK(order == oracles::element_order_bruteforce(g));
            bool divides = p % order == 0 || ((p - 1) / 2) % order == 0 || ((p + 1) / 2) % order == 0;
            CHECK(divides);
        }
    }
}

TEST_CASE("enumeration has order p(p^2-1)/2") {
    CHECK(enumerate_group(3).size() == 12);
    CHECK(enumerate_group(7).size() == 168);
    CHECK(enumerate_group(11).size() == 660);
    for (std::uint32_t p : {7u, 11u}) {
        auto elements = enumerate_group(p);
        std::set<std::uint64_t> keys;
        for (const auto& g : elements) {
            CHECK(make_psl2(g.a, g.b, g.c, g.d, p) == g);
            keys.insert(pack(g));
        }
        CHECK(keys.size() == elements.size());
    }
}

TEST_CASE("enumeration budget") {
    try {
        enumerate_group(11, 100);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ResourceBudget);
    }
}

TEST_CASE("conjugacy classification: frozen examples") {
    auto id = classify_conjugacy(psl2_identity(7));
    CHECK(id.kind == ClassKind::Identity);
    CHECK(id.size == 1);

    auto uni = classify_conjugacy(make_psl2(1, 1, 0, 1, 7));
    CHECK(uni.kind == ClassKind::UnipotentOne);
    CHECK(uni.size == 24);

    auto split = classify_conjugacy(make_psl2(2, 0, 0, 4, 7));
    CHECK(split.kind == ClassKind::Split);
    CHECK(split.param_x == 2);
    CHECK(split.size == 56);

    auto two = classify_conjugacy(make_psl2(0, -1, 1, 0, 7));
    CHECK(two.kind == ClassKind::OrderTwo);
    CHECK(two.size == 21);
}

TEST_CASE("classification rejects p = 1 (mod 4)") {
    try {
        classify_conjugacy(psl2_identity(13));
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedCongruence);
    }
}

TEST_CASE("class equation and label sizes match the census") {
    for (std::uint32_t p : {7u, 11u, 19u, 23u}) {
        auto elements = enumerate_group(p);
        std::map<std::tuple<ClassKind, std::int64_t, std::int64_t>, std::uint64_t> counts;
        std::map<std::tuple<ClassKind, std::int64_t, std::int64_t>, std::uint64_t> sizes;
        for (const auto& g : elements) {
            auto label = classify_conjugacy(g);
            ++counts[{label.kind, label.param_x, label.param_y}];
            sizes[{label.kind, label.param_x, label.param_y}] = label.size;
        }
        CHECK(counts.size() == std::size_t((p + 5) / 2));
        std::uint64_t total = 0;
        for (auto& [key, n] : counts) {
            CHECK(n == sizes[key]);
            total += n;
        }
        CHECK(total == psl2_order(p));
    }
}

TEST_CASE("classification is constant on conjugation orbits") {
    std::mt19937_64 rng(23);
    auto elements = enumerate_group(11);
    for (int i = 0; i < 1000; ++i) {
        Psl2 g = random_element(rng, elements);
        Psl2 h = random_element(rng, elements);
        Psl2 conj = group_op(group_op(h, g), inverse(h));
        CHECK(classify_conjugacy(conj) == classify_conjugacy(g));
    }
}

TEST_CASE("labels agree with the brute-force orbit partition") {
    for (std::uint32_t p : {7u, 11u}) {
        auto orbit = oracles::psl2_orbits(p);
        auto elements = enumerate_group(p);
        std::map<std::size_t, ConjClass> orbit_label;
        for (const auto& g : elements) {
            auto label = classify_conjugacy(g);
            auto [it, inserted] = orbit_label.emplace(orbit.at(pack(g)), label);
            CHECK(it->second == label);
        }
        std::set<std::size_t> distinct;
        for (auto& [key, id] : orbit) distinct.insert(id);
        CHECK(orbit_label.size() == distinct.size());
    }
}

TEST_CASE("SL2 brute-force class count is q+4") {
    CHECK(oracles::sl2_class_count(7) == 7 + 4);
    CHECK(oracles::sl2_class_count(11) == 11 + 4);
}

TEST_CASE("closure of standard generators") {
    CHECK(closure(7, {}).size() == 1);
    CHECK(closure(7, {make_psl2(1, 1, 0, 1, 7)}).size() == 7);
    Psl2 s = make_psl2(0, -1, 1, 0, 7), t = make_psl2(1, 1, 0, 1, 7);
    CHECK(closure(7, {s, t}).size() == 168);
    CHECK(generates_full_group({s, t}));
    CHECK_FALSE(generates_full_group({t}));
    try {
        closure(11, {make_psl2(0, -1, 1, 0, 11), make_psl2(1, 1, 0, 1, 11)}, 50);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ResourceBudget);
    }
}

TEST_CASE("element text format round trip") {
    Psl2 g = make_psl2(0, -1, 1, 1, 7);
    CHECK(to_string(g) == "[[0,1],[6,6]] mod 7");
    CHECK(parse_psl2(to_string(g)) == g);
    CHECK_THROWS_AS(parse_psl2("[[1,1],[0,2]] mod 7"), Error); // det != 1
    CHECK_THROWS_AS(parse_psl2("nonsense"), Error);
}
