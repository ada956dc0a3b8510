#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pslgrow/chartab.hpp"

using namespace pslgrow;

TEST_CASE("table shape at p=7") {
    auto table = CharacterTable::build(7);
    CHECK(table.classes().size() == 6);
    CHECK(table.characters().size() == 6);

    std::multiset<std::int64_t> degrees;
    for (const auto& c : table.characters()) degrees.insert(c.degree);
    CHECK(degrees == std::multiset<std::int64_t>{1, 3, 3, 6, 7, 8});

    std::int64_t degsq = 0;
    for (const auto& c : table.characters()) degsq += c.degree * c.degree;
    CHECK(degsq == 168);

    // trivial character row
    for (const auto& v : table.characters()[0].values) CHECK(v == std::complex<double>(1.0));
}

TEST_CASE("character and class counts are (p+5)/2") {
    for (std::int64_t p : {7, 11, 19, 23}) {
        auto table = CharacterTable::build(p);
        CHECK(table.characters().size() == std::size_t((p + 5) / 2));
        CHECK(table.classes().size() == std::size_t((p + 5) / 2));
        std::int64_t degsq = 0;
        for (const auto& c : table.characters()) degsq += c.degree * c.degree;
        CHECK(std::uint64_t(degsq) == psl2_order(p));
    }
}

TEST_CASE("frozen values") {
    auto table = CharacterTable::build(7);
    Psl2 t = make_psl2(1, 1, 0, 1, 7);
    CHECK(table.value(1, t) == std::complex<double>(0.0));      // degree-q character at a unipotent
    CHECK(table.value(3, psl2_identity(7)).real() == 6.0);      // degree q-1 at identity
    CHECK(table.value(3, t) == std::complex<double>(-1.0));     // degree q-1 at a unipotent
    CHECK(table.characters()[1].degree == 7);
    CHECK(table.characters()[2].degree == 8);
    CHECK(table.characters()[3].degree == 6);
}

TEST_CASE("orthogonality defect below tolerance") {
    for (std::int64_t p : {7, 23, 83}) { // 83 = largest case in the supported tolerance range
        auto table = CharacterTable::build(p);
        CHECK(table.orthogonality_defect() < CharacterTable::kTolerance);
    }
}

TEST_CASE("rejected table variants fail orthogonality; selection is recorded") {
    auto table = CharacterTable::build(11);
    bool found_selected = false;
    for (const auto& v : table.variant_diagnostics()) {
        if (v.selected) {
            found_selected = true;
            CHECK(v.defect < CharacterTable::kTolerance);
        } else {
            CHECK(v.defect > 1.0); // every rejected reading is badly off
        }
    }
    CHECK(found_selected);
}

TEST_CASE("defect helper on the trivial table") {
    CHECK(orthogonality_defect({1}, {{std::complex<double>(1.0)}}) == 0.0);
}

TEST_CASE("characters are class functions") {
    std::mt19937_64 rng(5);
    auto table = CharacterTable::build(11);
    auto elements = enumerate_group(11);
    for (int i = 0; i < 200; ++i) {
        Psl2 g = elements[rng() % elements.size()];
        Psl2 h = elements[rng() % elements.size()];
        Psl2 conj = group_op(group_op(h, g), inverse(h));
        for (std::size_t c = 0; c < table.characters().size(); ++c)
            CHECK(table.value(c, g) == table.value(c, conj));
    }
}

TEST_CASE("value at the inverse is the complex conjugate") {
    std::mt19937_64 rng(6);
    auto table = CharacterTable::build(19);
    auto elements = enumerate_group(19);
    for (int i = 0; i < 200; ++i) {
        Psl2 g = elements[rng() % elements.size()];
        for (std::size_t c = 0; c < table.characters().size(); ++c) {
            auto lhs = table.value(c, inverse(g));
            auto rhs = std::conj(table.value(c, g));
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("build rejects unsupported moduli") {
    try {
        CharacterTable::build(13);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedCongruence);
    }
    try {
        CharacterTable::build(3);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateTable);
    }
    CHECK_THROWS_AS(CharacterTable::build(15), Error);
    try {
        CharacterTable::build(9967); // beyond the supported table size
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ResourceBudget);
    }
}

TEST_CASE("json and csv exports") {
    auto table = CharacterTable::build(7);
    auto j = table.to_json();
    CHECK(j["p"] == 7);
    CHECK(j["classes"].size() == 6);
    CHECK(j["characters"].size() == 6);
    CHECK(j["characters"][0]["family"] == "U");
    CHECK(j["characters"][0]["values"][0][0] == 1.0);

    auto csv = table.to_csv();
    CHECK(csv.find("U,0,1") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7); // header + one row per character
}

TEST_CASE("out-of-range character index") {
    auto table = CharacterTable::build(7);
    CHECK_THROWS_AS(table.value(99, psl2_identity(7)), Error);
}
