#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "idealdens/family_io.hpp"

using namespace idealdens;
using nlohmann::json;

TEST_CASE("explicit families") {
    const auto a = parse_family(json::parse(R"j({"field": "Q", "kind": "explicit", "members": [6, 4]})j"));
    const auto& m = std::get<AFamily::Explicit>(a.source()).members;
    REQUIRE(m.size() == 2);
    CHECK(m[0].norm() == 4);
    CHECK(m[1].norm() == 6);

    const auto g = parse_family(
        json::parse(R"j({"field": "Q(sqrt -1)", "kind": "explicit", "members": [[[2, 0, 1]], [[5, 1, 2]], 3]})j"));
    const auto& gm = std::get<AFamily::Explicit>(g.source()).members;
    REQUIRE(gm.size() == 3);
    CHECK(gm[0].norm() == 2);
    CHECK(gm[1].norm() == 9);
    CHECK(gm[2].norm() == 25);
    CHECK(gm[2].factors()[0].prime.conjugate_index == 1);
}

TEST_CASE("rule families") {
    const auto a = parse_family(json::parse(R"j({"field": "Q", "kind": "prime_powers", "l": 3})j"));
    CHECK(std::get<AFamily::PrimePowers>(a.source()).l == 3);
    const auto b = parse_family(json::parse(R"j({"field": "Q", "kind": "norm_intervals", "intervals": [[30, 40], [11, 20], [15, 25]]})j"));
    const auto& ivs = std::get<AFamily::NormIntervals>(b.source()).intervals;
    REQUIRE(ivs.size() == 2);
    CHECK(ivs[0].lo == 11);
    CHECK(ivs[0].hi == 25);
    CHECK(ivs[1].lo == 30);
}

TEST_CASE("malformed documents") {
    const char* bad[] = {
        R"j([1, 2])j",
        R"j({"kind": "explicit", "members": [2]})j",
        R"j({"field": "Q", "members": [2]})j",
        R"j({"field": "Q", "kind": "mystery"})j",
        R"j({"field": "Q", "kind": "explicit"})j",
        R"j({"field": "Q", "kind": "explicit", "members": [0]})j",
        R"j({"field": "Q", "kind": "explicit", "members": [-3]})j",
        R"j({"field": "Q", "kind": "explicit", "members": ["x"]})j",
        R"j({"field": "Q(sqrt -1)", "kind": "explicit", "members": [[[3, 1, 1]]]})j",
        R"j({"field": "Q(sqrt -1)", "kind": "explicit", "members": [[[2, 0]]]})j",
        R"j({"field": "Q", "kind": "prime_powers", "l": 1})j",
        R"j({"field": "Q", "kind": "prime_powers"})j",
        R"j({"field": "Q", "kind": "norm_intervals", "intervals": [[5, 4]]})j",
        R"j({"field": "Q", "kind": "norm_intervals", "intervals": [[5]]})j",
    };
    for (const char* doc : bad) {
        INFO(doc);
        CHECK_THROWS_AS(parse_family(json::parse(doc)), FamilyFormatError);
    }
    CHECK_THROWS_AS(parse_family(json::parse(R"j({"field": "Q(sqrt 12)", "kind": "explicit", "members": [2]})j")),
                    NotSquarefree);
    CHECK_THROWS_AS(parse_family(json::parse(R"j({"field": "Q", "kind": "explicit", "members": [2]})j"),
                                 make_quadratic_field(-1)),
                    FieldMismatch);
}

TEST_CASE("files and round trips") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = (dir / "idealdens_family_test.json").string();
    {
        std::ofstream out(path);
        out << R"j({"field": "Q(sqrt -1)", "kind": "explicit", "members": [2, [[5, 0, 1], [13, 1, 1]]]})j";
    }
    const auto a = load_family_file(path, make_quadratic_field(-1));
    const auto again = parse_family(json::parse(family_to_json(a).dump()));
    CHECK(std::get<AFamily::Explicit>(again.source()).members == std::get<AFamily::Explicit>(a.source()).members);
    {
        std::ofstream out(path);
        out << "{not json";
    }
    CHECK_THROWS_AS(load_family_file(path), FamilyFormatError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_family_file(path), FamilyFormatError);

    for (const char* doc : {R"j({"field": "Q", "kind": "prime_powers", "l": 2})j",
                            R"j({"field": "Q", "kind": "norm_intervals", "intervals": [[11, 20]]})j"}) {
        const auto f = parse_family(json::parse(doc));
        CHECK(json::parse(family_to_json(f).dump()) == json::parse(doc));
    }
}

TEST_CASE("prime labels") {
    const auto k = make_quadratic_field(-1);
    CHECK(prime_by_label(k, 5, 0).root == 2);
    CHECK(prime_by_label(k, 5, 1).conjugate_index == 1);
    CHECK(prime_by_label(k, 3, 0).norm == 9);
    CHECK_THROWS_AS(prime_by_label(k, 3, 1), FamilyFormatError);
}
