#include <doctest.h>

#include <random>

#include "vids/naming.hpp"

using namespace vids;

TEST_CASE("parse a conforming image name") {
    const auto e = parse_entity_name("sub-001_ses-baseline_ct_img.nii.gz");
    CHECK(e.subject == "001");
    CHECK(e.session == "baseline");
    CHECK(e.modality == "ct");
    CHECK(e.suffix == Suffix::Img);
    CHECK(e.extension == "nii.gz");
    CHECK(render_entity_name(e) == "sub-001_ses-baseline_ct_img.nii.gz");
}

TEST_CASE("modality is lowercased and the extension starts at the first dot") {
    const auto e = parse_entity_name("sub-A1_ses-B2_MR_seg.json");
    CHECK(e.modality == "mr");
    CHECK(e.suffix == Suffix::Seg);
    CHECK(e.extension == "json");
}

TEST_CASE("malformed names report a position") {
    struct Case {
        const char* name;
        std::size_t position;
    };
    const Case cases[] = {
        {"sub_001_ses-1_ct_img.nii.gz", 0},  // wrong separator
        {"sub-_ses-1_ct_img.nii.gz", 4},     // empty subject
        {"sub-0-1_ses-1_ct_img.nii.gz", 5},  // non-alphanumeric subject
        {"sub-001_ses-1_ct_scan.nii.gz", 17},
        {"sub-001_ses-1_ct_img", 20},        // no extension
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        const auto r = try_parse_entity_name(c.name);
        REQUIRE(std::holds_alternative<NameError>(r));
        CHECK(std::get<NameError>(r).position == c.position);
        CHECK_THROWS_AS(parse_entity_name(c.name), MalformedName);
    }
}

TEST_CASE("directory components") {
    CHECK(parse_dir_component("sub-007", DirKind::Subject) == "007");
    CHECK(parse_dir_component("ses-baseline", DirKind::Session) == "baseline");
    CHECK_THROWS_AS(parse_dir_component("ses-baseline", DirKind::Subject), MalformedName);
    CHECK_THROWS_AS(parse_dir_component("sub-", DirKind::Subject), MalformedName);
    CHECK_THROWS_AS(parse_dir_component("sub-a_b", DirKind::Subject), MalformedName);
}

TEST_CASE("names must agree with their directories") {
    const auto e = parse_entity_name("sub-001_ses-1_CT_img.nii.gz");
    CHECK(matches_directories(e, "001", "1", "ct"));
    CHECK(matches_directories(e, "001", "1", "CT"));
    CHECK_FALSE(matches_directories(e, "002", "1", "ct"));
    CHECK_FALSE(matches_directories(e, "001", "2", "ct"));
    CHECK_FALSE(matches_directories(e, "001", "1", "mr"));
}

TEST_CASE("sidecar naming") {
    CHECK(strip_extension("a_img.nii.gz") == "a_img");
    CHECK(strip_extension("noext") == "noext");
    CHECK(sidecar_name("sub-1_ses-1_ct_img.nii.gz") == "sub-1_ses-1_ct_img.json");
}

TEST_CASE("render and parse are inverse on random valid names") {
    std::mt19937_64 rng(1234);
    const std::string alnum = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
    const std::string lower = "abcdefghijklmnopqrstuvwxyz0123456789";
    auto word = [&](const std::string& alphabet) {
        std::uniform_int_distribution<int> len(1, 8), pick(0, static_cast<int>(alphabet.size()) - 1);
        std::string s;
        for (int i = len(rng); i > 0; --i) s += alphabet[pick(rng)];
        return s;
    };
    const char* exts[] = {"nii.gz", "json", "nii"};
    for (int i = 0; i < 500; ++i) {
        EntityName e{word(alnum), word(alnum), word(lower), rng() % 2 ? Suffix::Img : Suffix::Seg, exts[rng() % 3]};
        const auto text = render_entity_name(e);
        CAPTURE(text);
        CHECK(parse_entity_name(text) == e);
        CHECK(render_entity_name(parse_entity_name(text)) == text);
    }
}
