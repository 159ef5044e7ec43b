#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "vids/scorer.hpp"

using namespace vids;
using C = ScoreCategory;

namespace {

const std::string kCards = VIDS_SCORECARD_DIR;

Scorecard card(const std::string& name) { return load_scorecard(kCards + "/" + name + ".json"); }

std::vector<Scorecard> table_cards() { return {card("lidc-idri"), card("brats"), card("chexpert"), card("msd")}; }

}  // namespace

TEST_CASE("dimension catalog") {
    CHECK(dimension_catalog().size() == 22);
    CHECK(category_size(C::Structure) == 6);
    CHECK(category_size(C::Imaging) == 3);
    CHECK(category_size(C::Annotation) == 4);
    CHECK(category_size(C::Provenance) == 5);
    CHECK(category_size(C::Quality) == 2);
    CHECK(category_size(C::MLReadiness) == 2);
}

TEST_CASE("rounding") {
    CHECK(round_half_up(1, 2) == 1);
    CHECK(round_half_up(3, 2) == 2);
    CHECK(round_half_up(600, 22) == 27);    // 27.27
    CHECK(round_half_up(1500, 200) == 8);   // 7.5
    CHECK(round_half_up(1499, 200) == 7);
}

TEST_CASE("shipped scorecards score to their known totals") {
    struct Row {
        const char* file;
        std::array<int, 6> halves;  // Structure..MLReadiness in half-points
        int total_halves;
        int percent;
    };
    const Row rows[] = {
        {"lidc-idri", {3, 2, 3, 2, 2, 0}, 12, 27},
        {"brats", {4, 4, 4, 1, 2, 2}, 17, 39},
        {"chexpert", {3, 2, 2, 0, 0, 2}, 9, 20},
        {"msd", {3, 4, 4, 0, 0, 2}, 13, 30},
        {"vids-native", {12, 6, 8, 10, 4, 4}, 44, 100},
    };
    for (const auto& row : rows) {
        CAPTURE(row.file);
        const auto r = score(card(row.file));
        for (std::size_t i = 0; i < kScoreCategories.size(); ++i)
            CHECK(r.per_category.at(kScoreCategories[i]).value == row.halves[i]);
        CHECK(r.total.value == row.total_halves);
        CHECK(r.percent == row.percent);
    }
}

TEST_CASE("category averages over the four public-dataset cards") {
    const auto cards = table_cards();
    const auto avg = category_averages(cards);
    CHECK(avg.at(C::Structure) == 27);
    CHECK(avg.at(C::Imaging) == 50);
    CHECK(avg.at(C::Annotation) == 41);
    CHECK(avg.at(C::Provenance) == 8);
    CHECK(avg.at(C::Quality) == 25);
    CHECK(avg.at(C::MLReadiness) == 38);

    const auto none = category_averages(std::vector<Scorecard>{uniform_scorecard(DimensionStatus::Absent)});
    for (const auto& [c, pct] : none) CHECK(pct == 0);
    CHECK_THROWS_AS(category_averages(std::vector<Scorecard>{}), ScoreError);
}

TEST_CASE("total is the sum of categories and upgrades never lower the percent") {
    std::mt19937_64 rng(17);
    const DimensionStatus order[] = {DimensionStatus::Absent, DimensionStatus::Partial, DimensionStatus::Satisfied};
    for (int trial = 0; trial < 200; ++trial) {
        auto c = uniform_scorecard(DimensionStatus::Absent);
        for (auto& e : c.entries) e.status = order[rng() % 3];
        const auto r = score(c);
        int sum = 0;
        for (const auto& [cat, h] : r.per_category) sum += h.value;
        CHECK(sum == r.total.value);

        auto up = c;
        auto& e = up.entries[rng() % up.entries.size()];
        if (e.status == DimensionStatus::Absent) e.status = DimensionStatus::Partial;
        else e.status = DimensionStatus::Satisfied;
        CHECK(score(up).percent >= r.percent);
    }
}

TEST_CASE("malformed scorecards") {
    auto c = uniform_scorecard(DimensionStatus::Partial);
    c.entries.pop_back();
    CHECK_THROWS_AS(score(c), ScoreError);

    c = uniform_scorecard(DimensionStatus::Partial);
    c.entries[0].dimension = "made-up";
    try {
        score(c);
        FAIL("expected UnknownDimension");
    } catch (const ScoreError& e) {
        CHECK(e.kind() == ScoreError::Kind::UnknownDimension);
    }

    c = uniform_scorecard(DimensionStatus::Partial);
    c.entries[1].dimension = c.entries[0].dimension;
    CHECK_THROWS_AS(score(c), ScoreError);

    vids::testing::TempDir tmp;
    std::ofstream(tmp / "bad.json")
        << R"([{"Dimension": "readme", "Category": "Nonsense", "Status": "absent"}])";
    try {
        load_scorecard(tmp / "bad.json");
        FAIL("expected UnknownCategory");
    } catch (const ScoreError& e) {
        CHECK(e.kind() == ScoreError::Kind::UnknownCategory);
    }
}

TEST_CASE("json row") {
    const auto j = score_to_json(score(card("lidc-idri")));
    CHECK(j["Total"] == 6.0);
    CHECK(j["Percent"] == 27);
    CHECK(j["Categories"]["Structure"]["Score"] == 1.5);
    CHECK(j["Dataset"] == "LIDC-IDRI");
}
