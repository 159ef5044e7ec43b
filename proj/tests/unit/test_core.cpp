#include <doctest.h>

#include <vector>

#include "vids/core.hpp"

using namespace vids;

TEST_CASE("rule catalog lists the 21 rules in canonical order") {
    const std::vector<std::string> golden = {"S001", "S002", "S003", "S004", "S005", "S006", "I001",
                                             "I002", "I003", "I004", "A001", "A002", "A003", "A004",
                                             "A005", "Q001", "Q002", "Q003", "M001", "M002", "D001"};
    std::vector<std::string> ids;
    for (const auto& e : rule_catalog()) ids.push_back(e.id.str());
    CHECK(ids == golden);

    for (const auto& e : rule_catalog()) {
        const char c = e.id.str()[0];
        CHECK(e.full_only == (c == 'Q' || c == 'M'));
        CHECK(e.advisory == (e.id.str() == "I004" || e.id.str() == "D001"));
        CHECK_FALSE(e.check.empty());
    }
    CHECK(catalog_entry(RuleId::parse("Q002")).full_only);
    CHECK(catalog_entry(RuleId::parse("D001")).advisory);
}

TEST_CASE("RuleId only admits catalog members") {
    CHECK(RuleId::parse("s003").str() == "S003");
    CHECK(RuleId::parse("M002") == RuleId(RuleCategory::ML, 2));
    CHECK_THROWS_AS(RuleId::parse("S007"), Error);
    CHECK_THROWS_AS(RuleId::parse("X001"), Error);
    CHECK_THROWS_AS(RuleId::parse("S01"), Error);
    CHECK_THROWS_AS(RuleId(RuleCategory::Metadata, 2), Error);
    CHECK(RuleId::parse("S006") < RuleId::parse("I001"));
    CHECK(RuleId::parse("Q003") < RuleId::parse("M001"));
}

TEST_CASE("profile names") {
    CHECK(parse_profile("poc") == Profile::Poc);
    CHECK(parse_profile("FULL") == Profile::Full);
    CHECK(to_string(Profile::Full) == "full");
    CHECK_THROWS_AS(parse_profile("bogus"), Error);
}

TEST_CASE("report status is PASS iff nothing failed") {
    ValidationReport r;
    r.results.push_back({RuleId::parse("S001"), "Structure", RuleOutcome::Pass, "", {}});
    r.results.push_back({RuleId::parse("D001"), "Metadata", RuleOutcome::Warn, "", {}});
    r.results.push_back({RuleId::parse("Q001"), "Quality", RuleOutcome::Skip, "", {}});
    CHECK(r.status() == ReportStatus::Pass);
    CHECK(r.counts() == OutcomeCounts{1, 0, 1, 1});
    r.results.push_back({RuleId::parse("S002"), "Structure", RuleOutcome::Fail, "", {}});
    CHECK(r.status() == ReportStatus::Fail);

    const json j = r;
    CHECK(j["Summary"]["Status"] == "FAIL");
    CHECK(j["Results"].size() == 4);
    CHECK(j.get<ValidationReport>().results == r.results);
}

TEST_CASE("dataset description required fields") {
    json d = {{"Name", "x"}, {"VIDSVersion", "1.0"}, {"DatasetType", "clinical"},
              {"License", "CC-BY-4.0"}, {"Authors", {"a"}}, {"Modalities", {"ct"}}};
    CHECK(missing_description_fields(d).empty());
    d["License"] = "";
    d.erase("Authors");
    d["Modalities"] = json::array();
    CHECK(missing_description_fields(d) == std::vector<std::string>{"License", "Authors", "Modalities"});
    CHECK(missing_description_fields(json::array()).size() == 6);

    d["License"] = "MIT";
    d["Authors"] = {"a"};
    d["Modalities"] = {"ct"};
    d["Compliance"] = {{"EthicsApproval", "IRB-1"}, {"Deidentification", "DICOM PS3.15"}};
    d["Funding"] = "none";
    const auto parsed = d.get<DatasetDescription>();
    CHECK(parsed.license == "MIT");
    CHECK(parsed.compliance.has_value());
    CHECK(json(parsed) == d);
}

TEST_CASE("provenance minimum and round trip") {
    const json j = {{"Annotator", {{"ID", "R1"}, {"Credentials", "MD"}}},
                    {"AnnotationProcess", {{"Tool", "ITK-SNAP"}, {"Date", "2025-03-01"}, {"Method", "manual"}}},
                    {"QualityControl", {{"ReviewedBy", "R9"}, {"ReviewOutcome", "approved"}, {"Confidence", 0.9}}}};
    const auto p = j.get<Provenance>();
    CHECK(provenance_minimum_ok(p));
    CHECK(p.annotation_process.method == AnnotationMethod::Manual);
    CHECK(json(p) == j);

    auto thin = p;
    thin.annotator = {};
    CHECK_FALSE(provenance_minimum_ok(thin));
    thin.annotator.name = "Dr. A";
    thin.annotation_process = {};
    CHECK_FALSE(provenance_minimum_ok(thin));
    thin.annotation_process.tool = "3D Slicer";
    CHECK(provenance_minimum_ok(thin));

    json bad = j;
    bad["QualityControl"]["Confidence"] = 1.5;
    CHECK_THROWS_AS(bad.get<Provenance>(), SchemaError);
}

TEST_CASE("label map needs background") {
    CHECK(json{{"0", "background"}, {"1", "nodule"}}.get<LabelMap>().entries().size() == 2);
    CHECK_THROWS_AS(json({{"1", "nodule"}}).get<LabelMap>(), SchemaError);
    CHECK_THROWS_AS(json({{"0", "bg"}, {"x", "y"}}).get<LabelMap>(), SchemaError);
    CHECK_THROWS_AS(json({{"0", "bg"}, {"01", "a"}, {"1", "b"}}).get<LabelMap>(), SchemaError);
}

TEST_CASE("splits spec round trip") {
    SplitsSpec s;
    s.train = {"001", "002"};
    s.val = {"003"};
    s.test = {"004"};
    s.seed = 7;
    s.ratios = {0.5, 0.25, 0.25};
    s.method = "m";
    s.rationale = "r";
    CHECK(json(s).get<SplitsSpec>() == s);
}

TEST_CASE("scorecard accepts a bare list or an object") {
    const json entry = {{"Dimension", "readme"}, {"Category", "Structure"}, {"Status", "Partial"}};
    const auto a = json::array({entry}).get<Scorecard>();
    REQUIRE(a.entries.size() == 1);
    CHECK(a.entries[0].status == DimensionStatus::Partial);
    const auto b = json{{"Dataset", "X"}, {"Dimensions", {entry}}}.get<Scorecard>();
    CHECK(b.dataset == "X");
    CHECK(b.entries == a.entries);
    CHECK(json(b).get<Scorecard>() == b);
    CHECK_THROWS_AS(json::array({{{"Dimension", "readme"}, {"Category", "Bogus"}, {"Status", "absent"}}}).get<Scorecard>(),
                    SchemaError);
}
