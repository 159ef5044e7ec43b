#include <doctest.h>

#include "test_support.hpp"
#include "vids/naming.hpp"
#include "vids/quality.hpp"
#include "vids/scaffold.hpp"
#include "vids/validator.hpp"

using namespace vids;
using vids::testing::TempDir;
using vids::testing::tree_contents;

namespace fs = std::filesystem;

TEST_CASE("subject ids") {
    CHECK(fixture_subject_id(0) == "001");
    CHECK(fixture_subject_id(99) == "100");
}

TEST_CASE("skeleton layout") {
    TempDir tmp;
    FixtureConfig cfg;
    cfg.n_subjects = 3;
    cfg.unannotated_subjects = 1;
    scaffold_dataset(tmp / "ds", cfg);
    for (const char* f : {".vids", "dataset_description.json", "participants.json", "README.md", "CHANGES.md",
                          "sub-001/ses-baseline/ct/sub-001_ses-baseline_ct_img.nii.gz",
                          "sub-001/ses-baseline/ct/sub-001_ses-baseline_ct_img.json",
                          "derivatives/annotations/sub-002/ses-baseline/ct/sub-002_ses-baseline_ct_seg.nii.gz",
                          "derivatives/annotations/sub-002/ses-baseline/ct/sub-002_ses-baseline_ct_seg.json"})
        CHECK_MESSAGE(fs::exists(tmp / "ds" / f), f);
    CHECK_FALSE(fs::exists(tmp / "ds/derivatives/annotations/sub-003"));
    CHECK_FALSE(fs::exists(tmp / "ds/quality"));
    CHECK_FALSE(fs::exists(tmp / "ds/ml"));

    const auto report = validate(tmp / "ds");
    CHECK(report.profile == Profile::Poc);
    CHECK(report.status() == ReportStatus::Pass);
}

TEST_CASE("full fixture statistics") {
    TempDir tmp;
    FixtureConfig cfg;
    cfg.n_subjects = 5;
    cfg.readers_per_subject = 3;
    cfg.profile = Profile::Full;
    const auto stats = generate_fixture(tmp / "ds", cfg);
    CHECK(stats.subjects == 5);
    CHECK(stats.annotated_subjects == 5);
    CHECK(stats.segmentations == 5);
    CHECK(stats.reader_masks == 15);
    CHECK(stats.pairs == 15);
    REQUIRE(stats.mean_dice.has_value());
    CHECK(*stats.mean_dice > 0.5);
    CHECK(*stats.mean_dice < 1.0);
    CHECK(*stats.min_dice <= *stats.mean_dice);
    CHECK(*stats.max_dice >= *stats.mean_dice);

    const auto marker = json::parse(vids::testing::slurp(tmp / "ds/.vids"));
    CHECK(marker["Profile"] == "full");
    CHECK(validate(tmp / "ds").status() == ReportStatus::Pass);

    // The consensus on disk equals majority vote of the reader masks on disk.
    ReaderMaskSet set{"u", {}};
    const EntityName img{"002", "baseline", "ct", Suffix::Img, "nii.gz"};
    for (int r = 1; r <= 3; ++r) set.masks.push_back(read_volume(reader_mask_path(tmp / "ds", img, 1, r)));
    const auto seg =
        read_volume(tmp / "ds/derivatives/annotations/sub-002/ses-baseline/ct/sub-002_ses-baseline_ct_seg.nii.gz");
    CHECK(seg.voxels == consensus_mask(set).voxels);

    const auto sidecar = json::parse(vids::testing::slurp(
        tmp / "ds/derivatives/annotations/sub-002/ses-baseline/ct/sub-002_ses-baseline_ct_seg.json"));
    CHECK(sidecar["LabelMap"] == json{{"0", "background"}, {"1", "nodule"}});
    CHECK(sidecar["SourceImage"] == "sub-002_ses-baseline_ct_img.nii.gz");
    CHECK(sidecar["Provenance"].get<Provenance>().quality_control.has_value());
}

TEST_CASE("zero jitter gives perfect agreement") {
    TempDir tmp;
    FixtureConfig cfg;
    cfg.n_subjects = 2;
    cfg.reader_jitter = 0.0;
    const auto stats = generate_fixture(tmp / "ds", cfg);
    CHECK(*stats.mean_dice == 1.0);
    CHECK(*stats.min_dice == 1.0);
}

TEST_CASE("same seed, same bytes; different seed, different data") {
    TempDir tmp;
    FixtureConfig cfg;
    cfg.n_subjects = 3;
    cfg.profile = Profile::Full;
    generate_fixture(tmp / "a", cfg);
    generate_fixture(tmp / "b", cfg);
    CHECK(tree_contents(tmp / "a") == tree_contents(tmp / "b"));
    cfg.seed = 43;
    generate_fixture(tmp / "c", cfg);
    CHECK(tree_contents(tmp / "a") != tree_contents(tmp / "c"));
}

TEST_CASE("configuration and destination checks") {
    TempDir tmp;
    FixtureConfig cfg;
    cfg.n_subjects = 0;
    CHECK_THROWS_AS(scaffold_dataset(tmp / "x", cfg), DatasetError);
    cfg = {};
    cfg.dims = {3, 16, 16};
    CHECK_THROWS_AS(generate_fixture(tmp / "x", cfg), DatasetError);
    cfg = {};
    cfg.modality = "c-t";
    CHECK_THROWS_AS(generate_fixture(tmp / "x", cfg), DatasetError);
    cfg = {};
    cfg.unannotated_subjects = 11;
    CHECK_THROWS_AS(generate_fixture(tmp / "x", cfg), DatasetError);

    std::ofstream(tmp / "occupied") << "x";
    try {
        scaffold_dataset(tmp.path(), FixtureConfig{});
        FAIL("expected DestinationNotEmpty");
    } catch (const DatasetError& e) {
        CHECK(e.kind() == DatasetError::Kind::DestinationNotEmpty);
    }
}
