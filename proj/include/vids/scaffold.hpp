#pragma once

// Synthetic VIDS datasets: POC skeletons, Full fixtures with multi-reader
// masks, and single-rule mutants for the validator test harness.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "vids/core.hpp"
#include "vids/volume.hpp"

namespace vids {

struct FixtureConfig {
    int n_subjects = 10;
    int readers_per_subject = 4;  // < 2 means imaging only
    Dims dims{16, 16, 16};
    Profile profile = Profile::Poc;
    std::uint64_t seed = 42;
    std::string modality = "ct";
    /// The last k subjects receive imaging only (no qualifying annotation).
    int unannotated_subjects = 0;
    /// Reader sphere perturbation scale; 0 gives identical reader masks.
    double reader_jitter = 1.0;

    /// Throws DatasetError(InvalidConfig).
    void check() const;
};

struct FixtureStats {
    int subjects = 0;
    int annotated_subjects = 0;
    int images = 0;
    int segmentations = 0;
    int reader_masks = 0;
    int pairs = 0;
    std::optional<double> mean_dice;
    std::optional<double> min_dice;
    std::optional<double> max_dice;
};

/// Zero-padded subject ID for the i-th subject (0-based): "001", "002", ...
std::string fixture_subject_id(int index);

/// Root metadata, one image + sidecar per subject, and one generator-truth
/// segmentation per annotated subject. Valid under POC by construction.
void scaffold_dataset(const std::filesystem::path& root, const FixtureConfig& config);

/// Reader masks, majority-vote consensus segmentations with provenance and,
/// for the Full profile, quality files, splits and a Full marker.
FixtureStats generate_fixture(const std::filesystem::path& root, const FixtureConfig& config);

/// Copies `src` to `dst` and applies the smallest edit that breaks `rule`.
/// Returns a human description of the edit.
std::string mutate_fixture(const std::filesystem::path& src, const RuleId& rule, const std::filesystem::path& dst);

}  // namespace vids
