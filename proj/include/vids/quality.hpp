#pragma once

// Inter-reader agreement: pairwise Dice, majority-vote consensus and the
// quality tiers written to quality/*.json.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vids/core.hpp"
#include "vids/volume.hpp"

namespace vids {

class QualityError : public Error {
public:
    enum class Kind { DimsMismatch, InvalidMaskSet, InvalidThreshold };
    QualityError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Exact agreement fraction, 0 < num/den <= 1.
struct Fraction {
    int num = 1;
    int den = 2;
};

/// 2|A∩B| / (|A|+|B|) over nonzero voxels. Both empty -> 1, one empty -> 0.
double dice(const LabelVolume& a, const LabelVolume& b);

struct ReaderMaskSet {
    std::string unit_id;
    std::vector<LabelVolume> masks;

    /// At least two masks sharing dims, all binary.
    void check() const;
};

struct PairDice {
    int i = 0;
    int j = 0;
    double dice = 0.0;

    friend bool operator==(const PairDice&, const PairDice&) = default;
};

/// All C(R,2) reader pairs in (i, j) lexicographic order.
std::vector<PairDice> pairwise_dice(const ReaderMaskSet& set);

/// Voxel is 1 iff (readers marking it) / R >= threshold.
LabelVolume consensus_mask(const ReaderMaskSet& set, Fraction threshold = {});

/// >= 0.90 excellent, >= 0.85 good, >= 0.75 acceptable, otherwise poor.
QualityTier quality_tier(double mean_dice);

struct UnitAgreement {
    std::string unit_id;
    std::vector<std::string> readers;
    std::vector<PairDice> pairs;
};

struct SubjectAgreement {
    std::string subject;
    std::vector<UnitAgreement> units;
};

struct QualityArtifacts {
    QualitySummary summary;
    json agreement;
};

QualityArtifacts build_quality_artifacts(std::span<const SubjectAgreement> subjects);
void write_quality_artifacts(const std::filesystem::path& dataset_root, const QualityArtifacts& artifacts);

/// Reader masks live in derivatives/readers/sub-X/ses-Y/<mod>/unit-NN/reader-MM.nii.gz.
std::filesystem::path reader_mask_path(const std::filesystem::path& dataset_root, const EntityName& image,
                                       int unit, int reader);

/// Recomputes agreement from every reader-mask unit and writes both quality files.
QualityArtifacts recompute_quality(const std::filesystem::path& dataset_root);

}  // namespace vids
