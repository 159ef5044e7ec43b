#pragma once

// Shared domain model for VIDS v1.0 datasets: profiles, the closed rule
// catalog, validation reports, and the JSON sidecar records.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace vids {

using json = nlohmann::json;

inline constexpr std::string_view kVidsVersion = "1.0";

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a JSON document does not match the expected record shape.
class SchemaError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Profiles and rules

enum class Profile { Poc, Full };

std::string_view to_string(Profile p);
/// Accepts "poc" / "full" (case-insensitive).
Profile parse_profile(std::string_view text);

enum class RuleCategory { Structure, Imaging, Annotation, Quality, ML, Metadata };

char category_letter(RuleCategory c);
std::string_view category_label(RuleCategory c);

/// Identifier of one of the 21 catalog rules. Construction outside the
/// catalog throws, so every live RuleId is a catalog member.
class RuleId {
public:
    RuleId(RuleCategory category, int number);

    /// Parses "S001", "d001", ...
    static RuleId parse(std::string_view text);

    RuleCategory category() const { return category_; }
    int number() const { return number_; }
    std::string str() const;

    friend bool operator==(const RuleId&, const RuleId&) = default;
    friend std::strong_ordering operator<=>(const RuleId& a, const RuleId& b) {
        if (auto c = static_cast<int>(a.category_) <=> static_cast<int>(b.category_); c != 0)
            return c;
        return a.number_ <=> b.number_;
    }

private:
    RuleCategory category_;
    int number_;
};

struct RuleCatalogEntry {
    RuleId id;
    std::string_view check;
    bool full_only;
    bool advisory;

    std::string_view category_label() const { return vids::category_label(id.category()); }
};

/// The 21 rules in canonical order (S, I, A, Q, M, D; ascending number).
std::span<const RuleCatalogEntry> rule_catalog();
const RuleCatalogEntry& catalog_entry(const RuleId& id);

enum class RuleOutcome { Pass, Fail, Warn, Skip };

std::string_view to_string(RuleOutcome o);
RuleOutcome parse_outcome(std::string_view text);

struct RuleResult {
    RuleId id;
    std::string category_label;
    RuleOutcome outcome;
    std::string message;
    std::vector<std::string> evidence;

    friend bool operator==(const RuleResult&, const RuleResult&) = default;
};

struct OutcomeCounts {
    int pass = 0;
    int fail = 0;
    int warn = 0;
    int skip = 0;

    friend bool operator==(const OutcomeCounts&, const OutcomeCounts&) = default;
};

enum class ReportStatus { Pass, Fail };

std::string_view to_string(ReportStatus s);

/// Counts gathered during the scan, used for the human transcript.
struct DatasetStats {
    int subjects = 0;
    int sessions = 0;
    int images = 0;
    int image_sidecars = 0;
    int segmentations = 0;
    int annotation_sidecars = 0;

    friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

struct ValidationReport {
    std::string dataset;
    Profile profile = Profile::Poc;
    std::vector<RuleResult> results;
    std::vector<std::string> notes;
    DatasetStats stats;

    OutcomeCounts counts() const;
    /// PASS iff no result is FAIL.
    ReportStatus status() const;
    const RuleResult& result(const RuleId& id) const;

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

// ---------------------------------------------------------------------------
// Root metadata

struct VidsMarker {
    std::string vids_version{kVidsVersion};
    Profile profile = Profile::Poc;

    friend bool operator==(const VidsMarker&, const VidsMarker&) = default;
};

struct ComplianceInfo {
    std::optional<std::string> irb_approval;
    std::optional<std::string> deidentification_method;
    json extra = json::object();

    friend bool operator==(const ComplianceInfo&, const ComplianceInfo&) = default;
};

struct DatasetDescription {
    std::string name;
    std::string vids_version{kVidsVersion};
    std::string dataset_type;
    std::string license;
    std::vector<std::string> authors;
    std::vector<std::string> modalities;
    std::optional<ComplianceInfo> compliance;
    std::optional<json> custom_modalities;
    json extra = json::object();  // unknown keys, preserved verbatim

    friend bool operator==(const DatasetDescription&, const DatasetDescription&) = default;
};

inline constexpr std::array<std::string_view, 6> kRequiredDescriptionFields = {
    "Name", "VIDSVersion", "DatasetType", "License", "Authors", "Modalities"};

/// Required description fields that are missing, mistyped or empty.
std::vector<std::string> missing_description_fields(const json& doc);

// ---------------------------------------------------------------------------
// File naming

enum class Suffix { Img, Seg };

std::string_view to_string(Suffix s);

struct EntityName {
    std::string subject;
    std::string session;
    std::string modality;
    Suffix suffix = Suffix::Img;
    std::string extension;

    friend bool operator==(const EntityName&, const EntityName&) = default;
};

// ---------------------------------------------------------------------------
// Annotation sidecars

enum class AnnotationMethod { Manual, SemiAutomated, Automated };
enum class ReviewOutcome { Approved, Revisions, Rejected };

struct Annotator {
    std::optional<std::string> id;
    std::optional<std::string> name;
    std::optional<std::string> credentials;
    std::optional<std::string> specialty;
    std::optional<std::string> institution;

    friend bool operator==(const Annotator&, const Annotator&) = default;
};

struct AnnotationProcess {
    std::optional<std::string> tool;
    std::optional<std::string> version;
    std::optional<std::string> date;  // ISO-8601 calendar date
    std::optional<double> time_spent_minutes;
    std::optional<AnnotationMethod> method;

    friend bool operator==(const AnnotationProcess&, const AnnotationProcess&) = default;
};

struct QualityControl {
    std::string reviewed_by;
    std::optional<std::string> review_date;
    ReviewOutcome review_outcome = ReviewOutcome::Approved;
    std::optional<double> confidence;

    friend bool operator==(const QualityControl&, const QualityControl&) = default;
};

struct Provenance {
    Annotator annotator;
    AnnotationProcess annotation_process;
    std::optional<QualityControl> quality_control;
    json extra = json::object();

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// (annotator ID or Name) and (process Date or Tool), each non-empty.
bool provenance_minimum_ok(const Provenance& p);

/// Label value -> name. Key 0 must be present.
class LabelMap {
public:
    LabelMap() = default;
    explicit LabelMap(std::map<std::uint32_t, std::string> entries);

    const std::map<std::uint32_t, std::string>& entries() const { return entries_; }

    friend bool operator==(const LabelMap&, const LabelMap&) = default;

private:
    std::map<std::uint32_t, std::string> entries_;
};

struct AnnotationSidecar {
    std::string vids_version{kVidsVersion};
    std::string annotation_type;
    std::string source_image;
    LabelMap label_map;
    Provenance provenance;
    std::optional<json> annotations;  // Annotations[] with free-form Characteristics
    json extra = json::object();

    friend bool operator==(const AnnotationSidecar&, const AnnotationSidecar&) = default;
};

// ---------------------------------------------------------------------------
// ML splits, quality summary, scorecards

struct SplitsSpec {
    std::vector<std::string> train;
    std::vector<std::string> val;
    std::vector<std::string> test;
    std::uint64_t seed = 0;
    std::array<double, 3> ratios{0.70, 0.15, 0.15};
    std::string method;
    std::string rationale;

    friend bool operator==(const SplitsSpec&, const SplitsSpec&) = default;
};

enum class QualityTier { Excellent, Good, Acceptable, Poor, Unrated };

std::string_view to_string(QualityTier t);
QualityTier parse_tier(std::string_view text);

struct SubjectQuality {
    std::string subject;
    int nodule_count = 0;
    int pair_count = 0;
    std::optional<double> mean_pairwise_dice;
    QualityTier tier = QualityTier::Unrated;

    friend bool operator==(const SubjectQuality&, const SubjectQuality&) = default;
};

struct DatasetQuality {
    int pair_count = 0;
    std::optional<double> mean_dice;  // flat mean over all reader pairs
    std::optional<double> mean_of_subject_means;
    std::optional<double> min_dice;
    std::optional<double> max_dice;
    std::map<std::string, int> tier_counts;

    friend bool operator==(const DatasetQuality&, const DatasetQuality&) = default;
};

struct QualitySummary {
    std::vector<SubjectQuality> subjects;
    DatasetQuality dataset;

    friend bool operator==(const QualitySummary&, const QualitySummary&) = default;
};

enum class ScoreCategory { Structure, Imaging, Annotation, Provenance, Quality, MLReadiness };
enum class DimensionStatus { Satisfied, Partial, Absent };

inline constexpr std::array<ScoreCategory, 6> kScoreCategories = {
    ScoreCategory::Structure,  ScoreCategory::Imaging, ScoreCategory::Annotation,
    ScoreCategory::Provenance, ScoreCategory::Quality, ScoreCategory::MLReadiness};

std::string_view to_string(ScoreCategory c);
ScoreCategory parse_score_category(std::string_view text);
std::string_view to_string(DimensionStatus s);
DimensionStatus parse_dimension_status(std::string_view text);

struct ScorecardEntry {
    std::string dimension;
    ScoreCategory category;
    DimensionStatus status;

    friend bool operator==(const ScorecardEntry&, const ScorecardEntry&) = default;
};

struct Scorecard {
    std::string dataset;  // optional display name
    std::vector<ScorecardEntry> entries;

    friend bool operator==(const Scorecard&, const Scorecard&) = default;
};

// ---------------------------------------------------------------------------
// JSON mapping. Keys follow the sidecar convention (PascalCase).

void to_json(json& j, const VidsMarker& m);
void from_json(const json& j, VidsMarker& m);
void to_json(json& j, const DatasetDescription& d);
void from_json(const json& j, DatasetDescription& d);
void to_json(json& j, const Provenance& p);
void from_json(const json& j, Provenance& p);
void to_json(json& j, const LabelMap& m);
void from_json(const json& j, LabelMap& m);
void to_json(json& j, const AnnotationSidecar& s);
void from_json(const json& j, AnnotationSidecar& s);
void to_json(json& j, const SplitsSpec& s);
void from_json(const json& j, SplitsSpec& s);
void to_json(json& j, const QualitySummary& q);
void from_json(const json& j, QualitySummary& q);
void to_json(json& j, const Scorecard& c);
void from_json(const json& j, Scorecard& c);
void to_json(json& j, const ValidationReport& r);
void from_json(const json& j, ValidationReport& r);

}  // namespace vids
