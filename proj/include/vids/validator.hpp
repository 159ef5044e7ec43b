#pragma once

// Dataset scanning and the 21-rule validation pass.
//
// scan_dataset() takes a snapshot of the tree (parsing every JSON artifact
// and applying the naming grammar, recording failures instead of aborting);
// evaluate() is a pure function of that snapshot.

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vids/core.hpp"

namespace vids {

class DatasetError : public Error {
public:
    enum class Kind {
        RootNotFound,
        RootNotDirectory,
        DestinationNotEmpty,
        InvalidConfig,
        UnknownRule,
        ValidationRequired,
        MissingSplits,
        IoFailure,
    };

    DatasetError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// A JSON artifact as found on disk. Paths are dataset-relative with '/'.
struct JsonDocument {
    std::string path;
    bool present = false;
    std::optional<json> value;
    std::string error;

    bool parsed() const { return value.has_value(); }
};

struct NamingIssue {
    std::string path;
    std::string reason;
};

struct ImageEntry {
    std::string path;
    std::optional<EntityName> name;
    JsonDocument sidecar;
};

struct ModalityEntry {
    std::string modality;
    std::vector<ImageEntry> images;
};

struct SessionEntry {
    std::string id;
    std::vector<ModalityEntry> modalities;
};

struct SubjectEntry {
    std::string id;
    std::vector<SessionEntry> sessions;
};

struct SegmentationEntry {
    std::string path;
    JsonDocument sidecar;
};

enum class ParticipantsFormat { None, Json, Tsv };

struct ParticipantsInfo {
    ParticipantsFormat format = ParticipantsFormat::None;
    bool valid = false;
    std::string path;
    std::string error;
    std::vector<std::string> subject_ids;  // "sub-" prefix stripped
};

struct DatasetIndex {
    std::filesystem::path root;

    JsonDocument marker;
    std::optional<VidsMarker> marker_value;
    std::string marker_error;

    JsonDocument description;
    ParticipantsInfo participants;
    bool has_readme = false;  // present and not blank
    bool has_changes = false;

    std::vector<SubjectEntry> subjects;
    std::set<std::string> image_paths;

    bool has_annotations_dir = false;
    std::vector<SegmentationEntry> segmentations;
    std::vector<JsonDocument> annotation_sidecars;

    bool has_quality_dir = false;
    JsonDocument quality_summary;
    JsonDocument annotation_agreement;

    bool has_ml_dir = false;
    JsonDocument splits;

    std::vector<NamingIssue> naming_issues;
    std::vector<std::string> notes;

    DatasetStats stats() const;
};

/// Throws DatasetError(RootNotFound | RootNotDirectory).
DatasetIndex scan_dataset(const std::filesystem::path& root);

/// Runs all 21 rules against a snapshot under a fixed profile.
ValidationReport evaluate(const DatasetIndex& index, Profile profile);

/// Profile precedence: override, then the .vids marker, then POC (noted as a warning).
ValidationReport validate(const std::filesystem::path& root, std::optional<Profile> profile_override = std::nullopt);

enum class ReportFormat { Human, Json };

std::string render_report(const ValidationReport& report, ReportFormat format);

}  // namespace vids
