#pragma once

// Export to flat and training-framework layouts with a case mapping and
// verbatim copies of the annotation provenance.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vids/core.hpp"

namespace vids {

enum class ExportLayout { Flat, Training };

std::string_view to_string(ExportLayout l);

struct ExportEntry {
    std::string case_id;
    std::string subject;
    std::string session;
    std::string modality;
    std::optional<std::string> split;   // training layout only
    std::string image_source;           // dataset-relative
    std::string image_target;           // export-relative
    std::optional<std::string> label_source;
    std::optional<std::string> label_target;
    std::vector<std::string> provenance;  // export-relative copies

    friend bool operator==(const ExportEntry&, const ExportEntry&) = default;
};

struct ExportManifest {
    ExportLayout layout = ExportLayout::Flat;
    std::string dataset;
    std::string task;
    std::vector<ExportEntry> entries;
};

void to_json(json& j, const ExportManifest& m);
void from_json(const json& j, ExportManifest& m);

/// images/case_NNNN.nii.gz, labels/case_NNNN.nii.gz, mapping.json and
/// vids-provenance/case_NNNN/. Source must pass POC validation.
ExportManifest export_flat(const std::filesystem::path& dataset_root, const std::filesystem::path& out_root);

/// imagesTr/labelsTr (train + val) and imagesTs (test) named <task>_NNNN_0000.nii.gz,
/// plus dataset.json, mapping.json and vids-provenance/. Source must pass Full validation.
ExportManifest export_training_layout(const std::filesystem::path& dataset_root, const std::filesystem::path& out_root,
                                      const std::string& task);

}  // namespace vids
