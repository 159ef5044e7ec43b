#pragma once

// Filename grammar: sub-<ID>_ses-<ID>_<modality>_<suffix>.<ext>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "vids/core.hpp"

namespace vids {

struct NameError {
    std::size_t position = 0;  // offset of the first violation
    std::string reason;
};

class MalformedName : public Error {
public:
    MalformedName(std::string_view input, NameError e);
    std::size_t position() const { return error_.position; }
    const std::string& reason() const { return error_.reason; }

private:
    NameError error_;
};

/// IDs are non-empty runs of [A-Za-z0-9].
bool is_valid_id(std::string_view id);

std::variant<EntityName, NameError> try_parse_entity_name(std::string_view filename);
EntityName parse_entity_name(std::string_view filename);
std::string render_entity_name(const EntityName& e);

enum class DirKind { Subject, Session };

std::variant<std::string, NameError> try_parse_dir_component(std::string_view name, DirKind kind);
std::string parse_dir_component(std::string_view name, DirKind kind);

/// True when the name's subject/session equal the directory IDs and the
/// modality matches case-insensitively.
bool matches_directories(const EntityName& e, std::string_view subject, std::string_view session,
                         std::string_view modality);

/// "a_img.nii.gz" -> "a_img"; everything from the first dot is dropped.
std::string_view strip_extension(std::string_view filename);

/// Same-stem sidecar name: "X_img.nii.gz" -> "X_img.json".
std::string sidecar_name(std::string_view filename);

}  // namespace vids
