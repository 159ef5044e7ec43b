#pragma once

// Internal helpers for strict JSON field access and small file I/O.

#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vids/core.hpp"

namespace vids::detail {

inline const json* find(const json& j, std::string_view key) {
    if (!j.is_object()) return nullptr;
    const auto it = j.find(std::string(key));
    return it == j.end() ? nullptr : &*it;
}

inline void require_object(const json& j, std::string_view ctx) {
    if (!j.is_object()) throw SchemaError(std::string(ctx) + " must be a JSON object");
}

inline const json& required(const json& j, std::string_view key, std::string_view ctx) {
    const auto* v = find(j, key);
    if (!v) throw SchemaError(std::string(ctx) + ": missing required field '" + std::string(key) + "'");
    return *v;
}

inline std::string req_string(const json& j, std::string_view key, std::string_view ctx) {
    const auto& v = required(j, key, ctx);
    if (!v.is_string())
        throw SchemaError(std::string(ctx) + ": field '" + std::string(key) + "' must be a string");
    return v.get<std::string>();
}

inline std::optional<std::string> opt_string(const json& j, std::string_view key, std::string_view ctx) {
    const auto* v = find(j, key);
    if (!v || v->is_null()) return std::nullopt;
    if (!v->is_string())
        throw SchemaError(std::string(ctx) + ": field '" + std::string(key) + "' must be a string");
    return v->get<std::string>();
}

inline std::optional<double> opt_number(const json& j, std::string_view key, std::string_view ctx) {
    const auto* v = find(j, key);
    if (!v || v->is_null()) return std::nullopt;
    if (!v->is_number())
        throw SchemaError(std::string(ctx) + ": field '" + std::string(key) + "' must be a number");
    return v->get<double>();
}

inline std::vector<std::string> string_list(const json& j, std::string_view key, std::string_view ctx,
                                            bool allow_empty = false) {
    const auto& v = required(j, key, ctx);
    if (!v.is_array())
        throw SchemaError(std::string(ctx) + ": field '" + std::string(key) + "' must be an array");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string())
            throw SchemaError(std::string(ctx) + ": '" + std::string(key) + "' entries must be strings");
        out.push_back(e.get<std::string>());
    }
    if (!allow_empty && out.empty())
        throw SchemaError(std::string(ctx) + ": field '" + std::string(key) + "' must not be empty");
    return out;
}

inline json without(const json& j, std::initializer_list<std::string_view> keys) {
    json rest = json::object();
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (auto key : keys) known = known || k == key;
        if (!known) rest[k] = v;
    }
    return rest;
}

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);
/// Pretty-printed with two-space indent and a trailing newline.
void write_json(const std::filesystem::path& path, const json& doc);
std::string dump_json(const json& doc);

/// Parse without throwing; on failure returns nullopt and fills `error`.
std::optional<json> try_parse(std::string_view text, std::string& error);

}  // namespace vids::detail
