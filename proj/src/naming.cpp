#include "vids/naming.hpp"

#include <algorithm>
#include <cctype>

namespace vids {

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Reads an alphanumeric token at `pos` that must be terminated by `stop`.
std::variant<std::string, NameError> read_token(std::string_view s, std::size_t& pos, char stop,
                                                std::string_view what) {
    const auto start = pos;
    while (pos < s.size() && is_alnum(s[pos])) ++pos;
    if (pos == start) {
        if (pos < s.size() && s[pos] != stop)
            return NameError{pos, "invalid character '" + std::string(1, s[pos]) + "' in " + std::string(what)};
        return NameError{pos, "empty " + std::string(what)};
    }
    if (pos == s.size()) return NameError{pos, "unexpected end after " + std::string(what)};
    if (s[pos] != stop)
        return NameError{pos, "invalid character '" + std::string(1, s[pos]) + "' in " + std::string(what)};
    std::string token(s.substr(start, pos - start));
    ++pos;
    return token;
}

std::optional<NameError> expect(std::string_view s, std::size_t& pos, std::string_view literal) {
    if (s.substr(pos, literal.size()) != literal)
        return NameError{pos, "expected '" + std::string(literal) + "'"};
    pos += literal.size();
    return std::nullopt;
}

}  // namespace

MalformedName::MalformedName(std::string_view input, NameError e)
    : Error("malformed name '" + std::string(input) + "' at position " + std::to_string(e.position) + ": " +
            e.reason),
      error_(std::move(e)) {}

bool is_valid_id(std::string_view id) { return !id.empty() && std::all_of(id.begin(), id.end(), is_alnum); }

std::variant<EntityName, NameError> try_parse_entity_name(std::string_view s) {
    if (auto slash = s.find_first_of("/\\"); slash != std::string_view::npos)
        return NameError{slash, "directory components are not allowed"};

    EntityName e;
    std::size_t pos = 0;
    if (auto err = expect(s, pos, "sub-")) return *err;
    auto subject = read_token(s, pos, '_', "subject ID");
    if (auto* err = std::get_if<NameError>(&subject)) return *err;
    e.subject = std::get<std::string>(subject);

    if (auto err = expect(s, pos, "ses-")) return *err;
    auto session = read_token(s, pos, '_', "session ID");
    if (auto* err = std::get_if<NameError>(&session)) return *err;
    e.session = std::get<std::string>(session);

    auto modality = read_token(s, pos, '_', "modality");
    if (auto* err = std::get_if<NameError>(&modality)) return *err;
    e.modality = lower(std::get<std::string>(modality));

    const auto suffix_start = pos;
    const auto dot = s.find('.', pos);
    if (dot == std::string_view::npos) return NameError{s.size(), "missing extension"};
    const auto suffix = s.substr(suffix_start, dot - suffix_start);
    if (suffix == "img")
        e.suffix = Suffix::Img;
    else if (suffix == "seg")
        e.suffix = Suffix::Seg;
    else
        return NameError{suffix_start, "unknown suffix '" + std::string(suffix) + "' (expected img or seg)"};

    e.extension = std::string(s.substr(dot + 1));
    if (e.extension.empty() || e.extension.back() == '.')
        return NameError{s.size(), "empty extension component"};
    return e;
}

EntityName parse_entity_name(std::string_view filename) {
    auto r = try_parse_entity_name(filename);
    if (auto* err = std::get_if<NameError>(&r)) throw MalformedName(filename, std::move(*err));
    return std::get<EntityName>(std::move(r));
}

std::string render_entity_name(const EntityName& e) {
    std::string out = "sub-" + e.subject + "_ses-" + e.session + "_" + e.modality + "_";
    out += to_string(e.suffix);
    out += ".";
    out += e.extension;
    return out;
}

std::variant<std::string, NameError> try_parse_dir_component(std::string_view name, DirKind kind) {
    const std::string_view prefix = kind == DirKind::Subject ? "sub-" : "ses-";
    if (!name.starts_with(prefix)) return NameError{0, "expected '" + std::string(prefix) + "' prefix"};
    const auto id = name.substr(prefix.size());
    if (id.empty()) return NameError{prefix.size(), "empty ID"};
    for (std::size_t i = 0; i < id.size(); ++i)
        if (!is_alnum(id[i]))
            return NameError{prefix.size() + i, "invalid character '" + std::string(1, id[i]) + "' in ID"};
    return std::string(id);
}

std::string parse_dir_component(std::string_view name, DirKind kind) {
    auto r = try_parse_dir_component(name, kind);
    if (auto* err = std::get_if<NameError>(&r)) throw MalformedName(name, std::move(*err));
    return std::get<std::string>(std::move(r));
}

bool matches_directories(const EntityName& e, std::string_view subject, std::string_view session,
                         std::string_view modality) {
    return e.subject == subject && e.session == session && e.modality == lower(modality);
}

std::string_view strip_extension(std::string_view filename) {
    return filename.substr(0, filename.find('.'));
}

std::string sidecar_name(std::string_view filename) { return std::string(strip_extension(filename)) + ".json"; }

}  // namespace vids
