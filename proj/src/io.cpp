#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace vids::detail {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("short write to " + path.string());
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const json& doc) { write_file(path, dump_json(doc)); }

std::optional<json> try_parse(std::string_view text, std::string& error) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        error = e.what();
        return std::nullopt;
    }
}

}  // namespace vids::detail
