#include "cli_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iostream>

#include "nlveh/errors.hpp"

namespace nlveh::cli {

void write_output(const std::filesystem::path& path, std::string_view content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + path.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw ConfigError("write failed for '" + path.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid JSON in '" + path.string() + "': " + e.what());
    }
}

std::string num(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

}  // namespace nlveh::cli
