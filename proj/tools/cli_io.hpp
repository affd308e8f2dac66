#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

namespace nlveh::cli {

/// Writes to `<path>.partial` and renames over `path`; "-" means stdout.
void write_output(const std::filesystem::path& path, std::string_view content);

nlohmann::json read_json(const std::filesystem::path& path);

/// Shortest round-trip decimal form.
std::string num(double v);

template <typename... Ts>
std::string csv_row(const Ts&... values) {
    std::string row;
    ((row += num(values), row += ','), ...);
    row.back() = '\n';
    return row;
}

}  // namespace nlveh::cli
