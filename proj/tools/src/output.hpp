#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace resona::cli {

using nlohmann::json;

// Column table, numbers printed with 17 significant digits.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string to_csv() const;
    json to_json() const;
};

std::string format_double(double x);

// temp file in the same directory, then rename
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Parses a CSV written by Table::to_csv.
Table read_csv(const std::string& text);

}  // namespace resona::cli
