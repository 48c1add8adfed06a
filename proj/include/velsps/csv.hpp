#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace velsps {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
    std::string str() const;
};

// Shortest round-trip-safe text for a double ("nan" / "inf" for non-finite values).
std::string format_number(double x);

// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace velsps
