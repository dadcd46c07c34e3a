#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geobi::testing {

/// Scratch location for files a test writes and reads back.
inline std::filesystem::path temp_file(std::string_view name) {
    const auto dir = std::filesystem::temp_directory_path() / "geobi-tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

inline std::filesystem::path write_text(std::string_view name, std::string_view content) {
    const auto path = temp_file(name);
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("test setup: cannot write " + path.string());
    return path;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("test setup: cannot read " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace geobi::testing
