#include "geobi/index_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "geobi/errors.hpp"

namespace geobi::io {
namespace {

constexpr std::array<char, 4> kMagic{'G', 'B', 'I', 'X'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

bool get_u32(std::istream& in, std::uint32_t& v) {
    unsigned char buf[4];
    if (!in.read(reinterpret_cast<char*>(buf), 4)) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
    return true;
}

bool get_u64(std::istream& in, std::uint64_t& v) {
    unsigned char buf[8];
    if (!in.read(reinterpret_cast<char*>(buf), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return true;
}

bool get_f64(std::istream& in, double& v) {
    std::uint64_t bits = 0;
    if (!get_u64(in, bits)) return false;
    v = std::bit_cast<double>(bits);
    return true;
}

}  // namespace

void save_index(const spatial::GridIndex& index, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path.string() + " for writing");

    out.write(kMagic.data(), kMagic.size());
    put_u32(out, kVersion);
    const auto& config = index.config();
    for (spatial::Density d : config.levels) {
        const char byte = static_cast<char>(d);
        out.write(&byte, 1);
    }
    put_f64(out, config.bounds.lon_min);
    put_f64(out, config.bounds.lat_min);
    put_f64(out, config.bounds.lon_max);
    put_f64(out, config.bounds.lat_max);
    put_u64(out, index.size());
    for (const auto& [id, point] : index.entries()) {
        put_u64(out, id);
        put_f64(out, point.lon());
        put_f64(out, point.lat());
    }
    if (!out) throw IoFailure("failed writing " + path.string());
}

spatial::GridIndex load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path.string());

    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw MalformedIndexFile(path.string() + ": not a grid index file");
    }
    std::uint32_t version = 0;
    if (!get_u32(in, version)) throw MalformedIndexFile(path.string() + ": truncated header");
    if (version != kVersion) {
        throw MalformedIndexFile(path.string() + ": unsupported format version " +
                                 std::to_string(version));
    }

    spatial::GridConfig config;
    for (auto& level : config.levels) {
        char byte = 0;
        if (!in.read(&byte, 1)) throw MalformedIndexFile(path.string() + ": truncated header");
        const auto raw = static_cast<unsigned char>(byte);
        if (raw > 2) {
            throw MalformedIndexFile(path.string() + ": bad density byte " +
                                     std::to_string(raw));
        }
        level = static_cast<spatial::Density>(raw);
    }
    if (!get_f64(in, config.bounds.lon_min) || !get_f64(in, config.bounds.lat_min) ||
        !get_f64(in, config.bounds.lon_max) || !get_f64(in, config.bounds.lat_max)) {
        throw MalformedIndexFile(path.string() + ": truncated bounds");
    }

    std::uint64_t count = 0;
    if (!get_u64(in, count)) throw MalformedIndexFile(path.string() + ": truncated count");
    std::vector<spatial::GridIndex::Entry> entries;
    entries.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t id = 0;
        double lon = 0.0;
        double lat = 0.0;
        if (!get_u64(in, id) || !get_f64(in, lon) || !get_f64(in, lat)) {
            throw MalformedIndexFile(path.string() + ": truncated entries");
        }
        try {
            entries.emplace_back(id, geo::GeoPoint(lon, lat));
        } catch (const Error& e) {
            throw MalformedIndexFile(path.string() + ": entry " + std::to_string(i) + ": " +
                                     e.what());
        }
    }
    char extra = 0;
    if (in.read(&extra, 1)) {
        throw MalformedIndexFile(path.string() + ": trailing bytes after entries");
    }

    try {
        return spatial::build_index(std::move(entries), config);
    } catch (const Error& e) {
        throw MalformedIndexFile(path.string() + ": " + e.what());
    }
}

}  // namespace geobi::io
