#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "geobi/geo.hpp"
#include "geobi/hierarchy.hpp"

namespace geobi::io {

/// A parsed CSV file: header row plus data rows. Fields follow common CSV
/// rules: comma separated, optional double-quote quoting, doubled quotes
/// inside quoted fields, UTF-8 passed through untouched.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column position by header name, if present.
    [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);  // throws IoFailure

/// Quotes a field if it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

struct CustomerRow {
    std::string id;
    std::string name;
    std::string address;  // empty when the file has none
    std::optional<geo::GeoPoint> point;
};

struct RejectedRow {
    std::size_t row_number;  // 1-based data row index
    std::string reason;
};

struct CustomerLoad {
    std::vector<CustomerRow> rows;
    std::vector<RejectedRow> rejects;
};

/// Column names to look for; all have conventional defaults.
struct CustomerFormatHints {
    std::string id_column = "id";
    std::string name_column = "name";
    std::string address_column = "address";
    std::string wkt_column = "wkt";
    std::string lon_column = "lon";
    std::string lat_column = "lat";
};

/// Loads `id,name,address,wkt` or `id,name,lon,lat` customer files. Rows
/// with malformed geometry, duplicate ids, or neither an address nor a
/// position are reported as rejects, not errors.
///
/// Throws MissingHeader (no usable header) and EmptyFile (no data rows).
CustomerLoad load_customers(const std::filesystem::path& path,
                            const CustomerFormatHints& hints = {});

/// The row's point, geocoding the address when no coordinates were given.
geo::GeoPoint resolve_point(const CustomerRow& row);

/// Loads `emp_id,first_name,last_name,manager_id` rows; an empty manager_id
/// marks a root. Throws MissingHeader, EmptyFile, or Error on bad ids.
std::vector<hierarchy::HierarchyRecord> load_hierarchy(const std::filesystem::path& path);

}  // namespace geobi::io
