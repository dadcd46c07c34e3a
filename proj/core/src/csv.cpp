#include "geobi/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "geobi/errors.hpp"
#include "geobi/geocode.hpp"

namespace geobi::io {
namespace {

enum class ParseState { FieldStart, Unquoted, Quoted, QuoteInQuoted };

std::vector<std::vector<std::string>> parse_records(std::istream& in) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    ParseState state = ParseState::FieldStart;
    bool any = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    char c = 0;
    while (in.get(c)) {
        any = true;
        if (c == '\r') continue;
        switch (state) {
            case ParseState::FieldStart:
                if (c == '"') {
                    state = ParseState::Quoted;
                } else if (c == ',') {
                    end_field();
                } else if (c == '\n') {
                    end_record();
                } else {
                    field.push_back(c);
                    state = ParseState::Unquoted;
                }
                break;
            case ParseState::Unquoted:
                if (c == ',') {
                    end_field();
                    state = ParseState::FieldStart;
                } else if (c == '\n') {
                    end_record();
                    state = ParseState::FieldStart;
                } else {
                    field.push_back(c);
                }
                break;
            case ParseState::Quoted:
                if (c == '"') {
                    state = ParseState::QuoteInQuoted;
                } else {
                    field.push_back(c);
                }
                break;
            case ParseState::QuoteInQuoted:
                if (c == '"') {
                    field.push_back('"');
                    state = ParseState::Quoted;
                } else if (c == ',') {
                    end_field();
                    state = ParseState::FieldStart;
                } else if (c == '\n') {
                    end_record();
                    state = ParseState::FieldStart;
                } else {
                    field.push_back(c);
                    state = ParseState::Unquoted;
                }
                break;
        }
    }
    if (state != ParseState::FieldStart || !field.empty() || !record.empty()) {
        end_record();
    } else if (any && records.empty()) {
        end_record();
    }
    return records;
}

std::string trimmed(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string lowered(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<double> parse_double(std::string_view text) {
    const std::string t = trimmed(text);
    double value = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || t.empty()) return std::nullopt;
    return value;
}

std::optional<std::uint64_t> parse_u64(std::string_view text) {
    const std::string t = trimmed(text);
    std::uint64_t value = 0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || t.empty()) return std::nullopt;
    return value;
}

}  // namespace

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
    const std::string want = lowered(trimmed(name));
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (lowered(trimmed(header[i])) == want) return i;
    }
    return std::nullopt;
}

CsvTable read_csv(std::istream& in) {
    auto records = parse_records(in);
    if (records.empty()) throw MissingHeader("csv input has no header row");
    CsvTable table;
    table.header = std::move(records.front());
    table.rows.assign(std::make_move_iterator(records.begin() + 1),
                      std::make_move_iterator(records.end()));
    return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path.string());
    return read_csv(in);
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

CustomerLoad load_customers(const std::filesystem::path& path,
                            const CustomerFormatHints& hints) {
    const CsvTable table = read_csv_file(path);
    const auto id_col = table.column(hints.id_column);
    if (!id_col) {
        throw MissingHeader("customer file " + path.string() + " lacks an '" +
                            hints.id_column + "' column");
    }
    if (table.rows.empty()) {
        throw EmptyFile("customer file " + path.string() + " has no data rows");
    }
    const auto name_col = table.column(hints.name_column);
    const auto address_col = table.column(hints.address_column);
    const auto wkt_col = table.column(hints.wkt_column);
    const auto lon_col = table.column(hints.lon_column);
    const auto lat_col = table.column(hints.lat_column);
    const bool has_lonlat = lon_col && lat_col;
    if (!wkt_col && !has_lonlat && !address_col) {
        throw MissingHeader("customer file " + path.string() +
                            " has neither position nor address columns");
    }

    auto cell = [&](const std::vector<std::string>& row,
                    std::optional<std::size_t> col) -> std::string {
        if (!col || *col >= row.size()) return {};
        return trimmed(row[*col]);
    };

    CustomerLoad load;
    std::unordered_set<std::string> seen_ids;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t row_number = i + 1;
        CustomerRow customer;
        customer.id = cell(row, id_col);
        customer.name = cell(row, name_col);
        customer.address = cell(row, address_col);
        if (customer.id.empty()) {
            load.rejects.push_back({row_number, "missing id"});
            continue;
        }
        if (!seen_ids.insert(customer.id).second) {
            load.rejects.push_back({row_number, "duplicate id '" + customer.id + "'"});
            continue;
        }

        const std::string wkt = cell(row, wkt_col);
        const std::string lon_text = cell(row, lon_col);
        const std::string lat_text = cell(row, lat_col);
        try {
            if (!wkt.empty()) {
                customer.point = geo::parse_wkt_point(wkt);
            } else if (!lon_text.empty() || !lat_text.empty()) {
                const auto lon = parse_double(lon_text);
                const auto lat = parse_double(lat_text);
                if (!lon || !lat) throw MalformedWkt("unparseable lon/lat pair");
                customer.point = geo::GeoPoint(*lon, *lat);
            }
        } catch (const Error& e) {
            load.rejects.push_back({row_number, e.what()});
            continue;
        }
        if (!customer.point && customer.address.empty()) {
            load.rejects.push_back({row_number, "no position and no address"});
            continue;
        }
        load.rows.push_back(std::move(customer));
    }
    return load;
}

geo::GeoPoint resolve_point(const CustomerRow& row) {
    if (row.point) return *row.point;
    return geocode(row.address);
}

std::vector<hierarchy::HierarchyRecord> load_hierarchy(const std::filesystem::path& path) {
    const CsvTable table = read_csv_file(path);
    const auto emp_col = table.column("emp_id");
    const auto first_col = table.column("first_name");
    const auto last_col = table.column("last_name");
    const auto mgr_col = table.column("manager_id");
    if (!emp_col || !mgr_col) {
        throw MissingHeader("hierarchy file " + path.string() +
                            " needs emp_id and manager_id columns");
    }
    if (table.rows.empty()) {
        throw EmptyFile("hierarchy file " + path.string() + " has no data rows");
    }

    auto cell = [&](const std::vector<std::string>& row,
                    std::optional<std::size_t> col) -> std::string {
        if (!col || *col >= row.size()) return {};
        return trimmed(row[*col]);
    };

    std::vector<hierarchy::HierarchyRecord> records;
    records.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        hierarchy::HierarchyRecord record;
        const std::string emp_text = cell(row, emp_col);
        const auto emp = parse_u64(emp_text);
        if (!emp) {
            std::ostringstream msg;
            msg << "hierarchy row " << (i + 1) << ": bad emp_id '" << emp_text << "'";
            throw Error(msg.str());
        }
        record.emp_id = *emp;
        record.first_name = cell(row, first_col);
        record.last_name = cell(row, last_col);
        const std::string mgr_text = cell(row, mgr_col);
        if (!mgr_text.empty()) {
            const auto mgr = parse_u64(mgr_text);
            if (!mgr) {
                std::ostringstream msg;
                msg << "hierarchy row " << (i + 1) << ": bad manager_id '" << mgr_text << "'";
                throw Error(msg.str());
            }
            record.manager_id = *mgr;
        }
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace geobi::io
