#include "flora/ingest.hpp"

#include <algorithm>
#include <unordered_map>

#include "flora/errors.hpp"
#include "flora/hash.hpp"
#include "flora/text.hpp"

namespace flora {

std::string image_id_for_uri(const std::string& uri) {
    return stable_hash128_hex(trim(uri));
}

std::vector<OccurrenceRecord> parse_occurrence_table(std::istream& in,
                                                     const TableColumnMap& columns,
                                                     Source default_source) {
    if (columns.id_column.empty() || columns.name_column.empty() ||
        columns.image_uri_column.empty()) {
        throw Error(ErrorCode::MissingColumn,
                    "column map must name id, name, and image_uri columns");
    }

    DelimitedReader reader(in, columns.delimiter);
    std::vector<std::string> header;
    if (!reader.next_row(header)) throw Error(ErrorCode::EmptyInput, "empty stream");

    auto find_col = [&header](const std::string& name, bool required) -> int {
        if (name.empty()) return -1;
        for (size_t i = 0; i < header.size(); ++i) {
            if (name_key(header[i]) == name_key(name)) return static_cast<int>(i);
        }
        if (required) throw Error(ErrorCode::MissingColumn, "column '" + name + "' not found");
        return -1;
    };

    const int id_col = find_col(columns.id_column, true);
    const int name_col = find_col(columns.name_column, true);
    const int uri_col = find_col(columns.image_uri_column, true);
    const int lat_col = find_col(columns.latitude_column, false);
    const int lon_col = find_col(columns.longitude_column, false);
    const int source_col = find_col(columns.source_column, false);

    auto field = [](const std::vector<std::string>& row, int col) -> std::string {
        if (col < 0 || static_cast<size_t>(col) >= row.size()) return "";
        return trim(row[col]);
    };

    std::vector<OccurrenceRecord> records;
    std::unordered_map<std::string, size_t> by_id;
    std::vector<std::string> row;
    while (reader.next_row(row)) {
        if (row.size() == 1 && trim(row[0]).empty()) continue;
        std::string id = field(row, id_col);
        if (id.empty()) continue;

        size_t index;
        auto it = by_id.find(id);
        if (it == by_id.end()) {
            OccurrenceRecord record;
            record.occurrence_id = id;
            record.raw_name = normalize_whitespace(field(row, name_col));
            record.source = default_source;
            if (source_col >= 0) {
                if (auto src = parse_source(field(row, source_col))) record.source = *src;
            }
            auto lat = parse_double(field(row, lat_col));
            auto lon = parse_double(field(row, lon_col));
            if (lat && lon && *lat >= -90.0 && *lat <= 90.0 && *lon >= -180.0 && *lon <= 180.0) {
                record.latitude = lat;
                record.longitude = lon;
            }
            index = records.size();
            by_id.emplace(id, index);
            records.push_back(std::move(record));
        } else {
            index = it->second;
        }
        std::string uri = field(row, uri_col);
        if (!uri.empty()) records[index].image_uris.push_back(std::move(uri));
    }
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "no data rows");
    return records;
}

std::vector<OccurrenceRecord> filter_region(const std::vector<OccurrenceRecord>& records,
                                            const RegionFilter& filter) {
    std::vector<OccurrenceRecord> kept;
    kept.reserve(records.size());
    for (const auto& record : records) {
        if (!record.latitude || !record.longitude) {
            if (filter.keep_missing_coords) kept.push_back(record);
            continue;
        }
        const double lat = *record.latitude;
        const double lon = *record.longitude;
        if (lat >= filter.min_lat && lat <= filter.max_lat && lon >= filter.min_lon &&
            lon <= filter.max_lon) {
            kept.push_back(record);
        }
    }
    return kept;
}

std::pair<std::vector<ImageEntry>, IngestStats> build_image_entries(
    const std::vector<OccurrenceRecord>& records, const SpeciesCatalog& catalog) {
    std::vector<ImageEntry> entries;
    IngestStats stats;
    for (const auto& record : records) {
        auto taxon_id = catalog.resolve_name(record.raw_name);
        if (!taxon_id) {
            ++stats.unresolved[normalize_whitespace(record.raw_name)];
            ++stats.unresolved_records;
            continue;
        }
        ++stats.resolved_records;
        for (const auto& uri : record.image_uris) {
            ImageEntry entry;
            entry.uri = trim(uri);
            entry.image_id = image_id_for_uri(entry.uri);
            entry.taxon_id = *taxon_id;
            entry.source = record.source;
            entries.push_back(std::move(entry));
        }
    }
    stats.entries = entries.size();
    return {std::move(entries), std::move(stats)};
}

void write_image_entries(std::ostream& out, const std::vector<ImageEntry>& entries) {
    out << "image_id,uri,taxon_id,source\n";
    for (const auto& entry : entries) {
        out << join_delimited({entry.image_id, entry.uri, entry.taxon_id,
                               source_name(entry.source)})
            << "\n";
    }
}

std::vector<ImageEntry> read_image_entries(std::istream& in) {
    DelimitedReader reader(in);
    std::vector<std::string> row;
    if (!reader.next_row(row)) throw Error(ErrorCode::EmptyInput, "empty entries file");
    std::vector<ImageEntry> entries;
    while (reader.next_row(row)) {
        if (row.size() < 4) {
            if (row.size() == 1 && trim(row[0]).empty()) continue;
            throw Error(ErrorCode::MalformedRecord, "entries row needs 4 columns");
        }
        ImageEntry entry;
        entry.image_id = trim(row[0]);
        entry.uri = trim(row[1]);
        entry.taxon_id = trim(row[2]);
        auto source = parse_source(row[3]);
        entry.source = source.value_or(Source::Other);
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace flora
