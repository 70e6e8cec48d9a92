#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "flora/catalog.hpp"
#include "flora/source.hpp"

namespace flora {

struct OccurrenceRecord {
    std::string occurrence_id;
    std::string raw_name;
    Source source = Source::Other;
    std::vector<std::string> image_uris;
    std::optional<double> latitude;
    std::optional<double> longitude;
};

struct ImageEntry {
    std::string image_id;  // stable hash of the trimmed URI
    std::string uri;
    TaxonId taxon_id;
    Source source = Source::Other;
};

struct RegionFilter {
    double min_lat = 27.0;
    double max_lat = 72.0;
    double min_lon = -32.0;
    double max_lon = 45.0;
    bool keep_missing_coords = true;
};

struct TableColumnMap {
    std::string id_column;
    std::string name_column;
    std::string image_uri_column;
    std::string latitude_column;   // optional
    std::string longitude_column;  // optional
    std::string source_column;     // optional; overrides default_source per row
    char delimiter = ',';
};

struct IngestStats {
    std::map<std::string, std::size_t> unresolved;  // raw name -> occurrence count
    std::size_t resolved_records = 0;
    std::size_t unresolved_records = 0;
    std::size_t entries = 0;
};

std::string image_id_for_uri(const std::string& uri);

// Rows sharing an id are grouped into one record, accumulating image URIs.
std::vector<OccurrenceRecord> parse_occurrence_table(std::istream& in,
                                                     const TableColumnMap& columns,
                                                     Source default_source = Source::Other);

std::vector<OccurrenceRecord> filter_region(const std::vector<OccurrenceRecord>& records,
                                            const RegionFilter& filter);

// One entry per (record, uri) pair whose raw_name resolves; unresolved names
// are counted, not fatal. Does not deduplicate.
std::pair<std::vector<ImageEntry>, IngestStats> build_image_entries(
    const std::vector<OccurrenceRecord>& records, const SpeciesCatalog& catalog);

// image_id,uri,taxon_id,source with header, LF line endings.
void write_image_entries(std::ostream& out, const std::vector<ImageEntry>& entries);
std::vector<ImageEntry> read_image_entries(std::istream& in);

}  // namespace flora
