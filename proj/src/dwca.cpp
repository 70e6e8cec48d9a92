#include "flora/dwca.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <sstream>
#include <unordered_map>

#include "flora/errors.hpp"
#include "flora/text.hpp"
#include "flora/zip.hpp"

namespace flora {

namespace {

namespace pt = boost::property_tree;

struct TableSpec {
    std::string location;
    char field_delim = '\t';
    char quote = '\0';
    int skip_header_lines = 0;
    int id_index = -1;  // <id> for core, <coreid> for extensions
    std::unordered_map<std::string, int> term_index;  // lowercased term suffix -> column
};

char unescape_delim(const std::string& raw, char fallback) {
    if (raw.empty()) return fallback;
    if (raw == "\\t") return '\t';
    if (raw == "\\n") return '\n';
    if (raw == "\\r") return '\r';
    return raw[0];
}

std::string term_suffix(const std::string& term) {
    size_t pos = term.find_last_of("/#");
    std::string tail = (pos == std::string::npos) ? term : term.substr(pos + 1);
    return to_lower(tail);
}

TableSpec parse_table_spec(const pt::ptree& node, const char* id_tag) {
    TableSpec spec;
    const auto& attrs = node.get_child("<xmlattr>", pt::ptree());
    spec.field_delim = unescape_delim(attrs.get<std::string>("fieldsTerminatedBy", ""), '\t');
    std::string enclosed = attrs.get<std::string>("fieldsEnclosedBy", "");
    spec.quote = enclosed.empty() ? '\0' : enclosed[0];
    spec.skip_header_lines = attrs.get<int>("ignoreHeaderLines", 0);

    auto files = node.get_child_optional("files");
    if (!files) throw Error(ErrorCode::MalformedDescriptor, "table element lacks <files>");
    spec.location = trim(files->get<std::string>("location", ""));
    if (spec.location.empty()) {
        throw Error(ErrorCode::MalformedDescriptor, "table element lacks a file location");
    }

    for (const auto& [tag, child] : node) {
        if (tag == id_tag) {
            spec.id_index = child.get<int>("<xmlattr>.index", -1);
        } else if (tag == "field") {
            std::string term = child.get<std::string>("<xmlattr>.term", "");
            int index = child.get<int>("<xmlattr>.index", -1);
            if (!term.empty() && index >= 0) spec.term_index[term_suffix(term)] = index;
        }
    }
    return spec;
}

std::vector<std::vector<std::string>> read_table(const ZipArchive& zip, const TableSpec& spec,
                                                 ErrorCode missing_code) {
    if (!zip.has_entry(spec.location)) {
        throw Error(missing_code, "archive has no file '" + spec.location + "'");
    }
    std::istringstream in(zip.read_entry(spec.location));
    DelimitedReader reader(in, spec.field_delim, spec.quote);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    int skip = spec.skip_header_lines;
    while (reader.next_row(row)) {
        if (skip > 0) {
            --skip;
            continue;
        }
        if (row.size() == 1 && trim(row[0]).empty()) continue;
        rows.push_back(row);
    }
    return rows;
}

std::string cell(const std::vector<std::string>& row, int index) {
    if (index < 0 || static_cast<size_t>(index) >= row.size()) return "";
    return trim(row[index]);
}

int lookup(const TableSpec& spec, const char* term) {
    auto it = spec.term_index.find(term);
    return it == spec.term_index.end() ? -1 : it->second;
}

}  // namespace

std::vector<OccurrenceRecord> parse_dwca(const std::string& archive_bytes,
                                         Source default_source) {
    ZipArchive zip(archive_bytes);
    if (!zip.has_entry("meta.xml")) {
        throw Error(ErrorCode::MissingDescriptor, "archive has no meta.xml");
    }

    pt::ptree doc;
    try {
        std::istringstream xml(zip.read_entry("meta.xml"));
        pt::read_xml(xml, doc, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw Error(ErrorCode::MalformedDescriptor, e.what());
    }

    auto archive = doc.get_child_optional("archive");
    if (!archive) throw Error(ErrorCode::MalformedDescriptor, "no <archive> root element");

    const pt::ptree* core_node = nullptr;
    const pt::ptree* multimedia_node = nullptr;
    for (const auto& [tag, child] : *archive) {
        std::string row_type = to_lower(child.get<std::string>("<xmlattr>.rowType", ""));
        if (tag == "core") {
            if (row_type.find("occurrence") == std::string::npos) {
                throw Error(ErrorCode::MalformedDescriptor,
                            "core row type is not Occurrence: " + row_type);
            }
            core_node = &child;
        } else if (tag == "extension") {
            if (row_type.find("multimedia") != std::string::npos ||
                row_type.find("image") != std::string::npos) {
                multimedia_node = &child;
            }
            // other extensions ignored
        }
    }
    if (!core_node) throw Error(ErrorCode::MalformedDescriptor, "descriptor declares no core");

    TableSpec core_spec = parse_table_spec(*core_node, "id");
    const auto core_rows = read_table(zip, core_spec, ErrorCode::CoreFileMissing);

    const int name_col = lookup(core_spec, "scientificname");
    const int lat_col = lookup(core_spec, "decimallatitude");
    const int lon_col = lookup(core_spec, "decimallongitude");
    int core_id_col = core_spec.id_index;
    if (core_id_col < 0) core_id_col = lookup(core_spec, "occurrenceid");

    // multimedia URIs grouped by core id
    std::unordered_map<std::string, std::vector<std::string>> uris_by_id;
    if (multimedia_node) {
        TableSpec media_spec = parse_table_spec(*multimedia_node, "coreid");
        if (media_spec.id_index < 0) {
            throw Error(ErrorCode::JoinKeyMissing, "multimedia extension declares no <coreid>");
        }
        if (core_id_col < 0) {
            throw Error(ErrorCode::JoinKeyMissing, "core declares no <id> to join multimedia on");
        }
        int uri_col = lookup(media_spec, "identifier");
        if (uri_col < 0) uri_col = lookup(media_spec, "accessuri");
        for (const auto& row : read_table(zip, media_spec, ErrorCode::CoreFileMissing)) {
            std::string id = cell(row, media_spec.id_index);
            std::string uri = cell(row, uri_col);
            if (!id.empty() && !uri.empty()) uris_by_id[id].push_back(uri);
        }
    }

    std::vector<OccurrenceRecord> records;
    records.reserve(core_rows.size());
    for (size_t i = 0; i < core_rows.size(); ++i) {
        const auto& row = core_rows[i];
        OccurrenceRecord record;
        record.occurrence_id = cell(row, core_id_col);
        if (record.occurrence_id.empty()) record.occurrence_id = "row-" + std::to_string(i + 1);
        record.raw_name = normalize_whitespace(cell(row, name_col));
        record.source = default_source;
        auto lat = parse_double(cell(row, lat_col));
        auto lon = parse_double(cell(row, lon_col));
        if (lat && lon && *lat >= -90.0 && *lat <= 90.0 && *lon >= -180.0 && *lon <= 180.0) {
            record.latitude = lat;
            record.longitude = lon;
        }
        auto it = uris_by_id.find(record.occurrence_id);
        if (it != uris_by_id.end()) record.image_uris = it->second;
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace flora
