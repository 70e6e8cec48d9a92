#include <doctest.h>

#include <sstream>

#include "flora/errors.hpp"
#include "flora/ingest.hpp"

using namespace flora;

namespace {

SpeciesCatalog test_catalog() {
    std::istringstream in(
        "canonical_name,synonyms\n"
        "Chamaeleon gummifer,Atractylis gummifera\n"
        "Quercus robur,\n");
    return SpeciesCatalog::load(in);
}

TableColumnMap default_columns() {
    TableColumnMap columns;
    columns.id_column = "id";
    columns.name_column = "name";
    columns.image_uri_column = "uri";
    columns.latitude_column = "lat";
    columns.longitude_column = "lon";
    return columns;
}

}  // namespace

TEST_CASE("parse_occurrence_table groups rows by id") {
    std::istringstream in(
        "id,name,uri,lat,lon\n"
        "o1,Quercus robur,http://a/1.jpg,38.7,-9.1\n"
        "o1,Quercus robur,http://a/2.jpg,38.7,-9.1\n"
        "o1,Quercus robur,http://a/3.jpg,38.7,-9.1\n");
    auto records = parse_occurrence_table(in, default_columns());
    REQUIRE(records.size() == 1);
    CHECK(records[0].image_uris.size() == 3);
    CHECK(records[0].latitude == doctest::Approx(38.7));
}

TEST_CASE("parse_occurrence_table error paths") {
    TableColumnMap no_uri;
    no_uri.id_column = "id";
    no_uri.name_column = "name";
    std::istringstream in("id,name\no1,Quercus robur\n");
    try {
        parse_occurrence_table(in, no_uri);
        FAIL("expected MissingColumn");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingColumn);
    }

    std::istringstream header_only("id,name,uri,lat,lon\n");
    try {
        parse_occurrence_table(header_only, default_columns());
        FAIL("expected EmptyInput");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyInput);
    }
}

TEST_CASE("filter_region keeps the box and honors the missing-coords flag") {
    RegionFilter box;
    box.min_lat = 35;
    box.max_lat = 72;
    box.min_lon = -11;
    box.max_lon = 40;

    OccurrenceRecord lisbon;
    lisbon.occurrence_id = "a";
    lisbon.latitude = 38.7;
    lisbon.longitude = -9.1;
    OccurrenceRecord cape_town;
    cape_town.occurrence_id = "b";
    cape_town.latitude = -33.9;
    cape_town.longitude = 18.4;
    OccurrenceRecord no_coords;
    no_coords.occurrence_id = "c";

    box.keep_missing_coords = true;
    auto kept = filter_region({lisbon, cape_town, no_coords}, box);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].occurrence_id == "a");
    CHECK(kept[1].occurrence_id == "c");

    box.keep_missing_coords = false;
    kept = filter_region({lisbon, cape_town, no_coords}, box);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].occurrence_id == "a");
}

TEST_CASE("whole-globe filter is the identity on records with coordinates") {
    RegionFilter globe;
    globe.min_lat = -90;
    globe.max_lat = 90;
    globe.min_lon = -180;
    globe.max_lon = 180;
    std::vector<OccurrenceRecord> records;
    for (int i = 0; i < 20; ++i) {
        OccurrenceRecord r;
        r.occurrence_id = std::to_string(i);
        r.latitude = -80.0 + i * 8.0;
        r.longitude = -170.0 + i * 17.0;
        records.push_back(r);
    }
    CHECK(filter_region(records, globe).size() == records.size());
}

TEST_CASE("build_image_entries resolves synonyms and counts unresolved") {
    auto catalog = test_catalog();

    OccurrenceRecord synonym_record;
    synonym_record.occurrence_id = "o1";
    synonym_record.raw_name = "Atractylis gummifera";
    synonym_record.source = Source::iNaturalist;
    synonym_record.image_uris = {"http://x/1.jpg", "http://x/2.jpg"};

    OccurrenceRecord unknown_record;
    unknown_record.occurrence_id = "o2";
    unknown_record.raw_name = "Nonexistens plantus";
    unknown_record.image_uris = {"http://x/3.jpg"};

    auto [entries, stats] = build_image_entries({synonym_record, unknown_record}, catalog);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].taxon_id == *catalog.resolve_name("Chamaeleon gummifer"));
    CHECK(entries[0].source == Source::iNaturalist);
    CHECK(stats.unresolved.at("Nonexistens plantus") == 1);
    CHECK(stats.unresolved_records == 1);
}

TEST_CASE("image_id is a pure function of the trimmed uri") {
    CHECK(image_id_for_uri("http://x/1.jpg") == image_id_for_uri("  http://x/1.jpg "));
    CHECK(image_id_for_uri("http://x/1.jpg") != image_id_for_uri("http://x/2.jpg"));
    CHECK(image_id_for_uri("http://x/1.jpg").size() == 32);
}

TEST_CASE("image entries round-trip through the delimited format") {
    std::vector<ImageEntry> entries;
    for (int i = 0; i < 5; ++i) {
        ImageEntry entry;
        entry.uri = "http://img/" + std::to_string(i) + ".jpg";
        entry.image_id = image_id_for_uri(entry.uri);
        entry.taxon_id = "quercus_robur";
        entry.source = static_cast<Source>(i % 5);
        entries.push_back(entry);
    }
    std::ostringstream out;
    write_image_entries(out, entries);
    std::istringstream in(out.str());
    auto loaded = read_image_entries(in);
    REQUIRE(loaded.size() == entries.size());
    for (size_t i = 0; i < entries.size(); ++i) {
        CHECK(loaded[i].image_id == entries[i].image_id);
        CHECK(loaded[i].uri == entries[i].uri);
        CHECK(loaded[i].source == entries[i].source);
    }
}
