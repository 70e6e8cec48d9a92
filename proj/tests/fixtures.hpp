#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "flora/catalog.hpp"
#include "flora/ingest.hpp"
#include "flora/zip.hpp"

namespace flora::testing {

// Two core rows; multimedia has 2 URIs for occ A and 1 for occ B.
inline std::string dwca_fixture_bytes(bool with_meta = true, bool with_multimedia = true) {
    const std::string extension = R"(
  <extension encoding="UTF-8" fieldsTerminatedBy="\t" linesTerminatedBy="\n" ignoreHeaderLines="1" rowType="http://rs.gbif.org/terms/1.0/Multimedia">
    <files><location>multimedia.txt</location></files>
    <coreid index="0"/>
    <field index="1" term="http://purl.org/dc/terms/identifier"/>
  </extension>)";
    const std::string meta = std::string(R"(<?xml version="1.0" encoding="UTF-8"?>
<archive xmlns="http://rs.tdwg.org/dwc/text/">
  <core encoding="UTF-8" fieldsTerminatedBy="\t" linesTerminatedBy="\n" ignoreHeaderLines="1" rowType="http://rs.tdwg.org/dwc/terms/Occurrence">
    <files><location>occurrence.txt</location></files>
    <id index="0"/>
    <field index="1" term="http://rs.tdwg.org/dwc/terms/scientificName"/>
    <field index="2" term="http://rs.tdwg.org/dwc/terms/decimalLatitude"/>
    <field index="3" term="http://rs.tdwg.org/dwc/terms/decimalLongitude"/>
  </core>)") +
                             (with_multimedia ? extension : "") + "\n</archive>\n";
    const std::string core =
        "id\tscientificName\tdecimalLatitude\tdecimalLongitude\n"
        "occA\tQuercus robur\t38.7\t-9.1\n"
        "occB\tChamaeleon gummifer\tbad\tbad\n";
    const std::string multimedia =
        "coreid\tidentifier\n"
        "occA\thttp://img/a1.jpg\n"
        "occA\thttp://img/a2.jpg\n"
        "occB\thttp://img/b1.jpg\n";

    ZipWriter writer;
    if (with_meta) writer.add_entry("meta.xml", meta);
    writer.add_entry("occurrence.txt", core);
    if (with_multimedia) writer.add_entry("multimedia.txt", multimedia);
    return writer.finish();
}

inline SpeciesCatalog two_species_catalog() {
    std::istringstream in(
        "canonical_name,synonyms\n"
        "Quercus robur,\n"
        "Chamaeleon gummifer,Atractylis gummifera\n");
    return SpeciesCatalog::load(in);
}

inline ImageEntry make_entry(const std::string& uri, const std::string& taxon_id,
                             Source source) {
    ImageEntry entry;
    entry.uri = uri;
    entry.image_id = image_id_for_uri(uri);
    entry.taxon_id = taxon_id;
    entry.source = source;
    return entry;
}

}  // namespace flora::testing
