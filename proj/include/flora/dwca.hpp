#pragma once

#include <string>
#include <vector>

#include "flora/ingest.hpp"

namespace flora {

// Parses a Darwin Core Archive (ZIP with meta.xml descriptor, occurrence
// core, optional multimedia extension). Honors the descriptor's declared
// delimiters, quoting, column indices, and header-line count. Image URIs
// come from joining the multimedia extension on the core id column.
std::vector<OccurrenceRecord> parse_dwca(const std::string& archive_bytes,
                                         Source default_source = Source::Other);

}  // namespace flora
