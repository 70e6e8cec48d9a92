#pragma once

#include <istream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace flora {

using TaxonId = std::string;

struct TaxonRecord {
    TaxonId taxon_id;
    std::string canonical_name;  // binomial, >= 2 tokens
    std::vector<std::string> synonyms;
    std::string genus;  // first token of canonical_name
};

struct CatalogOptions {
    char delimiter = ',';
    char synonym_delimiter = ';';
};

// Immutable species universe: canonical binomials, synonyms, genus
// derivation, and name resolution. Safe for concurrent reads once built.
class SpeciesCatalog {
public:
    static SpeciesCatalog load(std::istream& in, const CatalogOptions& options = {});

    // Builds from in-memory rows of (canonical_name, synonyms).
    static SpeciesCatalog from_rows(
        const std::vector<std::pair<std::string, std::vector<std::string>>>& rows);

    // Matches canonical names and synonyms, case-insensitively after
    // whitespace normalization. Unresolved is a value, not an error.
    std::optional<TaxonId> resolve_name(const std::string& raw) const;

    // Genus of the accepted name; throws UnknownTaxon.
    const std::string& genus_of(const TaxonId& taxon_id) const;

    const TaxonRecord& taxon(const TaxonId& taxon_id) const;
    const std::vector<TaxonRecord>& taxa() const { return taxa_; }
    size_t size() const { return taxa_.size(); }

private:
    std::vector<TaxonRecord> taxa_;
    std::unordered_map<std::string, size_t> name_index_;  // name_key -> taxa_ index
    std::unordered_map<std::string, size_t> id_index_;
};

}  // namespace flora
