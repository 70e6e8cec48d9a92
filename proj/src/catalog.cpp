#include "flora/catalog.hpp"

#include <algorithm>

#include "flora/errors.hpp"
#include "flora/text.hpp"

namespace flora {

namespace {

TaxonId make_taxon_id(const std::string& canonical) {
    std::string id = name_key(canonical);
    std::replace(id.begin(), id.end(), ' ', '_');
    return id;
}

size_t token_count(const std::string& name) {
    return split(name, ' ').size();
}

}  // namespace

SpeciesCatalog SpeciesCatalog::from_rows(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& rows) {
    if (rows.empty()) throw Error(ErrorCode::EmptyCatalog, "no rows");

    SpeciesCatalog catalog;
    for (const auto& [raw_canonical, raw_synonyms] : rows) {
        TaxonRecord record;
        record.canonical_name = normalize_whitespace(raw_canonical);
        if (token_count(record.canonical_name) < 2) {
            throw Error(ErrorCode::MalformedBinomial,
                        "'" + record.canonical_name + "' has fewer than 2 tokens");
        }
        record.genus = split(record.canonical_name, ' ').front();
        record.taxon_id = make_taxon_id(record.canonical_name);
        for (const auto& raw_syn : raw_synonyms) {
            std::string syn = normalize_whitespace(raw_syn);
            if (syn.empty()) continue;
            if (token_count(syn) < 2) {
                throw Error(ErrorCode::MalformedBinomial,
                            "synonym '" + syn + "' has fewer than 2 tokens");
            }
            record.synonyms.push_back(std::move(syn));
        }

        const std::string canonical_key = name_key(record.canonical_name);
        if (catalog.name_index_.count(canonical_key)) {
            throw Error(ErrorCode::DuplicateCanonical, record.canonical_name);
        }
        size_t index = catalog.taxa_.size();
        catalog.name_index_[canonical_key] = index;
        catalog.id_index_[record.taxon_id] = index;
        catalog.taxa_.push_back(std::move(record));
    }

    // Synonyms are indexed after all canonicals so a synonym colliding with a
    // canonical name is always reported as a synonym problem.
    for (size_t index = 0; index < catalog.taxa_.size(); ++index) {
        for (const auto& syn : catalog.taxa_[index].synonyms) {
            const std::string key = name_key(syn);
            auto [it, inserted] = catalog.name_index_.emplace(key, index);
            if (!inserted && it->second != index) {
                throw Error(ErrorCode::DuplicateSynonym,
                            "'" + syn + "' maps to more than one taxon");
            }
            if (!inserted && it->second == index &&
                name_key(catalog.taxa_[index].canonical_name) == key) {
                throw Error(ErrorCode::DuplicateSynonym,
                            "'" + syn + "' equals a canonical name");
            }
        }
    }
    return catalog;
}

SpeciesCatalog SpeciesCatalog::load(std::istream& in, const CatalogOptions& options) {
    DelimitedReader reader(in, options.delimiter);
    std::vector<std::string> fields;
    if (!reader.next_row(fields)) throw Error(ErrorCode::EmptyCatalog, "empty stream");

    int canonical_col = -1;
    int synonyms_col = -1;
    for (size_t i = 0; i < fields.size(); ++i) {
        std::string header = name_key(fields[i]);
        if (header == "canonical_name") canonical_col = static_cast<int>(i);
        if (header == "synonyms") synonyms_col = static_cast<int>(i);
    }
    if (canonical_col < 0) {
        throw Error(ErrorCode::MissingColumn, "canonical_name column not found");
    }

    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    while (reader.next_row(fields)) {
        if (fields.size() == 1 && trim(fields[0]).empty()) continue;
        std::string canonical = fields.size() > static_cast<size_t>(canonical_col)
                                    ? fields[canonical_col]
                                    : "";
        std::vector<std::string> synonyms;
        if (synonyms_col >= 0 && fields.size() > static_cast<size_t>(synonyms_col)) {
            synonyms = split(fields[synonyms_col], options.synonym_delimiter);
        }
        rows.emplace_back(std::move(canonical), std::move(synonyms));
    }
    if (rows.empty()) throw Error(ErrorCode::EmptyCatalog, "header but no data rows");
    return from_rows(rows);
}

std::optional<TaxonId> SpeciesCatalog::resolve_name(const std::string& raw) const {
    auto it = name_index_.find(name_key(raw));
    if (it == name_index_.end()) return std::nullopt;
    return taxa_[it->second].taxon_id;
}

const TaxonRecord& SpeciesCatalog::taxon(const TaxonId& taxon_id) const {
    auto it = id_index_.find(taxon_id);
    if (it == id_index_.end()) throw Error(ErrorCode::UnknownTaxon, taxon_id);
    return taxa_[it->second];
}

const std::string& SpeciesCatalog::genus_of(const TaxonId& taxon_id) const {
    return taxon(taxon_id).genus;
}

}  // namespace flora
