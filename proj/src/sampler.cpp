#include "flora/sampler.hpp"

#include <algorithm>
#include <unordered_map>

#include "flora/errors.hpp"
#include "flora/hash.hpp"
#include "flora/rng.hpp"
#include "flora/text.hpp"

namespace flora {

namespace {

// Lower value = higher priority; sources absent from the list sort last.
size_t priority_rank(const std::vector<Source>& priority, Source source) {
    for (size_t i = 0; i < priority.size(); ++i) {
        if (priority[i] == source) return i;
    }
    return priority.size();
}

void sort_by_image_id(std::vector<ImageEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const ImageEntry& a, const ImageEntry& b) {
        return a.image_id < b.image_id;
    });
}

}  // namespace

std::pair<std::vector<ImageEntry>, DedupStats> dedup_entries(
    const std::vector<ImageEntry>& entries, const std::vector<Source>& priority) {
    struct UriGroup {
        TaxonId taxon_id;
        bool cross_species = false;
        size_t best_index = 0;
        size_t copies = 0;
    };
    std::unordered_map<std::string, UriGroup> by_uri;
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& entry = entries[i];
        auto [it, inserted] = by_uri.try_emplace(entry.uri);
        UriGroup& group = it->second;
        if (inserted) {
            group.taxon_id = entry.taxon_id;
            group.best_index = i;
            group.copies = 1;
            continue;
        }
        ++group.copies;
        if (group.taxon_id != entry.taxon_id) {
            group.cross_species = true;
            continue;
        }
        if (priority_rank(priority, entry.source) <
            priority_rank(priority, entries[group.best_index].source)) {
            group.best_index = i;
        }
    }

    DedupStats stats;
    std::vector<ImageEntry> kept;
    kept.reserve(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) {
        const UriGroup& group = by_uri.at(entries[i].uri);
        if (group.cross_species) continue;
        if (group.best_index == i) kept.push_back(entries[i]);
    }
    for (const auto& [uri, group] : by_uri) {
        if (group.cross_species) {
            ++stats.cross_species_dupes;
        } else if (group.copies > 1) {
            stats.same_taxon_dupes += group.copies - 1;
        }
    }
    return {std::move(kept), stats};
}

RawStats raw_stats(const std::vector<ImageEntry>& entries, std::size_t min_images) {
    RawStats stats;
    std::map<TaxonId, std::size_t> totals;
    std::map<std::pair<Source, TaxonId>, std::size_t> per_source_species;
    for (const auto& entry : entries) {
        ++stats.per_source[entry.source].images;
        ++totals[entry.taxon_id];
        ++per_source_species[{entry.source, entry.taxon_id}];
    }
    stats.total_images = entries.size();
    stats.total_species = totals.size();
    for (const auto& [taxon, count] : totals) {
        if (count >= min_images) ++stats.species_ge_min;
    }
    for (const auto& [key, count] : per_source_species) {
        ++stats.per_source[key.first].species;
        if (count >= min_images) ++stats.per_source[key.first].species_ge_min;
    }
    return stats;
}

DatasetManifest sample_dataset(const std::vector<ImageEntry>& entries,
                               const SamplingPolicy& policy,
                               const SpeciesCatalog& catalog) {
    // canonical pre-sort makes the result independent of input order
    std::map<TaxonId, std::map<Source, std::vector<ImageEntry>>> by_species;
    for (const auto& entry : entries) {
        by_species[entry.taxon_id][entry.source].push_back(entry);
    }

    DatasetManifest manifest;
    manifest.policy = policy;
    for (auto& [taxon_id, by_source] : by_species) {
        std::size_t available = 0;
        for (const auto& source : policy.priority) {
            auto it = by_source.find(source);
            if (it != by_source.end()) available += it->second.size();
        }
        if (available < policy.min_images) continue;

        Rng rng = keyed_rng(policy.seed, fnv1a64(taxon_id));
        std::size_t budget = policy.max_images;
        std::vector<ImageEntry> picked;
        for (const auto& source : policy.priority) {
            if (budget == 0) break;
            auto it = by_source.find(source);
            if (it == by_source.end()) continue;
            std::vector<ImageEntry> pool = it->second;
            sort_by_image_id(pool);
            std::size_t take = std::min(pool.size(), budget);
            std::vector<ImageEntry> chosen = sample_without_replacement(std::move(pool), take, rng);
            budget -= take;
            for (auto& entry : chosen) picked.push_back(std::move(entry));
        }

        manifest.per_species_counts[taxon_id] = picked.size();
        manifest.canonical_names[taxon_id] = catalog.taxon(taxon_id).canonical_name;
        for (auto& entry : picked) {
            ++manifest.per_source_counts[entry.source];
            manifest.entries.push_back(std::move(entry));
        }
    }
    if (manifest.entries.empty()) {
        throw Error(ErrorCode::EmptyResult, "no species reaches the minimum image count");
    }

    std::sort(manifest.entries.begin(), manifest.entries.end(),
              [&manifest](const ImageEntry& a, const ImageEntry& b) {
                  const auto& name_a = manifest.canonical_names.at(a.taxon_id);
                  const auto& name_b = manifest.canonical_names.at(b.taxon_id);
                  if (name_a != name_b) return name_a < name_b;
                  return a.image_id < b.image_id;
              });
    return manifest;
}

DatasetStats manifest_stats(const DatasetManifest& manifest) {
    DatasetStats stats;
    stats.total_images = manifest.entries.size();
    stats.total_species = manifest.per_species_counts.size();
    stats.per_source_counts = manifest.per_source_counts;
    for (const auto& [source, count] : manifest.per_source_counts) {
        double pct = stats.total_images == 0
                         ? 0.0
                         : 100.0 * static_cast<double>(count) / static_cast<double>(stats.total_images);
        stats.per_source_percent[source] = format_fixed_banker(pct, 1);
    }
    for (const auto& [taxon, count] : manifest.per_species_counts) {
        ++stats.species_by_image_count[count];
        if (count == manifest.policy.max_images) ++stats.species_at_max;
    }
    return stats;
}

void write_manifest(std::ostream& out, const DatasetManifest& manifest) {
    out << "image_id,uri,taxon_id,canonical_name,source\n";
    for (const auto& entry : manifest.entries) {
        out << join_delimited({entry.image_id, entry.uri, entry.taxon_id,
                               manifest.canonical_names.at(entry.taxon_id),
                               source_name(entry.source)})
            << "\n";
    }
}

DatasetManifest read_manifest(std::istream& in) {
    DelimitedReader reader(in);
    std::vector<std::string> row;
    if (!reader.next_row(row)) throw Error(ErrorCode::EmptyManifest, "empty manifest file");
    DatasetManifest manifest;
    while (reader.next_row(row)) {
        if (row.size() == 1 && trim(row[0]).empty()) continue;
        if (row.size() < 5) throw Error(ErrorCode::MalformedRecord, "manifest row needs 5 columns");
        ImageEntry entry;
        entry.image_id = trim(row[0]);
        entry.uri = trim(row[1]);
        entry.taxon_id = trim(row[2]);
        entry.source = parse_source(row[4]).value_or(Source::Other);
        manifest.canonical_names[entry.taxon_id] = normalize_whitespace(row[3]);
        ++manifest.per_species_counts[entry.taxon_id];
        ++manifest.per_source_counts[entry.source];
        manifest.entries.push_back(std::move(entry));
    }
    if (manifest.entries.empty()) throw Error(ErrorCode::EmptyManifest, "manifest has no rows");
    return manifest;
}

}  // namespace flora
