#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "flora/catalog.hpp"
#include "flora/ingest.hpp"

namespace flora {

struct SamplingPolicy {
    std::size_t min_images = 50;
    std::size_t max_images = 200;
    std::vector<Source> priority = {Source::FloraOn, Source::PlantNet,
                                    Source::ObservationOrg, Source::iNaturalist};
    std::uint64_t seed = 0;
};

struct DedupStats {
    std::size_t same_taxon_dupes = 0;     // extra copies collapsed
    std::size_t cross_species_dupes = 0;  // distinct URIs removed entirely
};

struct RawSourceStats {
    std::size_t images = 0;
    std::size_t species = 0;         // species with >= 1 image from this source
    std::size_t species_ge_min = 0;  // species with >= min images from this source
};

struct RawStats {
    std::map<Source, RawSourceStats> per_source;
    std::size_t total_images = 0;
    std::size_t total_species = 0;
    std::size_t species_ge_min = 0;  // by total image count across sources
};

struct DatasetManifest {
    std::vector<ImageEntry> entries;
    std::map<TaxonId, std::size_t> per_species_counts;
    std::map<Source, std::size_t> per_source_counts;
    std::map<TaxonId, std::string> canonical_names;
    SamplingPolicy policy;
};

struct DatasetStats {
    std::size_t total_images = 0;
    std::size_t total_species = 0;
    std::map<Source, std::size_t> per_source_counts;
    std::map<Source, std::string> per_source_percent;  // one decimal, display
    std::map<std::size_t, std::size_t> species_by_image_count;  // histogram
    std::size_t species_at_max = 0;
};

// Same-URI entries under one taxon collapse to the highest-priority source
// copy; same-URI entries under different taxa are removed entirely.
std::pair<std::vector<ImageEntry>, DedupStats> dedup_entries(
    const std::vector<ImageEntry>& entries,
    const std::vector<Source>& priority = SamplingPolicy{}.priority);

RawStats raw_stats(const std::vector<ImageEntry>& entries, std::size_t min_images = 50);

// Drops species under min_images, then fills each species' budget of
// max_images by consuming sources in priority order, sampling uniformly
// within a source. Deterministic for a given (entries, policy).
DatasetManifest sample_dataset(const std::vector<ImageEntry>& entries,
                               const SamplingPolicy& policy,
                               const SpeciesCatalog& catalog);

DatasetStats manifest_stats(const DatasetManifest& manifest);

// image_id,uri,taxon_id,canonical_name,source; header; sorted by
// (canonical_name, image_id); LF endings.
void write_manifest(std::ostream& out, const DatasetManifest& manifest);
DatasetManifest read_manifest(std::istream& in);

}  // namespace flora
