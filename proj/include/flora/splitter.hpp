#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "flora/sampler.hpp"

namespace flora {

enum class Split { Train, Validation, Test };

inline constexpr Split kAllSplits[] = {Split::Train, Split::Validation, Split::Test};

const char* split_name(Split split);  // TRAIN / VALIDATION / TEST
std::optional<Split> parse_split(std::string_view name);

struct SplitPolicy {
    double train_fraction = 0.8;
    double validation_fraction = 0.1;
    double test_fraction = 0.1;
    std::uint64_t seed = 0;
};

struct SplitAssignment {
    std::map<std::string, Split> assignment;  // image_id -> split
};

struct SplitReport {
    std::map<Source, std::map<Split, std::size_t>> per_source;
    std::map<Split, std::size_t> totals;
    std::size_t total = 0;
};

// Per species: validation gets floor(n*f_val), test floor(n*f_test), train
// the remainder, over a seeded per-species shuffle.
SplitAssignment assign_splits(const DatasetManifest& manifest, const SplitPolicy& policy);

SplitReport split_report(const DatasetManifest& manifest, const SplitAssignment& splits);

struct UriRewrite {
    std::string from_prefix;
    std::string to_prefix;
};

// Training-import CSV: `SPLIT,URI,LABEL` lines sorted by (LABEL, URI), LF
// endings, no header. LABEL is the canonical name with spaces replaced by
// underscores.
std::string export_training_csv(const DatasetManifest& manifest, const SplitAssignment& splits,
                                const std::optional<UriRewrite>& rewrite = std::nullopt);

// image_id,split with header, sorted by image_id.
void write_split_assignment(std::ostream& out, const SplitAssignment& splits);
SplitAssignment read_split_assignment(std::istream& in);

}  // namespace flora
