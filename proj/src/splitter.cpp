#include "flora/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include "flora/errors.hpp"
#include "flora/hash.hpp"
#include "flora/rng.hpp"
#include "flora/text.hpp"

namespace flora {

const char* split_name(Split split) {
    switch (split) {
        case Split::Train: return "TRAIN";
        case Split::Validation: return "VALIDATION";
        case Split::Test: return "TEST";
    }
    return "TRAIN";
}

std::optional<Split> parse_split(std::string_view name) {
    std::string key = to_lower(trim(name));
    if (key == "train") return Split::Train;
    if (key == "validation") return Split::Validation;
    if (key == "test") return Split::Test;
    return std::nullopt;
}

SplitAssignment assign_splits(const DatasetManifest& manifest, const SplitPolicy& policy) {
    if (manifest.entries.empty()) throw Error(ErrorCode::EmptyManifest, "nothing to split");
    const double sum =
        policy.train_fraction + policy.validation_fraction + policy.test_fraction;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error(ErrorCode::UsageError, "split fractions must sum to 1");
    }

    std::map<TaxonId, std::vector<std::string>> ids_by_species;
    for (const auto& entry : manifest.entries) {
        ids_by_species[entry.taxon_id].push_back(entry.image_id);
    }

    SplitAssignment splits;
    for (auto& [taxon_id, image_ids] : ids_by_species) {
        std::sort(image_ids.begin(), image_ids.end());
        Rng rng = keyed_rng(policy.seed, fnv1a64(taxon_id));
        deterministic_shuffle(image_ids, rng);

        const std::size_t n = image_ids.size();
        const auto n_val = static_cast<std::size_t>(
            std::floor(static_cast<double>(n) * policy.validation_fraction));
        const auto n_test = static_cast<std::size_t>(
            std::floor(static_cast<double>(n) * policy.test_fraction));
        for (std::size_t i = 0; i < n; ++i) {
            Split split = Split::Train;
            if (i < n_val) {
                split = Split::Validation;
            } else if (i < n_val + n_test) {
                split = Split::Test;
            }
            splits.assignment[image_ids[i]] = split;
        }
    }
    return splits;
}

SplitReport split_report(const DatasetManifest& manifest, const SplitAssignment& splits) {
    if (splits.assignment.size() != manifest.entries.size()) {
        throw Error(ErrorCode::InconsistentSplit, "assignment size differs from manifest size");
    }
    SplitReport report;
    for (const auto& entry : manifest.entries) {
        auto it = splits.assignment.find(entry.image_id);
        if (it == splits.assignment.end()) {
            throw Error(ErrorCode::InconsistentSplit,
                        "manifest image not in assignment: " + entry.image_id);
        }
        ++report.per_source[entry.source][it->second];
        ++report.totals[it->second];
        ++report.total;
    }
    return report;
}

std::string export_training_csv(const DatasetManifest& manifest, const SplitAssignment& splits,
                                const std::optional<UriRewrite>& rewrite) {
    if (manifest.entries.empty()) throw Error(ErrorCode::EmptyManifest, "nothing to export");
    if (splits.assignment.size() != manifest.entries.size()) {
        throw Error(ErrorCode::InconsistentSplit, "assignment size differs from manifest size");
    }

    struct Row {
        std::string label;
        std::string uri;
        Split split;
    };
    std::vector<Row> rows;
    rows.reserve(manifest.entries.size());
    for (const auto& entry : manifest.entries) {
        auto it = splits.assignment.find(entry.image_id);
        if (it == splits.assignment.end()) {
            throw Error(ErrorCode::InconsistentSplit,
                        "manifest image not in assignment: " + entry.image_id);
        }
        Row row;
        row.label = manifest.canonical_names.at(entry.taxon_id);
        std::replace(row.label.begin(), row.label.end(), ' ', '_');
        if (row.label.find(',') != std::string::npos) {
            throw Error(ErrorCode::LabelContainsDelimiter, row.label);
        }
        row.uri = entry.uri;
        if (rewrite && row.uri.rfind(rewrite->from_prefix, 0) == 0) {
            row.uri = rewrite->to_prefix + row.uri.substr(rewrite->from_prefix.size());
        }
        row.split = it->second;
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.label != b.label) return a.label < b.label;
        return a.uri < b.uri;
    });

    std::string out;
    for (const auto& row : rows) {
        out += split_name(row.split);
        out += ',';
        out += row.uri;
        out += ',';
        out += row.label;
        out += '\n';
    }
    return out;
}

void write_split_assignment(std::ostream& out, const SplitAssignment& splits) {
    out << "image_id,split\n";
    for (const auto& [image_id, split] : splits.assignment) {
        out << image_id << ',' << split_name(split) << '\n';
    }
}

SplitAssignment read_split_assignment(std::istream& in) {
    DelimitedReader reader(in);
    std::vector<std::string> row;
    if (!reader.next_row(row)) throw Error(ErrorCode::EmptyInput, "empty split file");
    SplitAssignment splits;
    while (reader.next_row(row)) {
        if (row.size() == 1 && trim(row[0]).empty()) continue;
        if (row.size() < 2) throw Error(ErrorCode::MalformedRecord, "split row needs 2 columns");
        auto split = parse_split(row[1]);
        if (!split) throw Error(ErrorCode::MalformedRecord, "unknown split: " + row[1]);
        splits.assignment[trim(row[0])] = *split;
    }
    return splits;
}

}  // namespace flora
