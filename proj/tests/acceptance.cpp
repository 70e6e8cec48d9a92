// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria are pinned here, not configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "flora/dwca.hpp"
#include "flora/evaluator.hpp"
#include "flora/identify.hpp"
#include "flora/sampler.hpp"
#include "flora/service.hpp"
#include "flora/splitter.hpp"
#include "oracles.hpp"

using namespace flora;
using namespace flora::testing;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& criterion, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << " - " << criterion;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!pass) ++failures;
}

double elapsed_seconds(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_seconds(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2fs", seconds);
    return buf;
}

// ---------------------------------------------------------------- metrics

void criterion_metric_oracle_equivalence() {
    const auto start = Clock::now();
    std::mt19937_64 rng(20240601);
    bool pass = true;
    std::string detail;
    const double taus[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int round = 0; round < 500 && pass; ++round) {
        auto instance = random_instance(rng, 200, 50);
        for (std::size_t k : {std::size_t{1}, std::size_t{5}}) {
            if (top_k(instance.predictions, instance.truth, k) !=
                oracle_top_k(instance.predictions, instance.truth, k)) {
                pass = false;
                detail = "top_k mismatch at round " + std::to_string(round);
            }
        }
        if (std::abs(mrr_at_5(instance.predictions, instance.truth) -
                     oracle_mrr_at_5(instance.predictions, instance.truth)) > 1e-12) {
            pass = false;
            detail = "mrr mismatch at round " + std::to_string(round);
        }
        for (double tau : taus) {
            auto point = pr_at_threshold(instance.predictions, instance.truth, tau);
            auto expected = oracle_pr(instance.predictions, instance.truth, tau);
            bool same_defined =
                point.macro_precision.has_value() == expected.macro_precision.has_value();
            bool precision_ok =
                same_defined && (!point.macro_precision ||
                                 std::abs(*point.macro_precision - *expected.macro_precision) <=
                                     1e-12);
            bool recall_ok = std::abs(point.macro_recall - expected.macro_recall) <= 1e-12;
            if (!precision_ok || !recall_ok) {
                pass = false;
                detail = "pr mismatch at round " + std::to_string(round);
            }
        }
    }
    const double seconds = elapsed_seconds(start);
    if (seconds >= 10.0) {
        pass = false;
        detail = "runtime " + format_seconds(seconds) + " >= 10s";
    }
    report("metric oracle equivalence, 500 randomized instances", pass,
           detail.empty() ? format_seconds(seconds) : detail);
}

void criterion_mrr_spot_checks() {
    bool pass = true;

    GroundTruth truth;
    std::vector<PredictionRecord> preds;
    auto add = [&](const std::string& id, std::vector<RankedScore> ranked,
                   const std::string& label) {
        PredictionRecord p;
        p.image_id = id;
        p.ranked = std::move(ranked);
        preds.push_back(std::move(p));
        truth.truth[id] = label;
    };
    add("a", {{"t", 0.9}, {"u", 0.1}}, "t");                                  // rank 1
    add("b", {{"u", 0.5}, {"v", 0.3}, {"t", 0.2}}, "t");                      // rank 3
    add("c", {{"u", 0.6}, {"v", 0.4}}, "t");                                  // absent
    pass = pass && std::abs(mrr_at_5(preds, truth) - (1.0 + 1.0 / 3.0) / 3.0) <= 1e-12;

    GroundTruth truth6;
    std::vector<PredictionRecord> rank6;
    {
        PredictionRecord p;
        p.image_id = "x";
        p.ranked = {{"a", 0.3}, {"b", 0.2}, {"c", 0.15}, {"d", 0.12}, {"e", 0.11}, {"t", 0.1}};
        rank6.push_back(std::move(p));
        truth6.truth["x"] = "t";
    }
    pass = pass && mrr_at_5(rank6, truth6) == 0.0;

    GroundTruth truth1;
    std::vector<PredictionRecord> all_first;
    for (int i = 0; i < 7; ++i) {
        PredictionRecord p;
        p.image_id = "i" + std::to_string(i);
        p.ranked = {{"t", 0.8}, {"u", 0.2}};
        truth1.truth[p.image_id] = "t";
        all_first.push_back(std::move(p));
    }
    pass = pass && mrr_at_5(all_first, truth1) == 1.0;

    // ordering invariant over randomized instances
    std::mt19937_64 rng(777);
    for (int round = 0; round < 200 && pass; ++round) {
        auto instance = random_instance(rng, 80, 20);
        double t1 = top_k(instance.predictions, instance.truth, 1);
        double t5 = top_k(instance.predictions, instance.truth, 5);
        double mrr = mrr_at_5(instance.predictions, instance.truth);
        if (!(t1 <= mrr + 1e-12 && mrr <= t5 + 1e-12)) pass = false;
    }
    report("MRR spot checks and top1 <= mrr <= top5 ordering", pass);
}

void criterion_pr_monotonicity_and_auc() {
    bool pass = true;
    std::string detail;

    std::mt19937_64 rng(31415);
    for (int round = 0; round < 100 && pass; ++round) {
        auto instance = random_instance(rng, 60, 15);
        auto [points, auc] = pr_curve_and_auc(instance.predictions, instance.truth);
        double prev_recall = 2.0;
        for (const auto& point : points) {
            if (point.macro_recall > prev_recall + 1e-12) {
                pass = false;
                detail = "recall not monotone at round " + std::to_string(round);
            }
            prev_recall = point.macro_recall;
        }
        if (std::abs(auc - oracle_trapezoid_auc(points)) > 1e-9) {
            pass = false;
            detail = "auc oracle mismatch at round " + std::to_string(round);
        }
    }

    GroundTruth truth;
    std::vector<PredictionRecord> perfect;
    for (int i = 0; i < 30; ++i) {
        PredictionRecord p;
        p.image_id = "img" + std::to_string(i);
        std::string label = "sp" + std::to_string(i % 5);
        p.ranked = {{label, 1.0}};
        truth.truth[p.image_id] = label;
        perfect.push_back(std::move(p));
    }
    auto [points, auc] = pr_curve_and_auc(perfect, truth);
    if (std::abs(auc - 1.0) > 1e-9) {
        pass = false;
        detail = "perfect classifier auc " + std::to_string(auc);
    }
    report("PR recall monotone on 0.01 grid; AUC oracle; perfect AUC = 1.0", pass, detail);
}

void criterion_genus_aggregation() {
    bool pass = true;
    std::string detail;

    // 10 genera x 5 species
    std::string csv = "canonical_name\n";
    std::vector<std::string> species_ids;
    for (int g = 0; g < 10; ++g) {
        for (int s = 0; s < 5; ++s) {
            std::string genus = "Genus" + std::string(1, char('a' + g));
            std::string name = genus + " species" + std::to_string(s);
            csv += name + "\n";
            std::string id = name;
            for (auto& c : id) c = c == ' ' ? '_' : char(std::tolower(c));
            species_ids.push_back(id);
        }
    }
    std::istringstream catalog_in(csv);
    auto catalog = SpeciesCatalog::load(catalog_in);

    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int round = 0; round < 200 && pass; ++round) {
        PredictionRecord p;
        p.image_id = "img";
        p.is_full_distribution = true;
        double sum = 0.0;
        for (const auto& id : species_ids) {
            double score = unit(rng);
            p.ranked.push_back({id, score});
            sum += score;
        }
        for (auto& r : p.ranked) r.score /= sum;
        std::sort(p.ranked.begin(), p.ranked.end(),
                  [](const RankedScore& a, const RankedScore& b) { return a.score > b.score; });

        auto genus = genus_aggregate(p, catalog);
        long double species_total = 0.0L;
        for (const auto& r : p.ranked) species_total += r.score;
        long double genus_total = 0.0L;
        for (const auto& r : genus.ranked) genus_total += r.score;
        if (std::abs(static_cast<double>(genus_total - species_total)) > 1e-12) {
            pass = false;
            detail = "score mass not conserved";
        }

        // true-genus score >= true-species score for an arbitrary truth pick
        const auto& truth_species = species_ids[round % species_ids.size()];
        double species_score = 0.0;
        for (const auto& r : p.ranked) {
            if (r.label_id == truth_species) species_score = r.score;
        }
        const std::string truth_genus = catalog.genus_of(truth_species);
        double genus_score = 0.0;
        for (const auto& r : genus.ranked) {
            if (r.label_id == truth_genus) genus_score = r.score;
        }
        if (genus_score + 1e-15 < species_score) {
            pass = false;
            detail = "true genus scored below true species";
        }
    }

    // singleton genera: genus report equals species report exactly
    std::string singleton_csv = "canonical_name\n";
    for (int i = 0; i < 20; ++i) {
        singleton_csv += "Genus" + std::to_string(i) + " unica\n";
    }
    std::istringstream singleton_in(singleton_csv);
    auto singleton_catalog = SpeciesCatalog::load(singleton_in);
    std::vector<std::string> labels;
    for (const auto& taxon : singleton_catalog.taxa()) labels.push_back(taxon.taxon_id);

    GroundTruth truth;
    std::vector<PredictionRecord> species_preds;
    std::vector<PredictionRecord> genus_preds;
    for (int i = 0; i < 60; ++i) {
        PredictionRecord p;
        p.image_id = "img" + std::to_string(i);
        std::vector<std::string> chosen = labels;
        std::shuffle(chosen.begin(), chosen.end(), rng);
        chosen.resize(6);
        std::vector<double> scores;
        for (int s = 0; s < 6; ++s) scores.push_back(unit(rng));
        std::sort(scores.rbegin(), scores.rend());
        for (int s = 0; s < 6; ++s) p.ranked.push_back({chosen[s], scores[s]});
        truth.truth[p.image_id] = chosen[i % 6];
        truth.source_of[p.image_id] = Source::iNaturalist;
        genus_preds.push_back(genus_aggregate(p, singleton_catalog));
        species_preds.push_back(std::move(p));
    }
    auto species_report = evaluate(species_preds, truth);
    auto genus_report = evaluate(genus_preds, genus_truth(truth, singleton_catalog));
    if (species_report.top1 != genus_report.top1 || species_report.top5 != genus_report.top5 ||
        species_report.mrr != genus_report.mrr || species_report.auc != genus_report.auc) {
        pass = false;
        detail = "singleton-genera report differs from species report";
    }
    report("genus aggregation conserves mass; dominates species; singleton identity", pass,
           detail);
}

// ---------------------------------------------------------------- sampler

struct Inventory {
    std::string taxon_id;
    std::map<Source, std::vector<ImageEntry>> by_source;
    std::size_t total = 0;
};

void criterion_sampler_properties() {
    const auto start = Clock::now();
    bool pass = true;
    std::string detail;

    std::mt19937_64 rng(8181);
    std::uniform_int_distribution<int> count_dist(0, 90);
    const std::vector<Source> priority = SamplingPolicy{}.priority;

    int species_counter = 0;
    int manifests = 0;
    int species_total = 0;
    while (species_total < 1000 && pass) {
        // one randomized inventory of 10 species
        std::string csv = "canonical_name\n";
        std::vector<Inventory> inventories;
        std::vector<ImageEntry> entries;
        for (int s = 0; s < 10; ++s) {
            Inventory inv;
            std::string name = "Acceptancea species" + std::to_string(species_counter++);
            csv += name + "\n";
            inv.taxon_id = name;
            for (auto& c : inv.taxon_id) c = c == ' ' ? '_' : char(std::tolower(c));
            for (Source source : priority) {
                int n = count_dist(rng);
                for (int i = 0; i < n; ++i) {
                    auto entry = make_entry("http://acc/" + inv.taxon_id + "/" +
                                                source_name(source) + "/" + std::to_string(i),
                                            inv.taxon_id, source);
                    inv.by_source[source].push_back(entry);
                    entries.push_back(entry);
                }
                inv.total += n;
            }
            inventories.push_back(std::move(inv));
        }
        // pin one species at exactly 49 images so the boundary is always hit
        {
            Inventory inv;
            std::string name = "Acceptancea boundary" + std::to_string(species_counter++);
            csv += name + "\n";
            inv.taxon_id = name;
            for (auto& c : inv.taxon_id) c = c == ' ' ? '_' : char(std::tolower(c));
            for (int i = 0; i < 49; ++i) {
                auto entry = make_entry("http://acc/" + inv.taxon_id + "/" + std::to_string(i),
                                        inv.taxon_id, Source::iNaturalist);
                inv.by_source[Source::iNaturalist].push_back(entry);
                entries.push_back(entry);
            }
            inv.total = 49;
            inventories.push_back(std::move(inv));
        }
        species_total += static_cast<int>(inventories.size());
        ++manifests;

        std::istringstream catalog_in(csv);
        auto catalog = SpeciesCatalog::load(catalog_in);
        SamplingPolicy policy;
        policy.seed = rng();

        bool any_retained = false;
        for (const auto& inv : inventories) {
            if (inv.total >= policy.min_images) any_retained = true;
        }

        DatasetManifest manifest;
        try {
            manifest = sample_dataset(entries, policy, catalog);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::EmptyResult && !any_retained) continue;
            pass = false;
            detail = e.what();
            break;
        }

        std::map<std::string, std::map<Source, std::set<std::string>>> picked;
        for (const auto& entry : manifest.entries) {
            picked[entry.taxon_id][entry.source].insert(entry.image_id);
        }

        for (const auto& inv : inventories) {
            auto it = manifest.per_species_counts.find(inv.taxon_id);
            if (inv.total < policy.min_images) {
                if (it != manifest.per_species_counts.end()) {
                    pass = false;
                    detail = "species with " + std::to_string(inv.total) + " images retained";
                }
                continue;
            }
            if (it == manifest.per_species_counts.end()) {
                pass = false;
                detail = "eligible species excluded";
                continue;
            }
            if (it->second < policy.min_images || it->second > policy.max_images) {
                pass = false;
                detail = "count " + std::to_string(it->second) + " outside [50, 200]";
            }
            // priority exhaustion: any image from rank p implies every
            // available image of every rank < p is present
            int highest_used = -1;
            for (size_t rank = 0; rank < priority.size(); ++rank) {
                const auto& used = picked[inv.taxon_id][priority[rank]];
                if (!used.empty()) highest_used = static_cast<int>(rank);
            }
            for (int rank = 0; rank < highest_used; ++rank) {
                Source source = priority[rank];
                auto avail_it = inv.by_source.find(source);
                std::size_t available = avail_it == inv.by_source.end()
                                            ? 0
                                            : avail_it->second.size();
                if (picked[inv.taxon_id][source].size() != available) {
                    pass = false;
                    detail = "priority exhaustion violated for " + inv.taxon_id;
                }
            }
        }

        // determinism under input shuffles for a sample of manifests
        if (pass && manifests % 20 == 1) {
            std::ostringstream baseline;
            write_manifest(baseline, manifest);
            auto shuffled = entries;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            std::ostringstream again;
            write_manifest(again, sample_dataset(shuffled, policy, catalog));
            if (baseline.str() != again.str()) {
                pass = false;
                detail = "manifest not byte-identical under shuffled input";
            }
        }
    }

    const double seconds = elapsed_seconds(start);
    if (seconds >= 30.0) {
        pass = false;
        detail = "runtime " + format_seconds(seconds) + " >= 30s";
    }
    report("sampler bounds, priority exhaustion, 49-image exclusion, determinism (" +
               std::to_string(species_total) + " species)",
           pass, detail.empty() ? format_seconds(seconds) : detail);
}

// ---------------------------------------------------------------- splitter

DatasetManifest fixture_manifest(const std::vector<std::pair<std::string, size_t>>& species,
                                 Source source = Source::iNaturalist) {
    DatasetManifest manifest;
    for (const auto& [taxon, count] : species) {
        manifest.canonical_names[taxon] = taxon;
        manifest.per_species_counts[taxon] = count;
        for (size_t i = 0; i < count; ++i) {
            auto entry = make_entry("gs://acc/" + taxon + "/" + std::to_string(i) + ".jpg",
                                    taxon, source);
            ++manifest.per_source_counts[source];
            manifest.entries.push_back(std::move(entry));
        }
    }
    return manifest;
}

void criterion_splitter() {
    bool pass = true;
    std::string detail;
    SplitPolicy policy;
    policy.seed = 21;

    auto sizes_for = [&](size_t n) {
        auto manifest = fixture_manifest({{"species_a", n}});
        auto splits = assign_splits(manifest, policy);
        std::map<Split, size_t> sizes;
        for (const auto& [id, split] : splits.assignment) ++sizes[split];
        return sizes;
    };
    auto expect = [&](size_t n, size_t train, size_t val, size_t test) {
        auto sizes = sizes_for(n);
        if (sizes[Split::Train] != train || sizes[Split::Validation] != val ||
            sizes[Split::Test] != test) {
            pass = false;
            detail = "split sizes wrong for n=" + std::to_string(n);
        }
    };
    expect(200, 160, 20, 20);
    expect(50, 40, 5, 5);
    expect(51, 41, 5, 5);

    // per-source proportions on 1,000-image fixtures: each species is
    // dominated by one source, mirroring how sources cover taxa in practice
    std::mt19937_64 rng(606);
    for (int round = 0; round < 10 && pass; ++round) {
        DatasetManifest manifest;
        const std::vector<std::pair<Source, size_t>> mix = {
            {Source::FloraOn, 1}, {Source::PlantNet, 4},
            {Source::ObservationOrg, 2}, {Source::iNaturalist, 3}};
        size_t uri_counter = 0;
        size_t species_counter = 0;
        for (const auto& [source, n_species] : mix) {
            for (size_t s = 0; s < n_species; ++s) {
                std::string taxon = "species_" + std::to_string(species_counter++);
                manifest.canonical_names[taxon] = taxon;
                for (size_t i = 0; i < 100; ++i) {
                    ++manifest.per_species_counts[taxon];
                    ++manifest.per_source_counts[source];
                    manifest.entries.push_back(make_entry(
                        "gs://mix/" + std::to_string(round) + "/" +
                            std::to_string(uri_counter++),
                        taxon, source));
                }
            }
        }
        SplitPolicy seeded;
        seeded.seed = rng();
        auto splits = assign_splits(manifest, seeded);
        auto table = split_report(manifest, splits);
        for (const auto& [source, by_split] : table.per_source) {
            double source_total = 0;
            for (const auto& [split, count] : by_split) source_total += count;
            double manifest_fraction = source_total / 1000.0;
            for (Split split : kAllSplits) {
                double count = by_split.count(split) ? double(by_split.at(split)) : 0.0;
                double fraction = count / double(table.totals.at(split));
                if (std::abs(fraction - manifest_fraction) >= 0.05) {
                    pass = false;
                    detail = "per-source fraction drifted more than 5 points";
                }
            }
        }
        // same seed, same assignment
        if (assign_splits(manifest, seeded).assignment != splits.assignment) {
            pass = false;
            detail = "same seed produced a different assignment";
        }
    }
    report("splitter floor rule (200/50/51), source proportions, seed determinism", pass,
           detail);
}

void criterion_export_bit_exact() {
    bool pass = true;
    std::string detail;

    DatasetManifest manifest;
    auto add = [&](const std::string& taxon, const std::string& canonical,
                   const std::string& uri) {
        manifest.canonical_names[taxon] = canonical;
        ++manifest.per_species_counts[taxon];
        manifest.entries.push_back(make_entry(uri, taxon, Source::FloraOn));
        return manifest.entries.back().image_id;
    };
    SplitAssignment splits;
    splits.assignment[add("quercus_robur", "Quercus robur", "gs://b/qr1.jpg")] = Split::Train;
    splits.assignment[add("quercus_robur", "Quercus robur", "gs://b/qr2.jpg")] = Split::Validation;
    splits.assignment[add("quercus_robur", "Quercus robur", "gs://b/qr3.jpg")] = Split::Test;
    splits.assignment[add("cistus_ladanifer", "Cistus ladanifer", "gs://b/cl1.jpg")] = Split::Train;
    splits.assignment[add("cistus_ladanifer", "Cistus ladanifer", "gs://b/cl2.jpg")] = Split::Train;
    splits.assignment[add("cistus_ladanifer", "Cistus ladanifer", "gs://b/cl3.jpg")] = Split::Test;

    const std::string expected =
        "TRAIN,gs://b/cl1.jpg,Cistus_ladanifer\n"
        "TRAIN,gs://b/cl2.jpg,Cistus_ladanifer\n"
        "TEST,gs://b/cl3.jpg,Cistus_ladanifer\n"
        "TRAIN,gs://b/qr1.jpg,Quercus_robur\n"
        "VALIDATION,gs://b/qr2.jpg,Quercus_robur\n"
        "TEST,gs://b/qr3.jpg,Quercus_robur\n";
    std::string produced = export_training_csv(manifest, splits);
    if (produced != expected) {
        pass = false;
        detail = "byte sequence differs";
    }

    // re-parse round trip
    std::istringstream in(produced);
    std::string line;
    size_t rows = 0;
    while (std::getline(in, line)) {
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 + 1);
        std::string split_token = line.substr(0, c1);
        std::string uri = line.substr(c1 + 1, c2 - c1 - 1);
        std::string label = line.substr(c2 + 1);
        auto split = parse_split(split_token);
        std::string image_id = image_id_for_uri(uri);
        if (!split || splits.assignment.at(image_id) != *split) {
            pass = false;
            detail = "round trip split mismatch";
        }
        std::string canonical = label;
        std::replace(canonical.begin(), canonical.end(), '_', ' ');
        bool found = false;
        for (const auto& entry : manifest.entries) {
            if (entry.image_id == image_id &&
                manifest.canonical_names.at(entry.taxon_id) == canonical) {
                found = true;
            }
        }
        if (!found) {
            pass = false;
            detail = "round trip label mismatch";
        }
        ++rows;
    }
    if (rows != manifest.entries.size()) {
        pass = false;
        detail = "row count mismatch";
    }
    report("training CSV bit-exact golden fixture and round trip", pass, detail);
}

void criterion_dwca() {
    bool pass = true;
    std::string detail;
    auto records = parse_dwca(dwca_fixture_bytes());
    if (records.size() != 2 || records[0].image_uris.size() != 2 ||
        records[1].image_uris.size() != 1) {
        pass = false;
        detail = "join sizes wrong";
    }
    bool missing_descriptor_caught = false;
    try {
        parse_dwca(dwca_fixture_bytes(false, true));
    } catch (const Error& e) {
        missing_descriptor_caught = e.code() == ErrorCode::MissingDescriptor;
    }
    if (!missing_descriptor_caught) {
        pass = false;
        detail = "MissingDescriptor not raised";
    }
    report("DwC-A fixture joins 2/1 images; missing meta.xml rejected", pass, detail);
}

void criterion_confidence_policy() {
    bool pass = true;
    std::string detail;
    ConfidencePolicy policy;
    pass = pass && label_confidence(0.71, policy) == Confidence::High;
    pass = pass && label_confidence(0.70, policy) == Confidence::Medium;
    pass = pass && label_confidence(0.40, policy) == Confidence::Medium;
    pass = pass && label_confidence(0.39, policy) == Confidence::Low;
    if (!pass) detail = "boundary labels wrong";

    std::istringstream catalog_in(
        "canonical_name\nAa bb\nCc dd\nEe ff\nGg hh\n");
    auto catalog = SpeciesCatalog::load(catalog_in);
    PredictionRecord p;
    p.image_id = "img";
    p.ranked = {{"aa_bb", 0.50}, {"cc_dd", 0.20}, {"ee_ff", 0.16}, {"gg_hh", 0.14}};
    auto response = make_suggestions(p, catalog, policy);
    if (response.suggestions.size() != 3) {
        pass = false;
        detail = "suggestion list length " + std::to_string(response.suggestions.size());
    }

    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> scores;
    for (int i = 0; i < 10000; ++i) scores.push_back(unit(rng));
    std::sort(scores.begin(), scores.end());
    auto level = [](Confidence c) {
        return c == Confidence::High ? 2 : (c == Confidence::Medium ? 1 : 0);
    };
    int prev = 0;
    for (double score : scores) {
        int now = level(label_confidence(score, policy));  // total: exactly one label each
        if (now < prev) {
            pass = false;
            detail = "confidence not monotone";
            break;
        }
        prev = now;
    }
    report("confidence policy boundaries, floor truncation, partition + monotonicity", pass,
           detail);
}

// ---------------------------------------------------------------- service + end to end

void criterion_service() {
    bool pass = true;
    std::string detail;

    std::istringstream catalog_in("canonical_name\nQuercus robur\nQuercus ilex\n");
    auto catalog = SpeciesCatalog::load(catalog_in);

    // mock scorer with a controllable rate-limit counter
    httplib::Server scorer;
    std::atomic<int> limited{0};
    std::atomic<int> seen{0};
    scorer.Post("/score", [&](const httplib::Request&, httplib::Response& res) {
        ++seen;
        if (limited.fetch_sub(1) > 0) {
            res.status = 429;
            return;
        }
        res.set_content(R"([["Quercus robur", 0.6], ["Quercus ilex", 0.3]])",
                        "application/json");
    });
    int scorer_port = scorer.bind_to_any_port("127.0.0.1");
    std::thread scorer_thread([&] { scorer.listen_after_bind(); });
    scorer.wait_until_ready();

    ServiceConfig config;
    config.port = 0;
    IdentifyService service(catalog, config);
    int port = service.start();
    httplib::Client client("127.0.0.1", port);

    // suggestions equal make_suggestions
    PredictionRecord record;
    record.ranked = {{"quercus_robur", 0.6}, {"quercus_ilex", 0.3}};
    auto direct = make_suggestions(record, catalog, config.policy);
    auto res = client.Post("/v1/identify",
                           R"({"scores": [["quercus_robur", 0.6], ["quercus_ilex", 0.3]]})",
                           "application/json");
    if (!res || res->status != 200) {
        pass = false;
        detail = "identify request failed";
    } else {
        auto body = nlohmann::json::parse(res->body);
        if (body["suggestions"].size() != direct.suggestions.size()) {
            pass = false;
            detail = "suggestion count differs from make_suggestions";
        } else {
            for (size_t i = 0; i < direct.suggestions.size(); ++i) {
                if (body["suggestions"][i]["canonical_name"] !=
                        direct.suggestions[i].canonical_name ||
                    body["suggestions"][i]["score"] != direct.suggestions[i].score) {
                    pass = false;
                    detail = "suggestion content differs from make_suggestions";
                }
            }
        }
    }

    res = client.Post("/v1/identify", R"({"scores": [["quercus_robur", -0.1]]})",
                      "application/json");
    if (!res || res->status != 400) {
        pass = false;
        detail = "invalid payload did not yield 400";
    }

    // unreachable scorer -> 502
    ServiceConfig broken = config;
    ScorerConfig unreachable;
    unreachable.base_url = "http://127.0.0.1:1";
    unreachable.timeout_ms = 500;
    broken.scorer = unreachable;
    IdentifyService broken_service(catalog, broken);
    int broken_port = broken_service.start();
    httplib::Client broken_client("127.0.0.1", broken_port);
    res = broken_client.Post("/v1/identify", R"({"image_ref": "x"})", "application/json");
    if (!res || res->status != 502) {
        pass = false;
        detail = "unreachable scorer did not yield 502";
    }
    broken_service.stop();

    // 3x rate-limited then success under retry cap 5
    limited = 3;
    seen = 0;
    ScorerConfig scorer_config;
    scorer_config.base_url = "http://127.0.0.1:" + std::to_string(scorer_port);
    scorer_config.max_retries = 5;
    scorer_config.backoff_initial_ms = 1;
    ExternalScorerClient scorer_client(scorer_config);
    try {
        auto fetched = scorer_client.fetch_scores("img-1");
        if (fetched.ranked.size() != 2 || seen != 4) {
            pass = false;
            detail = "retry sequence not honored";
        }
    } catch (const Error& e) {
        pass = false;
        detail = std::string("retry failed: ") + e.what();
    }

    service.stop();
    scorer.stop();
    scorer_thread.join();
    report("service: suggestions parity, 400, 502, rate-limit retry", pass, detail);
}

void criterion_end_to_end() {
    const auto start = Clock::now();
    bool pass = true;
    std::string detail;

    // synthetic corpus: 12 species, ~100 images each
    const int n_species = 12;
    const int per_species = 100;
    std::string catalog_csv = "canonical_name\n";
    std::vector<std::string> names;
    for (int s = 0; s < n_species; ++s) {
        std::string genus = "Synthetica";
        if (s % 3 == 1) genus = "Artificia";
        if (s % 3 == 2) genus = "Fabricata";
        std::string name = genus + " species" + std::to_string(s);
        names.push_back(name);
        catalog_csv += name + "\n";
    }
    std::istringstream catalog_in(catalog_csv);
    auto catalog = SpeciesCatalog::load(catalog_in);

    std::ostringstream table;
    table << "occurrence_id,scientific_name,image_uri,lat,lon,source\n";
    const char* sources[] = {"FloraOn", "Pl@ntNet", "Observation.org", "iNaturalist"};
    int occurrence = 0;
    for (int s = 0; s < n_species; ++s) {
        for (int i = 0; i < per_species; ++i) {
            // every 25th occurrence sits outside the default region box
            double lat = (i % 25 == 24) ? -33.9 : 38.0 + (i % 10) * 0.1;
            double lon = (i % 25 == 24) ? 18.4 : -9.0 + (i % 10) * 0.1;
            table << "occ" << occurrence++ << "," << names[s] << ",http://corpus/" << s << "/"
                  << i << ".jpg," << lat << "," << lon << "," << sources[i % 4] << "\n";
        }
    }

    // ingest
    TableColumnMap columns;
    columns.id_column = "occurrence_id";
    columns.name_column = "scientific_name";
    columns.image_uri_column = "image_uri";
    columns.latitude_column = "lat";
    columns.longitude_column = "lon";
    columns.source_column = "source";
    std::istringstream table_in(table.str());
    auto records = parse_occurrence_table(table_in, columns);
    records = filter_region(records, RegionFilter{});
    auto [entries, ingest_stats] = build_image_entries(records, catalog);
    if (entries.empty() || ingest_stats.unresolved_records != 0) {
        pass = false;
        detail = "ingest produced unexpected output";
    }

    // sample + split + export
    auto [deduped, dedup_stats] = dedup_entries(entries);
    SamplingPolicy sampling;
    sampling.seed = 7;
    auto manifest = sample_dataset(deduped, sampling, catalog);
    if (manifest.per_species_counts.size() != n_species) {
        pass = false;
        detail = "sampled species count " +
                 std::to_string(manifest.per_species_counts.size());
    }
    SplitPolicy split_policy;
    split_policy.seed = 7;
    auto splits = assign_splits(manifest, split_policy);
    auto import_csv = export_training_csv(manifest, splits);
    if (import_csv.empty()) {
        pass = false;
        detail = "empty import CSV";
    }

    // synthetic scorer: correct label at rank 1 for ~70% of test images
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    GroundTruth truth;
    std::vector<PredictionRecord> predictions;
    for (const auto& entry : manifest.entries) {
        if (splits.assignment.at(entry.image_id) != Split::Test) continue;
        truth.truth[entry.image_id] = entry.taxon_id;
        truth.source_of[entry.image_id] = entry.source;

        PredictionRecord p;
        p.image_id = entry.image_id;
        p.provider_id = "synthetic";
        std::string top = entry.taxon_id;
        if (unit(rng) > 0.7) {
            const auto& other = manifest.canonical_names;
            auto it = other.begin();
            std::advance(it, static_cast<long>(unit(rng) * double(other.size())));
            top = it->first;
        }
        double top_score = 0.4 + 0.6 * unit(rng);
        p.ranked.push_back({top, top_score});
        double second = top_score * 0.5;
        p.ranked.push_back({top == entry.taxon_id ? "synthetica_species0" : entry.taxon_id,
                            std::min(second, 1.0 - top_score)});
        predictions.push_back(std::move(p));
    }
    if (predictions.empty()) {
        pass = false;
        detail = "no test-split predictions";
    }

    auto report_doc = evaluate(predictions, truth);
    if (!(report_doc.n_images > 0 && report_doc.top1 > 0.0 && report_doc.top5 >= report_doc.top1 &&
          report_doc.mrr >= report_doc.top1 && report_doc.auc > 0.0 &&
          report_doc.pr_points.size() == 101 && !report_doc.per_source.empty() &&
          !report_doc.image_set_digest.empty())) {
        pass = false;
        detail = "report fields not fully populated";
    }

    const double seconds = elapsed_seconds(start);
    if (seconds >= 60.0) {
        pass = false;
        detail = "runtime " + format_seconds(seconds) + " >= 60s";
    }
    report("end-to-end pipeline on a 12-species synthetic corpus", pass,
           detail.empty() ? format_seconds(seconds) : detail);
}

}  // namespace

int main() {
    criterion_metric_oracle_equivalence();
    criterion_mrr_spot_checks();
    criterion_pr_monotonicity_and_auc();
    criterion_genus_aggregation();
    criterion_sampler_properties();
    criterion_splitter();
    criterion_export_bit_exact();
    criterion_dwca();
    criterion_confidence_policy();
    criterion_service();
    criterion_end_to_end();

    if (failures != 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
