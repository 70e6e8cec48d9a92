#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "flora/catalog.hpp"
#include "flora/dwca.hpp"
#include "flora/errors.hpp"
#include "flora/evaluator.hpp"
#include "flora/hash.hpp"
#include "flora/identify.hpp"
#include "flora/ingest.hpp"
#include "flora/sampler.hpp"
#include "flora/service.hpp"
#include "flora/splitter.hpp"
#include "flora/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw flora::Error(flora::ErrorCode::IoError, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// temp file + rename so partially written outputs are never observed
void atomic_write(const std::string& path, const std::string& content) {
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw flora::Error(flora::ErrorCode::IoError, "cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

// Provenance lives in a sidecar so the data files keep their exact formats.
void write_sidecar(const std::string& out_path, std::uint64_t seed,
                   const std::vector<std::string>& input_paths) {
    json meta;
    meta["tool"] = "flora";
    meta["version"] = kVersion;
    meta["seed"] = seed;
    json inputs = json::object();
    for (const auto& input : input_paths) {
        inputs[input] = flora::stable_hash128_hex(read_file(input));
    }
    meta["input_digests"] = std::move(inputs);
    atomic_write(out_path + ".meta.json", meta.dump(2) + "\n");
}

flora::SpeciesCatalog load_catalog_file(const std::string& path, char delim = ',') {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw flora::Error(flora::ErrorCode::IoError, "cannot open " + path);
    flora::CatalogOptions options;
    options.delimiter = delim;
    return flora::SpeciesCatalog::load(in, options);
}

std::vector<flora::Source> parse_priority(const std::string& csv) {
    std::vector<flora::Source> priority;
    for (const auto& part : flora::split(csv, ',')) {
        auto source = flora::parse_source(part);
        if (!source) {
            throw flora::Error(flora::ErrorCode::UsageError, "unknown source: " + part);
        }
        priority.push_back(*source);
    }
    return priority;
}

json source_map_json(const std::map<flora::Source, std::size_t>& counts) {
    json out = json::object();
    for (const auto& [source, count] : counts) out[flora::source_name(source)] = count;
    return out;
}

int cmd_ingest(const std::string& catalog_path, const std::vector<std::string>& dwca_paths,
               const std::string& table_path, const flora::TableColumnMap& columns,
               const std::string& default_source, const std::string& region_spec,
               bool drop_missing_coords, const std::string& out_path) {
    auto catalog = load_catalog_file(catalog_path);
    auto source = flora::parse_source(default_source).value_or(flora::Source::Other);

    std::vector<flora::OccurrenceRecord> records;
    for (const auto& path : dwca_paths) {
        auto parsed = flora::parse_dwca(read_file(path), source);
        records.insert(records.end(), parsed.begin(), parsed.end());
    }
    if (!table_path.empty()) {
        std::ifstream in(table_path, std::ios::binary);
        if (!in) throw flora::Error(flora::ErrorCode::IoError, "cannot open " + table_path);
        auto parsed = flora::parse_occurrence_table(in, columns, source);
        records.insert(records.end(), parsed.begin(), parsed.end());
    }
    if (records.empty()) {
        throw flora::Error(flora::ErrorCode::EmptyInput, "no occurrence inputs given");
    }

    flora::RegionFilter filter;
    if (!region_spec.empty()) {
        auto parts = flora::split(region_spec, ',');
        if (parts.size() != 4) {
            throw flora::Error(flora::ErrorCode::UsageError,
                               "--region expects minlat,maxlat,minlon,maxlon");
        }
        filter.min_lat = std::stod(parts[0]);
        filter.max_lat = std::stod(parts[1]);
        filter.min_lon = std::stod(parts[2]);
        filter.max_lon = std::stod(parts[3]);
    }
    filter.keep_missing_coords = !drop_missing_coords;
    records = flora::filter_region(records, filter);

    auto [entries, stats] = flora::build_image_entries(records, catalog);
    std::ostringstream out;
    flora::write_image_entries(out, entries);
    atomic_write(out_path, out.str());
    write_sidecar(out_path, 0, {catalog_path});

    json summary;
    summary["records"] = records.size();
    summary["resolved_records"] = stats.resolved_records;
    summary["unresolved_records"] = stats.unresolved_records;
    summary["entries"] = stats.entries;
    json unresolved = json::object();
    for (const auto& [name, count] : stats.unresolved) unresolved[name] = count;
    summary["unresolved_names"] = std::move(unresolved);
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_stats(const std::string& in_path, std::size_t min_images, const std::string& out_path) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw flora::Error(flora::ErrorCode::IoError, "cannot open " + in_path);
    auto entries = flora::read_image_entries(in);
    auto stats = flora::raw_stats(entries, min_images);

    json doc;
    doc["total_images"] = stats.total_images;
    doc["total_species"] = stats.total_species;
    doc["species_ge_min"] = stats.species_ge_min;
    doc["min_images"] = min_images;
    json per_source = json::object();
    for (const auto& [source, s] : stats.per_source) {
        per_source[flora::source_name(source)] = {
            {"images", s.images}, {"species", s.species}, {"species_ge_min", s.species_ge_min}};
    }
    doc["per_source"] = std::move(per_source);
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        atomic_write(out_path, text);
    }
    return 0;
}

int cmd_sample(const std::string& in_path, const std::string& catalog_path,
               const flora::SamplingPolicy& policy, const std::string& out_path,
               const std::string& stats_out) {
    auto catalog = load_catalog_file(catalog_path);
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw flora::Error(flora::ErrorCode::IoError, "cannot open " + in_path);
    auto entries = flora::read_image_entries(in);

    auto [deduped, dedup_stats] = flora::dedup_entries(entries, policy.priority);
    auto manifest = flora::sample_dataset(deduped, policy, catalog);

    std::ostringstream out;
    flora::write_manifest(out, manifest);
    atomic_write(out_path, out.str());
    write_sidecar(out_path, policy.seed, {in_path, catalog_path});

    auto stats = flora::manifest_stats(manifest);
    json doc;
    doc["seed"] = policy.seed;
    doc["min_images"] = policy.min_images;
    doc["max_images"] = policy.max_images;
    doc["total_images"] = stats.total_images;
    doc["total_species"] = stats.total_species;
    doc["species_at_max"] = stats.species_at_max;
    doc["same_taxon_dupes_removed"] = dedup_stats.same_taxon_dupes;
    doc["cross_species_dupes_removed"] = dedup_stats.cross_species_dupes;
    doc["per_source_counts"] = source_map_json(stats.per_source_counts);
    json percent = json::object();
    for (const auto& [source, pct] : stats.per_source_percent) {
        percent[flora::source_name(source)] = pct;
    }
    doc["per_source_percent"] = std::move(percent);
    json histogram = json::object();
    for (const auto& [count, species] : stats.species_by_image_count) {
        histogram[std::to_string(count)] = species;
    }
    doc["species_by_image_count"] = std::move(histogram);
    std::string text = doc.dump(2) + "\n";
    if (stats_out.empty()) {
        std::cout << text;
    } else {
        atomic_write(stats_out, text);
    }
    std::cerr << "seed=" << policy.seed << "\n";
    return 0;
}

int cmd_split(const std::string& manifest_path, const flora::SplitPolicy& policy,
              const std::string& out_path, const std::string& report_out) {
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw flora::Error(flora::ErrorCode::IoError, "cannot open " + manifest_path);
    auto manifest = flora::read_manifest(in);
    auto splits = flora::assign_splits(manifest, policy);

    std::ostringstream out;
    flora::write_split_assignment(out, splits);
    atomic_write(out_path, out.str());
    write_sidecar(out_path, policy.seed, {manifest_path});

    auto report = flora::split_report(manifest, splits);
    json doc;
    doc["seed"] = policy.seed;
    doc["total"] = report.total;
    json totals = json::object();
    for (const auto& [split, count] : report.totals) totals[flora::split_name(split)] = count;
    doc["totals"] = std::move(totals);
    json per_source = json::object();
    for (const auto& [source, by_split] : report.per_source) {
        json row = json::object();
        for (const auto& [split, count] : by_split) row[flora::split_name(split)] = count;
        per_source[flora::source_name(source)] = std::move(row);
    }
    doc["per_source"] = std::move(per_source);
    std::string text = doc.dump(2) + "\n";
    if (report_out.empty()) {
        std::cout << text;
    } else {
        atomic_write(report_out, text);
    }
    std::cerr << "seed=" << policy.seed << "\n";
    return 0;
}

int cmd_export(const std::string& manifest_path, const std::string& splits_path,
               const std::string& rewrite_from, const std::string& rewrite_to,
               const std::string& out_path) {
    std::ifstream manifest_in(manifest_path, std::ios::binary);
    if (!manifest_in) {
        throw flora::Error(flora::ErrorCode::IoError, "cannot open " + manifest_path);
    }
    auto manifest = flora::read_manifest(manifest_in);
    std::ifstream splits_in(splits_path, std::ios::binary);
    if (!splits_in) throw flora::Error(flora::ErrorCode::IoError, "cannot open " + splits_path);
    auto splits = flora::read_split_assignment(splits_in);

    std::optional<flora::UriRewrite> rewrite;
    if (!rewrite_from.empty()) rewrite = flora::UriRewrite{rewrite_from, rewrite_to};
    atomic_write(out_path, flora::export_training_csv(manifest, splits, rewrite));
    write_sidecar(out_path, 0, {manifest_path, splits_path});
    return 0;
}

flora::EvalConfig make_eval_config(int k_limit, double grid_step) {
    flora::EvalConfig config;
    config.k_limit = k_limit;
    if (grid_step > 0) {
        for (double t = 0.0; t <= 1.0 + 1e-9; t += grid_step) {
            config.threshold_grid.push_back(std::min(t, 1.0));
        }
    }
    return config;
}

void emit_report(const flora::EvalReport& report, const std::string& out_path,
                 const std::string& format, const std::string& pr_csv_path) {
    std::string text;
    if (format == "csv") {
        std::ostringstream out;
        out << "metric,value\n";
        out << "n_images," << report.n_images << "\n";
        out << "top1," << report.top1 << "\n";
        out << "top5," << report.top5 << "\n";
        out << "mrr," << report.mrr << "\n";
        out << "auc," << report.auc << "\n";
        for (const auto& [source, triple] : report.per_source) {
            std::string name = flora::source_name(source);
            out << name << ".top1," << triple.top1 << "\n";
            out << name << ".top5," << triple.top5 << "\n";
            out << name << ".mrr," << triple.mrr << "\n";
        }
        text = out.str();
    } else {
        std::ostringstream out;
        flora::write_report_json(out, report);
        text = out.str();
    }
    if (out_path.empty()) {
        std::cout << text;
    } else {
        atomic_write(out_path, text);
    }
    if (!pr_csv_path.empty()) {
        std::ostringstream out;
        flora::write_pr_csv(out, report.pr_points);
        atomic_write(pr_csv_path, out.str());
    }
}

int cmd_eval(const std::string& pred_path, const std::string& truth_path,
             const std::string& catalog_path, bool genus, int k_limit, double grid_step,
             const std::string& out_path, const std::string& format,
             const std::string& pr_csv_path) {
    std::ifstream pred_in(pred_path, std::ios::binary);
    if (!pred_in) throw flora::Error(flora::ErrorCode::IoError, "cannot open " + pred_path);
    auto loaded = flora::load_predictions(pred_in);
    for (const auto& diag : loaded.rejected) {
        std::cerr << pred_path << ":" << diag.line << ": rejected: " << diag.message << "\n";
    }
    if (loaded.records.empty()) {
        throw flora::Error(flora::ErrorCode::EmptyInput, "no valid prediction records");
    }

    std::ifstream truth_in(truth_path, std::ios::binary);
    if (!truth_in) throw flora::Error(flora::ErrorCode::IoError, "cannot open " + truth_path);
    auto truth = flora::load_truth(truth_in);

    auto config = make_eval_config(k_limit, grid_step);
    flora::EvalReport report;
    if (genus) {
        auto catalog = load_catalog_file(catalog_path);
        std::vector<flora::PredictionRecord> aggregated;
        aggregated.reserve(loaded.records.size());
        for (const auto& record : loaded.records) {
            aggregated.push_back(flora::genus_aggregate(record, catalog));
        }
        report = flora::evaluate(aggregated, flora::genus_truth(truth, catalog), config);
    } else {
        report = flora::evaluate(loaded.records, truth, config);
    }
    emit_report(report, out_path, format, pr_csv_path);
    if (!out_path.empty()) write_sidecar(out_path, 0, {pred_path, truth_path});
    return 0;
}

int cmd_compare(const std::string& a_path, const std::string& b_path,
                const std::string& out_path) {
    std::ifstream a_in(a_path, std::ios::binary);
    if (!a_in) throw flora::Error(flora::ErrorCode::IoError, "cannot open " + a_path);
    std::ifstream b_in(b_path, std::ios::binary);
    if (!b_in) throw flora::Error(flora::ErrorCode::IoError, "cannot open " + b_path);
    auto report_a = flora::read_report_json(a_in);
    auto report_b = flora::read_report_json(b_in);
    auto delta = flora::compare_reports(report_a, report_b);

    json doc;
    auto entry = [](const flora::DeltaEntry& e) {
        return json{{"raw", e.raw}, {"display", e.display}};
    };
    doc["top1"] = entry(delta.top1);
    doc["top5"] = entry(delta.top5);
    doc["mrr"] = entry(delta.mrr);
    doc["auc"] = entry(delta.auc);
    json per_source = json::object();
    for (const auto& [source, metrics] : delta.per_source) {
        json row = json::object();
        for (const auto& [metric, e] : metrics) row[metric] = entry(e);
        per_source[flora::source_name(source)] = std::move(row);
    }
    doc["per_source"] = std::move(per_source);
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        atomic_write(out_path, text);
        write_sidecar(out_path, 0, {a_path, b_path});
    }
    return 0;
}

int cmd_serve(const std::string& catalog_path, flora::ServiceConfig config) {
    if (const char* addr = std::getenv("LISTEN_ADDR")) {
        auto parts = flora::split(addr, ':');
        config.listen_addr = parts[0];
        if (parts.size() > 1) config.port = std::stoi(parts[1]);
    }
    if (const char* bytes = std::getenv("MAX_BODY_BYTES")) {
        config.max_body_bytes = std::stoull(bytes);
    }
    if (const char* url = std::getenv("SCORER_URL")) {
        if (!config.scorer) config.scorer = flora::ScorerConfig{};
        config.scorer->base_url = url;
    }
    if (const char* token = std::getenv("SCORER_TOKEN")) {
        if (config.scorer) config.scorer->auth_token = token;
    }

    auto catalog = load_catalog_file(catalog_path);
    flora::IdentifyService service(catalog, config, &std::cout);
    std::cout << "listening on " << config.listen_addr << ":" << config.port << "\n";
    service.run();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biodiversity dataset assembly and classifier evaluation toolkit"};
    app.set_version_flag("--version", std::string("flora ") + kVersion);
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "parse occurrences into labeled image entries");
    std::string catalog_path, table_path, default_source = "Other", region_spec, out_path;
    std::vector<std::string> dwca_paths;
    flora::TableColumnMap columns;
    bool drop_missing_coords = false;
    ingest->add_option("--catalog", catalog_path, "species catalog CSV")->required();
    ingest->add_option("--dwca", dwca_paths, "Darwin Core Archive ZIP(s)");
    ingest->add_option("--table", table_path, "delimited occurrence table");
    ingest->add_option("--id-col", columns.id_column, "occurrence id column")
        ->default_val("occurrence_id");
    ingest->add_option("--name-col", columns.name_column, "scientific name column")
        ->default_val("scientific_name");
    ingest->add_option("--uri-col", columns.image_uri_column, "image URI column")
        ->default_val("image_uri");
    ingest->add_option("--lat-col", columns.latitude_column, "latitude column");
    ingest->add_option("--lon-col", columns.longitude_column, "longitude column");
    ingest->add_option("--source-col", columns.source_column, "per-row source column");
    ingest->add_option("--source", default_source, "default source for all records");
    ingest->add_option("--region", region_spec, "minlat,maxlat,minlon,maxlon bounding box");
    ingest->add_flag("--drop-missing-coords", drop_missing_coords,
                     "drop records without coordinates");
    ingest->add_option("--out", out_path, "output entries CSV")->required();

    // stats
    auto* stats = app.add_subcommand("stats", "raw per-source statistics of an entries file");
    std::string stats_in, stats_out_path;
    std::size_t stats_min = 50;
    stats->add_option("--in", stats_in, "entries CSV")->required();
    stats->add_option("--min", stats_min, "minimum image threshold");
    stats->add_option("--out", stats_out_path, "output JSON (default stdout)");

    // sample
    auto* sample = app.add_subcommand("sample", "assemble the bounded prioritized manifest");
    std::string sample_in, sample_catalog, sample_out, sample_stats_out, priority_spec;
    flora::SamplingPolicy sampling;
    sample->add_option("--in", sample_in, "entries CSV")->required();
    sample->add_option("--catalog", sample_catalog, "species catalog CSV")->required();
    sample->add_option("--min", sampling.min_images, "minimum images per species");
    sample->add_option("--max", sampling.max_images, "maximum images per species");
    sample->add_option("--seed", sampling.seed, "sampling seed");
    sample->add_option("--priority", priority_spec, "comma-separated source priority order");
    sample->add_option("--out", sample_out, "output manifest CSV")->required();
    sample->add_option("--stats-out", sample_stats_out, "manifest stats JSON");

    // split
    auto* split_cmd = app.add_subcommand("split", "assign train/validation/test splits");
    std::string split_manifest, split_out, split_report_out, fractions_spec;
    flora::SplitPolicy split_policy;
    split_cmd->add_option("--manifest", split_manifest, "manifest CSV")->required();
    split_cmd->add_option("--fractions", fractions_spec, "train,validation,test (default 0.8,0.1,0.1)");
    split_cmd->add_option("--seed", split_policy.seed, "split seed");
    split_cmd->add_option("--out", split_out, "output assignment CSV")->required();
    split_cmd->add_option("--report-out", split_report_out, "provenance report JSON");

    // export
    auto* export_cmd = app.add_subcommand("export", "write the training-import CSV");
    std::string export_manifest, export_splits, export_out, rewrite_from, rewrite_to;
    export_cmd->add_option("--manifest", export_manifest, "manifest CSV")->required();
    export_cmd->add_option("--splits", export_splits, "split assignment CSV")->required();
    export_cmd->add_option("--rewrite-from", rewrite_from, "URI prefix to replace");
    export_cmd->add_option("--rewrite-to", rewrite_to, "replacement URI prefix");
    export_cmd->add_option("--out", export_out, "output import CSV")->required();

    // eval / genus-eval
    std::string eval_pred, eval_truth, eval_catalog, eval_out, eval_format = "json", pr_csv;
    int k_limit = 5;
    double grid_step = 0.01;
    auto add_eval_options = [&](CLI::App* cmd, bool genus) {
        cmd->add_option("--pred", eval_pred, "predictions JSONL")->required();
        cmd->add_option("--truth", eval_truth, "truth CSV")->required();
        if (genus) {
            cmd->add_option("--catalog", eval_catalog, "species catalog CSV")->required();
        }
        cmd->add_option("--k", k_limit, "top-K limit");
        cmd->add_option("--grid-step", grid_step, "PR threshold grid step");
        cmd->add_option("--out", eval_out, "report output (default stdout)");
        cmd->add_option("--format", eval_format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--pr-csv", pr_csv, "PR plot-data CSV output");
    };
    auto* eval_cmd = app.add_subcommand("eval", "evaluate ranked predictions against truth");
    add_eval_options(eval_cmd, false);
    auto* genus_eval = app.add_subcommand("genus-eval", "evaluate at genus level");
    add_eval_options(genus_eval, true);

    // compare
    auto* compare = app.add_subcommand("compare", "metric deltas between two reports");
    std::string cmp_a, cmp_b, cmp_out;
    compare->add_option("--a", cmp_a, "baseline report JSON")->required();
    compare->add_option("--b", cmp_b, "candidate report JSON")->required();
    compare->add_option("--out", cmp_out, "delta output (default stdout)");

    // serve
    auto* serve = app.add_subcommand("serve", "run the identification HTTP service");
    std::string serve_catalog, scorer_url, scorer_token;
    flora::ServiceConfig service_config;
    serve->add_option("--catalog", serve_catalog, "species catalog CSV")->required();
    serve->add_option("--listen", service_config.listen_addr, "listen address");
    serve->add_option("--port", service_config.port, "listen port");
    serve->add_option("--max-body-bytes", service_config.max_body_bytes, "request body cap");
    serve->add_option("--high", service_config.policy.high_above, "HIGH threshold (exclusive)");
    serve->add_option("--medium", service_config.policy.medium_at_or_above,
                      "MEDIUM threshold (inclusive)");
    serve->add_option("--floor", service_config.policy.suggestion_floor,
                      "suggestion floor (inclusive)");
    serve->add_option("--max-suggestions", service_config.policy.max_suggestions,
                      "suggestion list cap");
    serve->add_option("--scorer-url", scorer_url, "external scorer base URL");
    serve->add_option("--scorer-token", scorer_token, "external scorer bearer token");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*ingest) {
            return cmd_ingest(catalog_path, dwca_paths, table_path, columns, default_source,
                              region_spec, drop_missing_coords, out_path);
        }
        if (*stats) return cmd_stats(stats_in, stats_min, stats_out_path);
        if (*sample) {
            if (!priority_spec.empty()) sampling.priority = parse_priority(priority_spec);
            return cmd_sample(sample_in, sample_catalog, sampling, sample_out, sample_stats_out);
        }
        if (*split_cmd) {
            if (!fractions_spec.empty()) {
                auto parts = flora::split(fractions_spec, ',');
                if (parts.size() != 3) {
                    throw flora::Error(flora::ErrorCode::UsageError,
                                       "--fractions expects train,validation,test");
                }
                split_policy.train_fraction = std::stod(parts[0]);
                split_policy.validation_fraction = std::stod(parts[1]);
                split_policy.test_fraction = std::stod(parts[2]);
            }
            return cmd_split(split_manifest, split_policy, split_out, split_report_out);
        }
        if (*export_cmd) {
            return cmd_export(export_manifest, export_splits, rewrite_from, rewrite_to,
                              export_out);
        }
        if (*eval_cmd || *genus_eval) {
            return cmd_eval(eval_pred, eval_truth, eval_catalog, genus_eval->parsed(), k_limit,
                            grid_step, eval_out, eval_format, pr_csv);
        }
        if (*compare) return cmd_compare(cmp_a, cmp_b, cmp_out);
        if (*serve) {
            if (!scorer_url.empty()) {
                flora::ScorerConfig scorer;
                scorer.base_url = scorer_url;
                scorer.auth_token = scorer_token;
                service_config.scorer = scorer;
            }
            return cmd_serve(serve_catalog, service_config);
        }
    } catch (const flora::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == flora::ErrorCode::UsageError ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
