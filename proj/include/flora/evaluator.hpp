#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "flora/catalog.hpp"
#include "flora/errors.hpp"
#include "flora/source.hpp"

namespace flora {

struct RankedScore {
    std::string label_id;
    double score = 0.0;
};

struct PredictionRecord {
    std::string image_id;
    std::vector<RankedScore> ranked;  // scores nonincreasing
    std::string provider_id;
    bool is_full_distribution = false;
};

struct GroundTruth {
    std::map<std::string, std::string> truth;  // image_id -> label_id
    std::map<std::string, Source> source_of;
};

struct EvalConfig {
    int k_limit = 5;
    std::vector<double> threshold_grid;  // default 0.00..1.00 step 0.01

    static std::vector<double> default_grid();
};

struct PrPoint {
    double threshold = 0.0;
    // Unset when every species had zero predicted positives at this
    // threshold (0/0 precision is excluded, not zero-filled).
    std::optional<double> macro_precision;
    double macro_recall = 0.0;
    std::size_t precision_excluded_species = 0;
};

struct MetricTriple {
    double top1 = 0.0;
    double top5 = 0.0;
    double mrr = 0.0;
};

struct EvalReport {
    double top1 = 0.0;
    double top5 = 0.0;
    double mrr = 0.0;
    std::vector<PrPoint> pr_points;
    double auc = 0.0;
    std::map<Source, MetricTriple> per_source;
    std::size_t n_images = 0;
    std::string image_set_digest;  // identity of the evaluated image set
    std::string provider_id;
};

struct LoadDiagnostic {
    std::size_t line = 0;
    ErrorCode code = ErrorCode::MalformedRecord;
    std::string message;
};

struct PredictionLoadResult {
    std::vector<PredictionRecord> records;
    std::vector<LoadDiagnostic> rejected;
};

// Line-delimited JSON records: {"image_id", "provider_id", "full",
// "ranked": [[label, score], ...]}. Invalid records are rejected
// individually with diagnostics, not fatally.
PredictionLoadResult load_predictions(std::istream& in);

// Validates one record against the score invariants; throws on violation.
void validate_prediction(const PredictionRecord& record);

// Truth file: image_id,label_id,source with header.
GroundTruth load_truth(std::istream& in);

// 1-based rank of truth_label under (score desc, label_id asc) ordering;
// nullopt when the label is not listed.
std::optional<std::size_t> rank_of(const PredictionRecord& prediction,
                                   const std::string& truth_label);

double top_k(const std::vector<PredictionRecord>& predictions, const GroundTruth& truth,
             std::size_t k);

double mrr_at_5(const std::vector<PredictionRecord>& predictions, const GroundTruth& truth);

PrPoint pr_at_threshold(const std::vector<PredictionRecord>& predictions,
                        const GroundTruth& truth, double threshold);

std::pair<std::vector<PrPoint>, double> pr_curve_and_auc(
    const std::vector<PredictionRecord>& predictions, const GroundTruth& truth,
    const EvalConfig& config = {});

std::map<Source, MetricTriple> per_source_report(
    const std::vector<PredictionRecord>& predictions, const GroundTruth& truth);

// Sums species scores into genus scores via the catalog; compensated
// summation keeps the totals exact to 1e-12.
PredictionRecord genus_aggregate(const PredictionRecord& prediction,
                                 const SpeciesCatalog& catalog);

// Truth labels mapped to genus for evaluating aggregated predictions.
GroundTruth genus_truth(const GroundTruth& truth, const SpeciesCatalog& catalog);

EvalReport evaluate(const std::vector<PredictionRecord>& predictions, const GroundTruth& truth,
                    const EvalConfig& config = {});

struct DeltaEntry {
    double raw = 0.0;
    std::string display;  // half-to-even, 2 decimals, explicit sign
};

struct DeltaReport {
    DeltaEntry top1, top5, mrr, auc;
    std::map<Source, std::map<std::string, DeltaEntry>> per_source;  // metric name -> delta
};

// Metric-wise b - a; both reports must cover the same image set.
DeltaReport compare_reports(const EvalReport& a, const EvalReport& b);

void write_report_json(std::ostream& out, const EvalReport& report);
EvalReport read_report_json(std::istream& in);

// threshold,precision,recall rows for external chart tools; precision blank
// where undefined.
void write_pr_csv(std::ostream& out, const std::vector<PrPoint>& points);

}  // namespace flora
