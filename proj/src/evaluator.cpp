#include "flora/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "flora/hash.hpp"
#include "flora/text.hpp"

namespace flora {

namespace {

using nlohmann::json;

constexpr double kSumTolerance = 1e-3;

// Predictions sorted by image_id so every reduction runs in canonical order.
std::vector<const PredictionRecord*> canonical_order(
    const std::vector<PredictionRecord>& predictions) {
    std::vector<const PredictionRecord*> order;
    order.reserve(predictions.size());
    for (const auto& p : predictions) order.push_back(&p);
    std::sort(order.begin(), order.end(),
              [](const PredictionRecord* a, const PredictionRecord* b) {
                  return a->image_id < b->image_id;
              });
    return order;
}

const std::string& truth_label_for(const GroundTruth& truth, const std::string& image_id) {
    auto it = truth.truth.find(image_id);
    if (it == truth.truth.end()) {
        throw Error(ErrorCode::MissingTruth, "no truth label for image " + image_id);
    }
    return it->second;
}

// (score desc, label asc) order applied to a copy of the ranked list.
std::vector<RankedScore> tie_sorted(const std::vector<RankedScore>& ranked) {
    std::vector<RankedScore> sorted = ranked;
    std::sort(sorted.begin(), sorted.end(), [](const RankedScore& a, const RankedScore& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.label_id < b.label_id;
    });
    return sorted;
}

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double value) {
        double y = value - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

std::vector<double> EvalConfig::default_grid() {
    std::vector<double> grid;
    grid.reserve(101);
    for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
    return grid;
}

void validate_prediction(const PredictionRecord& record) {
    if (record.image_id.empty()) {
        throw Error(ErrorCode::MalformedRecord, "empty image_id");
    }
    double prev = 1.0;
    double sum = 0.0;
    for (const auto& [label, score] : record.ranked) {
        if (label.empty()) throw Error(ErrorCode::MalformedRecord, "empty label");
        if (score < 0.0 || score > 1.0) {
            throw Error(ErrorCode::ScoreOutOfRange,
                        record.image_id + ": score " + std::to_string(score));
        }
        if (score > prev + 1e-12) {
            throw Error(ErrorCode::MalformedRecord,
                        record.image_id + ": scores not nonincreasing");
        }
        prev = score;
        sum += score;
    }
    if (record.is_full_distribution && std::abs(sum - 1.0) > kSumTolerance) {
        throw Error(ErrorCode::DistributionNotNormalized,
                    record.image_id + ": scores sum to " + std::to_string(sum));
    }
}

PredictionLoadResult load_predictions(std::istream& in) {
    PredictionLoadResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        PredictionRecord record;
        try {
            json doc = json::parse(trimmed);
            record.image_id = doc.at("image_id").get<std::string>();
            record.provider_id = doc.value("provider_id", "");
            record.is_full_distribution = doc.value("full", false);
            for (const auto& pair : doc.at("ranked")) {
                if (!pair.is_array() || pair.size() != 2) {
                    throw Error(ErrorCode::MalformedRecord, "ranked entry is not [label, score]");
                }
                record.ranked.push_back(
                    {pair[0].get<std::string>(), pair[1].get<double>()});
            }
            validate_prediction(record);
        } catch (const Error& e) {
            result.rejected.push_back({line_no, e.code(), e.what()});
            continue;
        } catch (const json::exception& e) {
            result.rejected.push_back({line_no, ErrorCode::MalformedRecord, e.what()});
            continue;
        }
        result.records.push_back(std::move(record));
    }
    return result;
}

GroundTruth load_truth(std::istream& in) {
    DelimitedReader reader(in);
    std::vector<std::string> row;
    if (!reader.next_row(row)) throw Error(ErrorCode::EmptyInput, "empty truth file");
    GroundTruth truth;
    while (reader.next_row(row)) {
        if (row.size() == 1 && trim(row[0]).empty()) continue;
        if (row.size() < 2) throw Error(ErrorCode::MalformedRecord, "truth row needs 2+ columns");
        std::string image_id = trim(row[0]);
        truth.truth[image_id] = trim(row[1]);
        if (row.size() >= 3) {
            if (auto source = parse_source(row[2])) truth.source_of[image_id] = *source;
        }
    }
    if (truth.truth.empty()) throw Error(ErrorCode::EmptyInput, "truth file has no rows");
    return truth;
}

std::optional<std::size_t> rank_of(const PredictionRecord& prediction,
                                   const std::string& truth_label) {
    const auto sorted = tie_sorted(prediction.ranked);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].label_id == truth_label) return i + 1;
    }
    return std::nullopt;
}

double top_k(const std::vector<PredictionRecord>& predictions, const GroundTruth& truth,
             std::size_t k) {
    if (predictions.empty()) return 0.0;
    std::size_t hits = 0;
    for (const PredictionRecord* p : canonical_order(predictions)) {
        auto rank = rank_of(*p, truth_label_for(truth, p->image_id));
        if (rank && *rank <= k) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

double mrr_at_5(const std::vector<PredictionRecord>& predictions, const GroundTruth& truth) {
    if (predictions.empty()) return 0.0;
    KahanSum sum;
    for (const PredictionRecord* p : canonical_order(predictions)) {
        auto rank = rank_of(*p, truth_label_for(truth, p->image_id));
        if (rank && *rank <= 5) sum.add(1.0 / static_cast<double>(*rank));
    }
    return sum.sum / static_cast<double>(predictions.size());
}

PrPoint pr_at_threshold(const std::vector<PredictionRecord>& predictions,
                        const GroundTruth& truth, double threshold) {
    // species universe = labels present in truth over the evaluated images
    std::set<std::string> species;
    for (const PredictionRecord* p : canonical_order(predictions)) {
        species.insert(truth_label_for(truth, p->image_id));
    }

    struct Counts {
        std::size_t tp = 0, fp = 0, fn = 0;
    };
    std::map<std::string, Counts> counts;
    for (const auto& label : species) counts[label];

    for (const PredictionRecord* p : canonical_order(predictions)) {
        const std::string& truth_label = truth_label_for(truth, p->image_id);
        std::string identified;
        if (!p->ranked.empty()) {
            const auto sorted = tie_sorted(p->ranked);
            if (sorted.front().score >= threshold) identified = sorted.front().label_id;
        }
        if (identified.empty()) {
            ++counts[truth_label].fn;
        } else if (identified == truth_label) {
            ++counts[truth_label].tp;
        } else {
            ++counts[truth_label].fn;
            if (counts.count(identified)) ++counts[identified].fp;
        }
    }

    PrPoint point;
    point.threshold = threshold;
    KahanSum precision_sum;
    KahanSum recall_sum;
    std::size_t precision_species = 0;
    for (const auto& label : species) {
        const Counts& c = counts.at(label);
        if (c.tp + c.fp > 0) {
            precision_sum.add(static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp));
            ++precision_species;
        }
        const std::size_t actual = c.tp + c.fn;
        recall_sum.add(actual == 0 ? 0.0
                                   : static_cast<double>(c.tp) / static_cast<double>(actual));
    }
    point.precision_excluded_species = species.size() - precision_species;
    if (precision_species > 0) {
        point.macro_precision = precision_sum.sum / static_cast<double>(precision_species);
    }
    point.macro_recall =
        species.empty() ? 0.0 : recall_sum.sum / static_cast<double>(species.size());
    return point;
}

std::pair<std::vector<PrPoint>, double> pr_curve_and_auc(
    const std::vector<PredictionRecord>& predictions, const GroundTruth& truth,
    const EvalConfig& config) {
    std::vector<double> grid =
        config.threshold_grid.empty() ? EvalConfig::default_grid() : config.threshold_grid;

    std::vector<PrPoint> points;
    points.reserve(grid.size());
    for (double threshold : grid) {
        points.push_back(pr_at_threshold(predictions, truth, threshold));
    }

    // trapezoid over (recall, precision), sorted by recall, clamped to [0,1];
    // grid points with undefined precision carry no curve point
    std::vector<std::pair<double, double>> curve;
    for (const auto& point : points) {
        if (!point.macro_precision) continue;
        curve.emplace_back(std::clamp(point.macro_recall, 0.0, 1.0),
                           std::clamp(*point.macro_precision, 0.0, 1.0));
    }
    std::sort(curve.begin(), curve.end());
    double auc = 0.0;
    if (!curve.empty()) {
        // anchor at recall 0 so a single-recall curve still has area
        if (curve.front().first > 0.0) {
            curve.insert(curve.begin(), {0.0, curve.front().second});
        }
        for (std::size_t i = 1; i < curve.size(); ++i) {
            const auto& [r0, p0] = curve[i - 1];
            const auto& [r1, p1] = curve[i];
            auc += (r1 - r0) * (p0 + p1) / 2.0;
        }
    }
    return {std::move(points), auc};
}

std::map<Source, MetricTriple> per_source_report(
    const std::vector<PredictionRecord>& predictions, const GroundTruth& truth) {
    std::map<Source, std::vector<PredictionRecord>> by_source;
    for (const PredictionRecord* p : canonical_order(predictions)) {
        auto it = truth.source_of.find(p->image_id);
        if (it == truth.source_of.end()) {
            throw Error(ErrorCode::MissingSource, "no source for image " + p->image_id);
        }
        by_source[it->second].push_back(*p);
    }
    std::map<Source, MetricTriple> report;
    for (const auto& [source, preds] : by_source) {
        MetricTriple triple;
        triple.top1 = top_k(preds, truth, 1);
        triple.top5 = top_k(preds, truth, 5);
        triple.mrr = mrr_at_5(preds, truth);
        report[source] = triple;
    }
    return report;
}

PredictionRecord genus_aggregate(const PredictionRecord& prediction,
                                 const SpeciesCatalog& catalog) {
    std::map<std::string, KahanSum> genus_scores;
    for (const auto& [label, score] : prediction.ranked) {
        genus_scores[catalog.genus_of(label)].add(score);
    }
    PredictionRecord out;
    out.image_id = prediction.image_id;
    out.provider_id = prediction.provider_id;
    out.is_full_distribution = prediction.is_full_distribution;
    for (const auto& [genus, sum] : genus_scores) {
        out.ranked.push_back({genus, sum.sum});
    }
    std::sort(out.ranked.begin(), out.ranked.end(),
              [](const RankedScore& a, const RankedScore& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.label_id < b.label_id;
              });
    return out;
}

GroundTruth genus_truth(const GroundTruth& truth, const SpeciesCatalog& catalog) {
    GroundTruth out;
    out.source_of = truth.source_of;
    for (const auto& [image_id, label] : truth.truth) {
        out.truth[image_id] = catalog.genus_of(label);
    }
    return out;
}

EvalReport evaluate(const std::vector<PredictionRecord>& predictions, const GroundTruth& truth,
                    const EvalConfig& config) {
    EvalReport report;
    report.n_images = predictions.size();
    report.top1 = top_k(predictions, truth, 1);
    report.top5 = top_k(predictions, truth, static_cast<std::size_t>(config.k_limit));
    report.mrr = mrr_at_5(predictions, truth);
    auto [points, auc] = pr_curve_and_auc(predictions, truth, config);
    report.pr_points = std::move(points);
    report.auc = auc;
    if (!truth.source_of.empty()) {
        report.per_source = per_source_report(predictions, truth);
    }
    std::vector<std::string> ids;
    ids.reserve(predictions.size());
    for (const auto& p : predictions) ids.push_back(p.image_id);
    std::sort(ids.begin(), ids.end());
    std::string joined;
    for (const auto& id : ids) {
        joined += id;
        joined += '\n';
    }
    report.image_set_digest = stable_hash128_hex(joined);
    if (!predictions.empty()) report.provider_id = predictions.front().provider_id;
    return report;
}

namespace {

DeltaEntry make_delta(double a, double b) {
    DeltaEntry entry;
    entry.raw = b - a;
    std::string magnitude = format_fixed_banker(std::abs(entry.raw), 2);
    entry.display = (entry.raw < 0 && magnitude != "0.00" ? "-" : "+") + magnitude;
    return entry;
}

}  // namespace

DeltaReport compare_reports(const EvalReport& a, const EvalReport& b) {
    if (a.n_images != b.n_images || a.image_set_digest != b.image_set_digest) {
        throw Error(ErrorCode::MismatchedImageSets,
                    "reports were computed over different image sets");
    }
    DeltaReport delta;
    delta.top1 = make_delta(a.top1, b.top1);
    delta.top5 = make_delta(a.top5, b.top5);
    delta.mrr = make_delta(a.mrr, b.mrr);
    delta.auc = make_delta(a.auc, b.auc);
    for (const auto& [source, triple_a] : a.per_source) {
        auto it = b.per_source.find(source);
        if (it == b.per_source.end()) continue;
        delta.per_source[source]["top1"] = make_delta(triple_a.top1, it->second.top1);
        delta.per_source[source]["top5"] = make_delta(triple_a.top5, it->second.top5);
        delta.per_source[source]["mrr"] = make_delta(triple_a.mrr, it->second.mrr);
    }
    return delta;
}

void write_report_json(std::ostream& out, const EvalReport& report) {
    json doc;
    doc["n_images"] = report.n_images;
    doc["provider_id"] = report.provider_id;
    doc["image_set_digest"] = report.image_set_digest;
    doc["top1"] = report.top1;
    doc["top5"] = report.top5;
    doc["mrr"] = report.mrr;
    doc["auc"] = report.auc;
    json points = json::array();
    for (const auto& point : report.pr_points) {
        json p;
        p["threshold"] = point.threshold;
        if (point.macro_precision) {
            p["precision"] = *point.macro_precision;
        } else {
            p["precision"] = nullptr;
        }
        p["recall"] = point.macro_recall;
        p["precision_excluded_species"] = point.precision_excluded_species;
        points.push_back(std::move(p));
    }
    doc["pr_points"] = std::move(points);
    json per_source = json::object();
    for (const auto& [source, triple] : report.per_source) {
        per_source[source_name(source)] = {
            {"top1", triple.top1}, {"top5", triple.top5}, {"mrr", triple.mrr}};
    }
    doc["per_source"] = std::move(per_source);
    out << doc.dump(2) << "\n";
}

EvalReport read_report_json(std::istream& in) {
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, std::string("report: ") + e.what());
    }
    EvalReport report;
    report.n_images = doc.value("n_images", std::size_t{0});
    report.provider_id = doc.value("provider_id", "");
    report.image_set_digest = doc.value("image_set_digest", "");
    report.top1 = doc.value("top1", 0.0);
    report.top5 = doc.value("top5", 0.0);
    report.mrr = doc.value("mrr", 0.0);
    report.auc = doc.value("auc", 0.0);
    for (const auto& p : doc.value("pr_points", json::array())) {
        PrPoint point;
        point.threshold = p.value("threshold", 0.0);
        if (p.contains("precision") && !p["precision"].is_null()) {
            point.macro_precision = p["precision"].get<double>();
        }
        point.macro_recall = p.value("recall", 0.0);
        point.precision_excluded_species = p.value("precision_excluded_species", std::size_t{0});
        report.pr_points.push_back(point);
    }
    if (doc.contains("per_source")) {
        for (const auto& [name, triple] : doc["per_source"].items()) {
            auto source = parse_source(name);
            if (!source) continue;
            report.per_source[*source] = {triple.value("top1", 0.0), triple.value("top5", 0.0),
                                          triple.value("mrr", 0.0)};
        }
    }
    return report;
}

void write_pr_csv(std::ostream& out, const std::vector<PrPoint>& points) {
    out << "threshold,precision,recall\n";
    for (const auto& point : points) {
        out << format_fixed_banker(point.threshold, 2) << ',';
        if (point.macro_precision) {
            out << *point.macro_precision;
        }
        out << ',' << point.macro_recall << '\n';
    }
}

}  // namespace flora
