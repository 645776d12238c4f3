#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sentiscope/error.hpp"
#include "sentiscope/scores.hpp"
#include "sentiscope/stats.hpp"

namespace sentiscope {

/// Human assessment of one item, averaged over reviewers.
struct GroundTruthRecord {
    std::string item_id;
    std::vector<double> reviewer_positive;
    std::vector<double> reviewer_negative;
    SentimentScores resolved;

    /// Resolves positive/negative as the reviewer means; the other two
    /// metrics follow from them.
    [[nodiscard]] static GroundTruthRecord from_reviews(std::string item_id, std::vector<double> positive,
                                                        std::vector<double> negative) {
        if (positive.empty() || negative.empty()) {
            throw ValidationError("ground truth '" + item_id + "' needs at least one reviewer");
        }
        auto mean = [](const std::vector<double>& v) {
            double s = 0.0;
            for (double a : v) s += a;
            return s / static_cast<double>(v.size());
        };
        for (double p : positive) {
            if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("ground truth '" + item_id + "': positive outside [0, 1]");
        }
        for (double n : negative) {
            if (!(n >= -1.0 && n <= 0.0)) throw ValidationError("ground truth '" + item_id + "': negative outside [-1, 0]");
        }
        GroundTruthRecord r;
        r.resolved = SentimentScores::from_components(mean(positive), mean(negative));
        r.item_id = std::move(item_id);
        r.reviewer_positive = std::move(positive);
        r.reviewer_negative = std::move(negative);
        return r;
    }

    friend bool operator==(const GroundTruthRecord&, const GroundTruthRecord&) = default;
};

/// One model's predictions keyed by item id.
struct ModelRun {
    std::string model_id;
    std::map<std::string, SentimentScores> predictions;

    void add(const std::string& item_id, const SentimentScores& s) {
        if (!predictions.emplace(item_id, s).second) {
            throw ValidationError("model '" + model_id + "': duplicate item id '" + item_id + "'");
        }
    }

    friend bool operator==(const ModelRun&, const ModelRun&) = default;
};

struct EvalReport {
    std::string model_id;
    std::array<std::optional<double>, 4> per_metric_corr;  // indexed by Metric
    std::optional<double> score;                            // mean of the defined correlations
    std::vector<Metric> excluded_metrics;
    std::size_t items = 0;

    [[nodiscard]] std::optional<double> corr(Metric m) const { return per_metric_corr[static_cast<int>(m)]; }
};

namespace detail {

inline std::string list_ids(const std::vector<std::string>& ids, std::size_t limit = 10) {
    std::string out;
    for (std::size_t i = 0; i < ids.size() && i < limit; ++i) {
        if (i) out += ", ";
        out += ids[i];
    }
    if (ids.size() > limit) out += ", ... (" + std::to_string(ids.size()) + " total)";
    return out;
}

}  // namespace detail

/// Correlates a run against ground truth, metric by metric, over the truth
/// items in their given order. Metrics whose correlation is undefined are
/// listed in excluded_metrics and left out of the score.
[[nodiscard]] inline EvalReport evaluate_model(const ModelRun& run, std::span<const GroundTruthRecord> truth) {
    if (truth.size() < 2) throw InputError("evaluation needs at least 2 ground truth items");
    std::vector<std::string> missing;
    for (const auto& t : truth) {
        if (!run.predictions.contains(t.item_id)) missing.push_back(t.item_id);
    }
    if (!missing.empty()) {
        throw InputError("model '" + run.model_id + "' has no prediction for: " + detail::list_ids(missing));
    }

    EvalReport report;
    report.model_id = run.model_id;
    report.items = truth.size();
    std::vector<double> predicted(truth.size());
    std::vector<double> expected(truth.size());
    double sum = 0.0;
    int defined = 0;
    for (Metric m : kAllMetrics) {
        for (std::size_t i = 0; i < truth.size(); ++i) {
            predicted[i] = run.predictions.at(truth[i].item_id).get(m);
            expected[i] = truth[i].resolved.get(m);
        }
        try {
            const double r = pearson(predicted, expected);
            report.per_metric_corr[static_cast<int>(m)] = r;
            sum += r;
            ++defined;
        } catch (const UndefinedCorrelation&) {
            report.excluded_metrics.push_back(m);
        }
    }
    if (defined > 0) report.score = sum / defined;
    return report;
}

struct AllRuns {};
struct TopK {
    std::size_t k = 3;
    std::span<const GroundTruthRecord> truth;
};
using EnsembleSelection = std::variant<AllRuns, TopK>;

/// Evaluates every run and orders them best first. Ties break on model id;
/// runs without a defined score go last.
[[nodiscard]] inline std::vector<EvalReport> rank_runs(std::span<const ModelRun> runs,
                                                       std::span<const GroundTruthRecord> truth) {
    std::vector<EvalReport> reports;
    reports.reserve(runs.size());
    for (const auto& r : runs) reports.push_back(evaluate_model(r, truth));
    std::stable_sort(reports.begin(), reports.end(), [](const EvalReport& a, const EvalReport& b) {
        if (a.score.has_value() != b.score.has_value()) return a.score.has_value();
        if (a.score && *a.score != *b.score) return *a.score > *b.score;
        return a.model_id < b.model_id;
    });
    return reports;
}

/// Throws InputError unless every run covers the same item ids.
inline void require_same_items(std::span<const ModelRun> runs) {
    if (runs.empty()) return;
    const auto& ref = runs.front().predictions;
    for (const auto& run : runs.subspan(1)) {
        std::vector<std::string> diff;
        for (const auto& [id, s] : ref) {
            if (!run.predictions.contains(id)) diff.push_back("-" + id);
        }
        for (const auto& [id, s] : run.predictions) {
            if (!ref.contains(id)) diff.push_back("+" + id);
        }
        if (!diff.empty()) {
            throw InputError("model '" + run.model_id + "' covers different items than '" +
                             runs.front().model_id + "': " + detail::list_ids(diff));
        }
    }
}

/// Per-item, per-metric mean over the selected runs. Positive and negative
/// are averaged; sentiment and contradictive are rebuilt from the averages.
[[nodiscard]] inline ModelRun ensemble(std::span<const ModelRun> runs, const EnsembleSelection& selection) {
    require_same_items(runs);
    std::vector<const ModelRun*> chosen;
    std::string id;
    if (std::holds_alternative<AllRuns>(selection)) {
        for (const auto& r : runs) chosen.push_back(&r);
        id = "ensemble(all)";
    } else {
        const auto& top = std::get<TopK>(selection);
        const auto ranked = rank_runs(runs, top.truth);
        for (std::size_t i = 0; i < ranked.size() && i < top.k; ++i) {
            for (const auto& r : runs) {
                if (r.model_id == ranked[i].model_id) {
                    chosen.push_back(&r);
                    break;
                }
            }
        }
        id = "ensemble(top " + std::to_string(top.k) + ")";
    }
    if (chosen.empty()) throw InputError("ensemble: empty selection");

    ModelRun out;
    out.model_id = id;
    for (const auto& [item, first] : chosen.front()->predictions) {
        // Running mean: k identical inputs reproduce the input exactly.
        double pos = 0.0;
        double neg = 0.0;
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            const auto& s = chosen[i]->predictions.at(item);
            pos += (s.positive - pos) / static_cast<double>(i + 1);
            neg += (s.negative - neg) / static_cast<double>(i + 1);
        }
        out.predictions.emplace(item, SentimentScores::from_components(std::clamp(pos, 0.0, 1.0),
                                                                       std::clamp(neg, -1.0, 0.0)));
    }
    return out;
}

struct Misalignment {
    std::string item_id;
    Metric metric = Metric::positive;
    double predicted = 0.0;
    double truth_value = 0.0;
    double discrepancy = 0.0;
};

/// Items whose predicted positive or negative metric is off from ground
/// truth by more than `threshold`, worst first. Each item contributes one
/// row, for whichever of the two metrics is further off (positive on ties).
/// Truth items the run does not cover are skipped.
[[nodiscard]] inline std::vector<Misalignment> misalignment_report(const ModelRun& run,
                                                                   std::span<const GroundTruthRecord> truth,
                                                                   double threshold = 0.5) {
    if (!(threshold > 0.0)) throw InputError("misalignment threshold must be > 0");
    std::vector<Misalignment> rows;
    for (const auto& t : truth) {
        const auto it = run.predictions.find(t.item_id);
        if (it == run.predictions.end()) continue;
        const double dpos = std::abs(it->second.positive - t.resolved.positive);
        const double dneg = std::abs(it->second.negative - t.resolved.negative);
        if (dpos <= threshold && dneg <= threshold) continue;
        if (dpos >= dneg) {
            rows.push_back({t.item_id, Metric::positive, it->second.positive, t.resolved.positive, dpos});
        } else {
            rows.push_back({t.item_id, Metric::negative, it->second.negative, t.resolved.negative, dneg});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Misalignment& a, const Misalignment& b) {
        if (a.discrepancy != b.discrepancy) return a.discrepancy > b.discrepancy;
        return a.item_id < b.item_id;
    });
    return rows;
}

}  // namespace sentiscope
