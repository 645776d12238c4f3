#pragma once

#include <span>
#include <string>
#include <vector>

#include "sentiscope/engine.hpp"
#include "sentiscope/eval.hpp"
#include "sentiscope/io.hpp"
#include "sentiscope/timeseries.hpp"

namespace sentiscope {

/// Scores every post of a corpus, keeping corpus order.
[[nodiscard]] inline std::vector<ScoredItem> score_corpus(std::span<const NewsItem> corpus, const Vocabulary& vocab,
                                                          const ScoringConfig& cfg = {}) {
    std::vector<ScoredItem> out;
    out.reserve(corpus.size());
    for (const auto& item : corpus) {
        out.push_back({item.item_id, item.channel, item.timestamp, score(item.text, vocab, cfg)});
    }
    return out;
}

[[nodiscard]] inline ModelRun to_model_run(std::span<const ScoredItem> scored, std::string model_id) {
    ModelRun run;
    run.model_id = std::move(model_id);
    for (const auto& s : scored) run.add(s.item_id, s.scores);
    return run;
}

/// All posts pooled into one channel named `channel`.
[[nodiscard]] inline MetricPanel aggregate_overall(std::span<const ScoredItem> scored,
                                                   const std::string& channel = "all") {
    std::vector<ScoredItem> pooled(scored.begin(), scored.end());
    for (auto& s : pooled) s.channel = channel;
    return aggregate_daily(pooled);
}

}  // namespace sentiscope
