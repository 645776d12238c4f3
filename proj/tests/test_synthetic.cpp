#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "sentiscope/sentiscope.hpp"

using namespace sentiscope;

namespace {

SyntheticConfig small_config(std::uint64_t seed) {
    SyntheticConfig cfg;
    cfg.channels = 20;
    cfg.days = 120;
    cfg.signal_channels = 5;
    cfg.truth_items = 200;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("generator is deterministic per seed", "[synthetic]") {
    const auto a = generate_synthetic(small_config(3));
    const auto b = generate_synthetic(small_config(3));
    const auto c = generate_synthetic(small_config(4));
    CHECK(a.corpus == b.corpus);
    CHECK(a.prices == b.prices);
    CHECK(a.truth == b.truth);
    CHECK(a.signal_channels == b.signal_channels);
    CHECK_FALSE(a.corpus == c.corpus);
    CHECK(a.signal_channels.size() == 5);
    CHECK(a.truth.size() == 200);
    CHECK(a.prices.defined_count() == 120);
}

TEST_CASE("generated files load back unchanged", "[synthetic][io]") {
    const auto data = generate_synthetic(small_config(5));
    std::stringstream corpus;
    io::write_corpus(corpus, data.corpus);
    CHECK(io::read_corpus(corpus, "c") == data.corpus);
    std::istringstream prices(io::format_prices(data.prices));
    CHECK(io::read_prices(prices, "p") == data.prices);
    std::istringstream truth(io::format_ground_truth(data.truth));
    CHECK(io::read_ground_truth(truth, "t") == data.truth);
}

TEST_CASE("generator rejects impossible configurations", "[synthetic]") {
    auto cfg = small_config(1);
    cfg.signal_strength = 1.5;
    CHECK_THROWS_AS(generate_synthetic(cfg), InputError);
    cfg = small_config(1);
    cfg.signal_channels = 21;
    CHECK_THROWS_AS(generate_synthetic(cfg), InputError);
    cfg = small_config(1);
    cfg.planted_lag = 120;
    CHECK_THROWS_AS(generate_synthetic(cfg), InputError);
    cfg = small_config(1);
    cfg.days = 1;
    CHECK_THROWS_AS(generate_synthetic(cfg), InputError);
}

TEST_CASE("the base lexicon lacks the jargon the tuned one adds", "[synthetic]") {
    const auto base = synthetic_vocabulary(false);
    const auto tuned = synthetic_vocabulary(true);
    CHECK(tuned.size() == base.size() + 2);
    const auto text = "diamond hands and a rug pull";
    CHECK(score(text, base) == SentimentScores{});
    const auto s = score(text, tuned);
    CHECK(s.positive > 0.0);
    CHECK(s.negative < 0.0);

    const auto padded = padded_vocabulary(300, 500, 1);
    CHECK(padded.count(Polarity::positive) == 300);
    CHECK(padded.count(Polarity::negative) == 500);
    for (const auto& e : tuned.entries()) {
        CHECK(std::find(padded.entries().begin(), padded.entries().end(), e) != padded.entries().end());
    }
}

TEST_CASE("planted lead shows up at the matching negative lag", "[synthetic][timeseries]") {
    auto cfg = small_config(11);
    cfg.channels = 40;
    cfg.signal_channels = 8;
    cfg.days = 150;
    cfg.planted_lag = 2;
    const auto data = generate_synthetic(cfg);
    const auto scored = score_corpus(data.corpus, synthetic_vocabulary(true));
    const auto panel = aggregate_daily(scored);
    const auto sweep = lag_sweep(panel, price_diff(data.prices), parse_lag_window("-5..5"));
    CHECK(best_lag(sweep).lag == -2);
}

TEST_CASE("adding the withheld jargon improves agreement with ground truth", "[synthetic][eval]") {
    const auto data = generate_synthetic(small_config(6));
    const auto base = to_model_run(score_corpus(data.corpus, synthetic_vocabulary(false)), "base");
    const auto tuned = to_model_run(score_corpus(data.corpus, synthetic_vocabulary(true)), "tuned");
    CHECK(*evaluate_model(tuned, data.truth).score > *evaluate_model(base, data.truth).score);
    CHECK(misalignment_report(tuned, data.truth).size() < misalignment_report(base, data.truth).size());
}

TEST_CASE("overall aggregation pools every channel", "[synthetic][timeseries]") {
    const auto data = generate_synthetic(small_config(7));
    const auto scored = score_corpus(data.corpus, synthetic_vocabulary(true));
    const auto overall = aggregate_overall(scored);
    REQUIRE(overall.channels() == std::vector<std::string>{"all"});
    CHECK(overall.post_days(0) == 120);
}
