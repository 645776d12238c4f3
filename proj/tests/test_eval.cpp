#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "oracles/pearson.hpp"
#include "sentiscope/eval.hpp"
#include "sentiscope/io.hpp"

using namespace sentiscope;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<GroundTruthRecord> varied_truth(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<GroundTruthRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(GroundTruthRecord::from_reviews("t" + std::to_string(i), {u(rng), u(rng)}, {-u(rng), -u(rng)}));
    }
    return out;
}

ModelRun run_from_truth(const std::vector<GroundTruthRecord>& truth, std::string id) {
    ModelRun run;
    run.model_id = std::move(id);
    for (const auto& t : truth) run.add(t.item_id, t.resolved);
    return run;
}

// Random predictions that track the truth with the given noise.
ModelRun noisy_run(const std::vector<GroundTruthRecord>& truth, std::string id, double noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, noise);
    ModelRun run;
    run.model_id = std::move(id);
    for (const auto& t : truth) {
        run.add(t.item_id, SentimentScores::from_components(std::clamp(t.resolved.positive + n(rng), 0.0, 1.0),
                                                            std::clamp(t.resolved.negative + n(rng), -1.0, 0.0)));
    }
    return run;
}

}  // namespace

TEST_CASE("ground truth resolves to the reviewer mean", "[eval]") {
    const auto r = GroundTruthRecord::from_reviews("x", {0.2, 0.4}, {-0.6, 0.0});
    CHECK_THAT(r.resolved.positive, WithinAbs(0.3, 1e-15));
    CHECK_THAT(r.resolved.negative, WithinAbs(-0.3, 1e-15));
    CHECK_THAT(r.resolved.contradictive, WithinAbs(0.3, 1e-15));
    CHECK_NOTHROW(validate(r.resolved));
    CHECK_THROWS_AS(GroundTruthRecord::from_reviews("x", {}, {-0.1}), ValidationError);
    CHECK_THROWS_AS(GroundTruthRecord::from_reviews("x", {1.2}, {-0.1}), ValidationError);
}

TEST_CASE("perfect predictions score one", "[eval]") {
    const auto truth = varied_truth(10, 1);
    const auto rep = evaluate_model(run_from_truth(truth, "self"), truth);
    for (Metric m : kAllMetrics) CHECK_THAT(*rep.corr(m), WithinAbs(1.0, 1e-12));
    CHECK_THAT(*rep.score, WithinAbs(1.0, 1e-12));
    CHECK(rep.excluded_metrics.empty());
    CHECK(rep.items == 10);
}

TEST_CASE("swapping positive and |negative| gives the oracle correlations", "[eval]") {
    const auto truth = varied_truth(12, 2);
    ModelRun run;
    run.model_id = "swapped";
    for (const auto& t : truth) {
        run.add(t.item_id, SentimentScores::from_components(-t.resolved.negative, -t.resolved.positive));
    }
    const auto rep = evaluate_model(run, truth);
    // sentiment flips sign exactly; contradictive is unchanged.
    CHECK_THAT(*rep.corr(Metric::sentiment), WithinAbs(-1.0, 1e-12));
    CHECK_THAT(*rep.corr(Metric::contradictive), WithinAbs(1.0, 1e-12));
    std::vector<double> pred, want;
    for (const auto& t : truth) pred.push_back(-t.resolved.negative), want.push_back(t.resolved.positive);
    CHECK_THAT(*rep.corr(Metric::positive), WithinAbs(oracle::pearson(pred, want), 1e-12));
}

TEST_CASE("constant truth metrics are excluded from the score", "[eval]") {
    std::vector<GroundTruthRecord> truth;
    for (int i = 0; i < 6; ++i) {
        truth.push_back(GroundTruthRecord::from_reviews("t" + std::to_string(i), {0.1 * i}, {0.0}));
    }
    const auto run = noisy_run(truth, "m", 0.05, 3);
    const auto rep = evaluate_model(run, truth);
    // negative and contradictive are constant zero in the truth.
    REQUIRE(rep.excluded_metrics == std::vector<Metric>{Metric::negative, Metric::contradictive});
    CHECK_FALSE(rep.corr(Metric::negative).has_value());
    CHECK_THAT(*rep.score, WithinAbs((*rep.corr(Metric::sentiment) + *rep.corr(Metric::positive)) / 2, 1e-15));
}

TEST_CASE("evaluate_model input errors", "[eval]") {
    const auto truth = varied_truth(5, 4);
    auto run = run_from_truth(truth, "m");
    run.predictions.erase("t3");
    try {
        (void)evaluate_model(run, truth);
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("t3") != std::string::npos);
    }
    CHECK_THROWS_AS(evaluate_model(run_from_truth(truth, "m"), std::span(truth).first(1)), InputError);
    CHECK_THROWS_AS(run.add("t0", {}), ValidationError);
}

TEST_CASE("ensemble averages positive and negative", "[eval]") {
    const std::vector<GroundTruthRecord> truth = {GroundTruthRecord::from_reviews("a", {0.5}, {-0.1}),
                                                  GroundTruthRecord::from_reviews("b", {0.1}, {-0.5})};
    ModelRun r1{"r1", {}}, r2{"r2", {}};
    r1.add("a", SentimentScores::from_components(0.2, -0.4));
    r1.add("b", SentimentScores::from_components(0.0, 0.0));
    r2.add("a", SentimentScores::from_components(0.6, 0.0));
    r2.add("b", SentimentScores::from_components(0.2, -0.2));
    const std::vector<ModelRun> runs = {r1, r2};
    const auto e = ensemble(runs, AllRuns{});
    CHECK(e.model_id == "ensemble(all)");
    const auto& a = e.predictions.at("a");
    CHECK_THAT(a.positive, WithinAbs(0.4, 1e-15));
    CHECK_THAT(a.negative, WithinAbs(-0.2, 1e-15));
    CHECK_THAT(a.contradictive, WithinAbs(std::sqrt(0.08), 1e-15));
    CHECK_NOTHROW(validate(a));

    const std::vector<ModelRun> one = {r1};
    CHECK(ensemble(one, AllRuns{}).predictions == r1.predictions);
    CHECK_THROWS_AS(ensemble(std::span<const ModelRun>{}, AllRuns{}), InputError);

    ModelRun r3{"r3", {}};
    r3.add("a", {});
    const std::vector<ModelRun> mismatched = {r1, r3};
    CHECK_THROWS_AS(ensemble(mismatched, AllRuns{}), InputError);
}

TEST_CASE("top-k ensemble picks the best scoring runs", "[eval]") {
    const auto truth = varied_truth(40, 5);
    std::vector<ModelRun> runs;
    const double noise[] = {0.30, 0.05, 0.50, 0.10, 0.20};
    for (int i = 0; i < 5; ++i) runs.push_back(noisy_run(truth, "m" + std::to_string(i), noise[i], 10 + i));

    std::vector<std::pair<double, std::string>> scored;
    for (const auto& r : runs) scored.emplace_back(*evaluate_model(r, truth).score, r.model_id);
    std::sort(scored.rbegin(), scored.rend());
    const auto ranked = rank_runs(runs, truth);
    for (std::size_t i = 0; i < runs.size(); ++i) CHECK(ranked[i].model_id == scored[i].second);

    const auto top = ensemble(runs, TopK{3, truth});
    CHECK(top.model_id == "ensemble(top 3)");
    std::vector<ModelRun> best;
    for (int i = 0; i < 3; ++i) {
        for (const auto& r : runs) {
            if (r.model_id == scored[i].second) best.push_back(r);
        }
    }
    const auto manual = ensemble(best, AllRuns{});
    for (const auto& [id, s] : top.predictions) {
        CHECK_THAT(s.positive, WithinAbs(manual.predictions.at(id).positive, 1e-15));
        CHECK_THAT(s.negative, WithinAbs(manual.predictions.at(id).negative, 1e-15));
    }
}

TEST_CASE("ensemble of identical runs is the run", "[eval][property]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto truth = varied_truth(15, 100 + seed);
        const auto run = noisy_run(truth, "m", 0.2, seed);
        const std::vector<ModelRun> copies(1 + seed % 7, run);
        REQUIRE(ensemble(copies, AllRuns{}).predictions == run.predictions);
    }
}

TEST_CASE("misalignment report flags large discrepancies", "[eval]") {
    const std::vector<GroundTruthRecord> truth = {GroundTruthRecord::from_reviews("a", {0.2}, {0.0}),
                                                  GroundTruthRecord::from_reviews("b", {0.2}, {0.0}),
                                                  GroundTruthRecord::from_reviews("c", {0.0}, {-0.9})};
    ModelRun run{"m", {}};
    run.add("a", SentimentScores::from_components(0.9, 0.0));
    run.add("b", SentimentScores::from_components(0.6, 0.0));
    run.add("c", SentimentScores::from_components(0.0, -0.1));
    const auto rows = misalignment_report(run, truth);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].item_id == "c");
    CHECK(rows[0].metric == Metric::negative);
    CHECK_THAT(rows[0].discrepancy, WithinAbs(0.8, 1e-12));
    CHECK(rows[1].item_id == "a");
    CHECK(rows[1].metric == Metric::positive);
    CHECK_THAT(rows[1].discrepancy, WithinAbs(0.7, 1e-12));
    CHECK(rows[1].predicted == 0.9);
    CHECK(rows[1].truth_value == 0.2);

    CHECK(misalignment_report(run_from_truth(truth, "self"), truth).empty());
    CHECK_THROWS_AS(misalignment_report(run, truth, 0.0), InputError);
}

TEST_CASE("raising the threshold never adds rows", "[eval][property]") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto truth = varied_truth(50, seed);
        const auto run = noisy_run(truth, "m", 0.4, seed + 1000);
        std::size_t prev = SIZE_MAX;
        for (double th = 0.05; th < 1.0; th += 0.05) {
            const auto rows = misalignment_report(run, truth, th);
            REQUIRE(rows.size() <= prev);
            prev = rows.size();
            for (std::size_t i = 1; i < rows.size(); ++i) REQUIRE(rows[i - 1].discrepancy >= rows[i].discrepancy);
        }
    }
}

TEST_CASE("external scores import", "[eval][io]") {
    std::istringstream compound_only(
        "item_id,compound,sentiment,positive,negative,contradictive\n"
        "t1,0.7,,,,\n"
        "t2,-0.25,,,,\n");
    const auto run = io::read_external_scores(compound_only, "ext.csv", "vader");
    CHECK(run.model_id == "vader");
    CHECK(run.predictions.at("t1") == derive_four_metrics(0.7));
    CHECK(run.predictions.at("t2").negative == -0.25);

    std::istringstream bad_sum(
        "item_id,compound,sentiment,positive,negative,contradictive\n"
        "t1,,0.1,0.5,-0.5,0.5\n");
    CHECK_THROWS_AS(io::read_external_scores(bad_sum, "ext.csv", "m"), ValidationError);

    const auto s = SentimentScores::from_components(0.3, -0.12);
    std::istringstream four("item_id,compound,sentiment,positive,negative,contradictive\n"
                            "t9,," + csv::format_number(s.sentiment) + ",0.3,-0.12," +
                            csv::format_number(s.contradictive) + "\n");
    CHECK(io::read_external_scores(four, "ext.csv", "m").predictions.at("t9") == s);

    std::istringstream malformed(
        "item_id,compound,sentiment,positive,negative,contradictive\n"
        "t1,0.2,,,,\n"
        "t2,abc,,,,\n");
    try {
        (void)io::read_external_scores(malformed, "ext.csv", "m");
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("ext.csv:3") != std::string::npos);
    }
}
