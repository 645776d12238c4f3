#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "sentiscope/sentiscope.hpp"

namespace fs = std::filesystem;
using namespace sentiscope;

namespace {

const fs::path kData = fs::path(SENTISCOPE_TEST_DATA) / "cli";

struct Result {
    int code;
    std::string err;
};

Result run(const std::string& args, const fs::path& scratch) {
    const auto err_file = scratch / "stderr.txt";
    const std::string cmd = std::string(SENTISCOPE_CLI) + " " + args + " 2>" + err_file.string() + " >/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(err_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("sentiscope_test_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string vocab_args() {
    return "--corpus " + (kData / "corpus.jsonl").string() + " --positive " + (kData / "positive.txt").string() +
           " --negative " + (kData / "negative.txt").string();
}

}  // namespace

TEST_CASE("score writes the golden CSV byte for byte", "[cli]") {
    const auto dir = scratch("score");
    const auto r = run("score --out-dir " + dir.string() + " " + vocab_args(), dir);
    REQUIRE(r.code == 0);
    CHECK(slurp(dir / "scores.csv") == slurp(kData / "golden_scores.csv"));
    CHECK_FALSE(fs::exists(dir / "scores.csv.tmp"));
}

TEST_CASE("linear scaling flag changes the scores", "[cli]") {
    const auto dir = scratch("linear");
    REQUIRE(run("--scaling linear score --out-dir " + dir.string() + " " + vocab_args(), dir).code == 0);
    std::istringstream in(slurp(dir / "scores.csv"));
    const auto run_ = io::read_external_scores(in, "scores.csv", "lin");
    CHECK(run_.predictions.at("n01").positive == 0.125);
    CHECK(run_.predictions.at("n08").negative == -0.75);
}

TEST_CASE("evaluate reports each run and the ensembles", "[cli]") {
    const auto dir = scratch("evaluate");
    const auto r = run("evaluate --out-dir " + dir.string() + " --truth " + (kData / "truth.csv").string() +
                           " --run " + (kData / "run_a.csv").string() + " --run " + (kData / "run_b.csv").string(),
                       dir);
    REQUIRE(r.code == 0);
    const auto rows = csv::parse(slurp(dir / "evaluation.csv"), "evaluation.csv");
    REQUIRE(rows.size() == 5);
    CHECK(rows[1].fields[0] == "run_a");
    CHECK(rows[3].fields[0] == "ensemble(all)");
    CHECK(rows[4].fields[0] == "ensemble(top 3)");

    const auto truth = io::load_ground_truth(kData / "truth.csv");
    const auto a = io::import_external_scores(kData / "run_a.csv");
    const auto b = io::import_external_scores(kData / "run_b.csv");
    const auto rep_a = evaluate_model(a, truth);
    const auto rep_b = evaluate_model(b, truth);
    CHECK_THAT(std::stod(rows[1].fields[5]), Catch::Matchers::WithinAbs(*rep_a.score, 1e-12));
    CHECK_THAT(std::stod(rows[2].fields[5]), Catch::Matchers::WithinAbs(*rep_b.score, 1e-12));
    const std::vector<ModelRun> runs = {a, b};
    CHECK_THAT(std::stod(rows[3].fields[5]),
               Catch::Matchers::WithinAbs(*evaluate_model(ensemble(runs, AllRuns{}), truth).score, 1e-12));
    const auto svg = slurp(dir / "evaluation.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("ensemble(top 3)") != std::string::npos);
}

TEST_CASE("finetune-report lists the misaligned items with their text", "[cli]") {
    const auto dir = scratch("finetune");
    const auto r = run("finetune-report --out-dir " + dir.string() + " --truth " + (kData / "truth.csv").string() +
                           " " + vocab_args(),
                       dir);
    REQUIRE(r.code == 0);
    const auto rows = csv::parse(slurp(dir / "finetune_report.csv"), "report");
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0].fields == std::vector<std::string>{"item_id", "metric", "predicted", "truth", "discrepancy", "text"});
    CHECK(rows[1].fields[0] == "n07");
    CHECK(rows[1].fields[5] == "nothing to see here");
}

TEST_CASE("input problems exit with code 2 and name the culprit", "[cli]") {
    const auto dir = scratch("errors");
    auto r = run("score --out-dir " + dir.string() + " --corpus /nonexistent/c.jsonl --positive " +
                     (kData / "positive.txt").string() + " --negative " + (kData / "negative.txt").string(),
                 dir);
    CHECK(r.code == 2);
    CHECK(r.err.find("/nonexistent/c.jsonl") != std::string::npos);

    r = run("frobnicate", dir);
    CHECK(r.code == 2);
    r = run("score", dir);
    CHECK(r.code == 2);
    r = run("--scaling cubic score " + vocab_args(), dir);
    CHECK(r.code == 2);
    r = run("--lags 5..1 lagscan " + vocab_args() + " --prices " + (kData / "prices.csv").string(), dir);
    CHECK(r.code == 2);

    // Malformed corpus line: error carries file and line.
    const auto bad = dir / "bad.jsonl";
    std::ofstream(bad) << slurp(kData / "corpus.jsonl") << "{not json\n";
    r = run("score --out-dir " + dir.string() + " --corpus " + bad.string() + " --positive " +
                (kData / "positive.txt").string() + " --negative " + (kData / "negative.txt").string(),
            dir);
    CHECK(r.code == 2);
    CHECK(r.err.find("bad.jsonl:11") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "scores.csv"));
}

TEST_CASE("too little history is a computation error", "[cli]") {
    const auto dir = scratch("overlap");
    const auto r = run("lagscan --out-dir " + dir.string() + " " + vocab_args() + " --prices " +
                           (kData / "prices.csv").string(),
                       dir);
    CHECK(r.code == 1);
    CHECK(r.err.find("overlap") != std::string::npos);
    CHECK(run("--min-overlap 3 --lags -1..1 lagscan --out-dir " + dir.string() + " " + vocab_args() + " --prices " +
                  (kData / "prices.csv").string(),
              dir)
              .code == 0);
    CHECK(fs::exists(dir / "lagscan.csv"));
    CHECK(fs::exists(dir / "lagscan.svg"));
}

TEST_CASE("synth, lagscan and compound run end to end", "[cli]") {
    const auto dir = scratch("pipeline");
    REQUIRE(run("--seed 5 synth --channels 12 --days 90 --signal-channels 4 --truth-items 50 --out-dir " +
                    dir.string(),
                dir)
                .code == 0);
    const std::string inputs = "--corpus " + (dir / "corpus.jsonl").string() + " --positive " +
                               (dir / "vocab_tuned/positive.txt").string() + " --negative " +
                               (dir / "vocab_tuned/negative.txt").string() + " --prices " +
                               (dir / "prices.csv").string();
    REQUIRE(run("--lags -3..3 compound --out-dir " + (dir / "c").string() + " " + inputs, dir).code == 0);
    const auto sweep = csv::parse(slurp(dir / "c" / "compound.csv"), "compound.csv");
    REQUIRE(sweep.size() == 8);
    CHECK(sweep[0].fields == std::vector<std::string>{"lag", "terminal_corr", "ingredients"});
    const auto table = csv::parse(slurp(dir / "c" / "lag_table.csv"), "lag_table.csv");
    CHECK(table.size() == 1 + 7 * 12 * 4);
    CHECK(csv::parse(slurp(dir / "c" / "compound_Y.csv"), "y")[0].fields == std::vector<std::string>{"date", "Y"});
    CHECK(fs::exists(dir / "c" / "ingredients.csv"));
    CHECK(fs::exists(dir / "c" / "compound.svg"));

    // Same inputs, same bytes.
    REQUIRE(run("--lags -3..3 compound --out-dir " + (dir / "d").string() + " " + inputs, dir).code == 0);
    CHECK(slurp(dir / "c" / "compound.csv") == slurp(dir / "d" / "compound.csv"));
    CHECK(slurp(dir / "c" / "compound_Y.csv") == slurp(dir / "d" / "compound_Y.csv"));
    CHECK(slurp(dir / "c" / "compound.svg") == slurp(dir / "d" / "compound.svg"));
    CHECK(slurp(dir / "c" / "ingredients.csv") == slurp(dir / "d" / "ingredients.csv"));

    REQUIRE(run("--lags -3..3 lagscan --out-dir " + (dir / "l").string() + " " + inputs, dir).code == 0);
    CHECK(csv::parse(slurp(dir / "l" / "lagscan.csv"), "l").size() == 1 + 7 * 4);
}

TEST_CASE("help lists every subcommand and global flag", "[cli]") {
    const auto dir = scratch("help");
    const std::string cmd = std::string(SENTISCOPE_CLI) + " --help > " + (dir / "help.txt").string();
    REQUIRE(std::system(cmd.c_str()) == 0);
    const auto help = slurp(dir / "help.txt");
    for (const char* word : {"score", "evaluate", "finetune-report", "lagscan", "compound", "synth", "--out-dir",
                             "--scaling", "--lags", "--min-overlap", "--greedy", "--seed"}) {
        CHECK(help.find(word) != std::string::npos);
    }
}
