#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "fht/experiments.hpp"

using namespace fht;

namespace {
std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}
} // namespace

TEST_CASE("experiment registry") {
    CHECK(experiment_names().size() == 9);
    ExperimentConfig cfg;
    cfg.name = "nope";
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg.name = "hilbert_ratio";
    cfg.p_list = {0.5};
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("hilbert_ratio stays within the ledger bounds and is 1 at p = 2") {
    ExperimentConfig cfg;
    cfg.name = "hilbert_ratio";
    cfg.p_list = {2.0, 4.0};
    cfg.trials = 15;
    cfg.seed = 7;
    ExperimentResult res = run_experiment(cfg);
    CHECK(res.ok);
    CHECK(res.csv.substr(0, res.csv.find('\n')) == "trial,p,terms,maxlen,ratio");
    // Unimodular symbols are L2 isometries: every p = 2 ratio is exactly 1.
    const auto& stats2 = res.summary["stats"]["2"];
    CHECK(stats2["min"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(stats2["max"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(res.summary["stats"]["4"]["max"].get<double>() <=
          theoretical_bound(BoundKind::c, 4.0));
}

TEST_CASE("experiment reruns are byte-identical and emit files") {
    ExperimentConfig cfg;
    cfg.name = "khintchine";
    cfg.p_list = {2.0, 4.0};
    cfg.trials = 10;
    cfg.seed = 99;
    cfg.out_dir = std::filesystem::temp_directory_path() / "fht_test_reports";
    std::filesystem::remove_all(cfg.out_dir);

    ExperimentResult first = run_experiment(cfg);
    ExperimentResult second = run_experiment(cfg);
    CHECK(first.csv == second.csv);
    CHECK(first.summary == second.summary);
    CHECK(first.ok);

    emit_report(first, cfg);
    CHECK(slurp(cfg.out_dir / "khintchine.csv") == first.csv);
    const json reread = json::parse(slurp(cfg.out_dir / "khintchine_summary.json"));
    CHECK(reread == first.summary);
    CHECK(reread["schema"] == "fht-experiment-v1");
    CHECK(reread["config"]["seed"] == 99);

    // A different seed produces different rows.
    cfg.seed = 100;
    CHECK(run_experiment(cfg).csv != first.csv);
    std::filesystem::remove_all(cfg.out_dir);
}

TEST_CASE("summary regression locking") {
    ExperimentConfig cfg;
    cfg.name = "improvedfree";
    cfg.p_list = {4.0};
    cfg.trials = 10;
    cfg.seed = 5;
    ExperimentResult pilot = run_experiment(cfg);
    CHECK(pilot.ok);
    CHECK(summaries_agree(pilot.summary, pilot.summary));
    json tweaked = pilot.summary;
    tweaked["stats"]["4"]["max"] = tweaked["stats"]["4"]["max"].get<double>() * 1.5;
    CHECK_FALSE(summaries_agree(pilot.summary, tweaked));
}

TEST_CASE("rosenthal and length_reduction land inside their two-sided bounds") {
    ExperimentConfig cfg;
    cfg.name = "rosenthal";
    cfg.p_list = {4.0};
    cfg.trials = 8;
    cfg.seed = 21;
    CHECK(run_experiment(cfg).ok);

    cfg.name = "length_reduction";
    cfg.p_list = {2.0, 4.0};
    cfg.depth = 2;
    cfg.profile.max_len = 4;
    CHECK(run_experiment(cfg).ok);
}

TEST_CASE("lp_blocks reassembles x from its dyadic blocks") {
    ExperimentConfig cfg;
    cfg.name = "lp_blocks";
    cfg.p_list = {4.0};
    cfg.trials = 8;
    cfg.radius = 4;
    for (auto kind : {PartitionKind::powers, PartitionKind::greedy}) {
        cfg.partition = kind;
        CHECK(run_experiment(cfg).ok);
    }
}

TEST_CASE("haagerup margins stay nonnegative") {
    ExperimentConfig cfg;
    cfg.name = "haagerup";
    cfg.trials = 5;
    cfg.depth = 2;
    ExperimentResult res = run_experiment(cfg);
    CHECK(res.ok);
    CHECK(res.summary["stats"]["1"]["min"].get<double>() >= 0.0);
}

TEST_CASE("commutator rank stabilizes at 1 for the probe pair") {
    // [R_{g1}, lambda_{g2 g1}] truncated: only the column of delta_e survives.
    CHECK(commutator_rank(Word::generator(1),
                          ElementQ::monomial(Word::from_reduced({2, 1}), RatComplex(1)), 4) == 1);
    ExperimentConfig cfg;
    cfg.name = "commutator";
    cfg.radius = 6;
    ExperimentResult res = run_experiment(cfg);
    CHECK(res.ok);
    CHECK(res.summary["stabilized_from_radius_4"] == true);
}

TEST_CASE("float-ring experiments run within tolerances") {
    ExperimentConfig cfg;
    cfg.name = "khintchine";
    cfg.ring = "float";
    cfg.p_list = {2.0, 4.0};
    cfg.trials = 8;
    cfg.seed = 41;
    ExperimentResult res = run_experiment(cfg);
    CHECK(res.ok);
    CHECK(res.summary["config"]["ring"] == "float");

    cfg.name = "hilbert_ratio";
    CHECK(run_experiment(cfg).ok);
}

TEST_CASE("cb_probe records sign-pattern ratios") {
    ExperimentConfig cfg;
    cfg.name = "cb_probe";
    cfg.p_list = {4.0};
    cfg.trials = 6;
    cfg.probe_gens = 2;
    cfg.matrix_dim = 2;
    ExperimentResult res = run_experiment(cfg);
    CHECK(res.ok);
    CHECK(res.summary["stats"]["4"]["max"].get<double>() >= 1.0 - 1e-9);
}
