#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fht/serialize.hpp"
#include "fht/verify.hpp"

namespace fht {

struct ExperimentConfig {
    std::string name;
    std::vector<double> p_list{2.0, 4.0};
    int trials = 50;
    std::uint64_t seed = 1;
    ElementProfile profile{3, 4, 2, CoeffLaw::circle};
    int radius = 4;           // partition/truncation radius where used
    int depth = 2;            // block depth d (length_reduction, commutator window)
    std::string ring = "rational"; // "rational" | "float"
    PartitionKind partition = PartitionKind::powers;
    int probe_gens = 2;  // cb_probe: number of generators n
    int matrix_dim = 2;  // cb_probe: matrix coefficient dimension
    std::filesystem::path out_dir = ".";
};

struct ExperimentResult {
    std::string name;
    std::string csv;  // header + rows; byte-identical across reruns of one config
    json summary;
    bool ok = true;   // every per-row assertion held
};

const std::vector<std::string>& experiment_names();

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Writes <name>.csv and <name>_summary.json into cfg.out_dir.
void emit_report(const ExperimentResult& result, const ExperimentConfig& cfg);

// Compares the summary statistics of a run against a stored pilot summary;
// true when all shared numeric stats agree within the stated relative slack.
bool summaries_agree(const json& pilot, const json& current, double rel_slack = 0.05);

// Rank of the ball-truncated commutator [R_h, x] on span(ball_radius).
int commutator_rank(const Word& h, const ElementQ& x, int radius);

} // namespace fht
