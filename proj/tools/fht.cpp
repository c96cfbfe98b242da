// Command-line front end: identity fuzzing, norm computation, experiment
// runs, and geodesic partitions. Exit codes: 0 all assertions pass,
// 1 assertion failure (witness emitted), 2 usage or resource error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "fht/experiments.hpp"
#include "fht/serialize.hpp"
#include "fht/verify.hpp"

namespace {

using fht::json;

void write_or_print(const json& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file " + out_path);
    out << payload.dump(2) << "\n";
}

json fuzz_report_json(const fht::FuzzReport& r) {
    json out{{"id", fht::identity_name(r.id)},
             {"arith", r.arith == fht::Arith::exact ? "exact" : "float"},
             {"trials", r.trials},
             {"passes", r.passes},
             {"redraws", r.redraws},
             {"max_residual", r.max_residual},
             {"seed", r.seed},
             {"pass", r.pass()}};
    if (r.witness)
        out["witness"] = json::parse(*r.witness);
    return out;
}

int run_verify(const std::string& identity, int trials, std::uint64_t seed,
               const std::string& arith, int block_d, int max_len, int max_terms,
               int num_gens, const std::string& partition, int radius,
               const std::string& out_path) {
    fht::FuzzProfile profile;
    profile.arith = arith == "float" ? fht::Arith::floating : fht::Arith::exact;
    profile.max_len = max_len;
    profile.max_terms = max_terms;
    profile.num_gens = num_gens;
    profile.block_d = block_d;
    profile.partition =
        partition == "powers" ? fht::PartitionKind::powers : fht::PartitionKind::greedy;
    profile.radius = radius;

    std::vector<fht::IdentityId> ids;
    if (identity == "all") {
        ids = fht::all_identities();
    } else {
        auto id = fht::identity_from_name(identity);
        if (!id) {
            std::cerr << "unknown identity '" << identity << "'\n";
            return 2;
        }
        ids.push_back(*id);
    }

    json reports = json::array();
    bool all_pass = true;
    for (fht::IdentityId id : ids) {
        const fht::FuzzReport report = fht::fuzz(id, profile, trials, seed);
        all_pass = all_pass && report.pass();
        reports.push_back(fuzz_report_json(report));
    }
    write_or_print(ids.size() == 1 ? reports.front() : json{{"reports", reports}}, out_path);
    return all_pass ? 0 : 1;
}

int run_norm(const std::string& in_path, const std::string& p_text, const std::string& method,
             int radius, const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in)
        throw std::runtime_error("cannot open element file " + in_path);
    const fht::AnyElement any = fht::element_from_json(json::parse(in));

    const double p = p_text == "inf" ? std::numeric_limits<double>::infinity()
                                     : std::stod(p_text);
    const fht::NormReport report = std::visit(
        [&](const auto& x) {
            if (method == "moments") {
                const bool even =
                    !std::isinf(p) && p >= 2 && std::abs(p - 2 * std::round(p / 2)) < 1e-12;
                if (!even)
                    throw std::invalid_argument("--method moments requires an even integer p");
                return fht::compute_norm(x, p);
            }
            if (method == "spectral") {
                const int r = radius > 0
                                  ? radius
                                  : std::max<int>(1, 2 * static_cast<int>(x.max_support_length()));
                return fht::norm_spectral(x, p, r);
            }
            return fht::compute_norm(x, p, radius);
        },
        any);
    write_or_print(fht::norm_report_to_json(report), out_path);
    return 0;
}

int run_partition(const std::string& kind, int radius, std::uint64_t seed, int gens,
                  const std::string& out_path) {
    const fht::PathPartition part = kind == "powers"
                                        ? fht::concrete_partition(gens, radius)
                                        : fht::greedy_partition(gens, radius, seed);
    write_or_print(fht::partition_to_json(part), out_path);
    return 0;
}

int run_experiment_cmd(fht::ExperimentConfig cfg, const std::string& check_against) {
    const fht::ExperimentResult result = fht::run_experiment(cfg);
    fht::emit_report(result, cfg);
    std::cout << result.summary.dump(2) << "\n";
    if (!check_against.empty()) {
        std::ifstream pilot_in(check_against);
        if (!pilot_in)
            throw std::runtime_error("cannot open pilot summary " + check_against);
        const json pilot = json::parse(pilot_in);
        if (!fht::summaries_agree(pilot, result.summary)) {
            std::cerr << "summary deviates from pilot by more than 5%\n";
            return 1;
        }
    }
    return result.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"free Hilbert transform toolkit"};
    app.require_subcommand(1);

    // verify
    std::string identity = "all", arith = "exact", verify_out, verify_partition = "greedy";
    int trials = 500, block_d = 2, max_len = 5, max_terms = 6, num_gens = 3, verify_radius = 4;
    std::uint64_t seed = 1;
    auto* verify_cmd = app.add_subcommand("verify", "fuzz one identity (or all) and report");
    verify_cmd->add_option("--identity", identity, "identity name or 'all'");
    verify_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_option("--arith", arith)->check(CLI::IsMember({"exact", "float"}));
    verify_cmd->add_option("--d", block_d, "block depth for cotlar_Ld")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--len", max_len)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--terms", max_terms)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--gens", num_gens)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--partition", verify_partition)
        ->check(CLI::IsMember({"greedy", "powers"}));
    verify_cmd->add_option("--radius", verify_radius)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--out", verify_out, "write the JSON report here");

    // norm
    std::string norm_in, norm_p = "2", norm_method = "auto", norm_out;
    int norm_radius = 0;
    auto* norm_cmd = app.add_subcommand("norm", "compute an Lp norm report for an element");
    norm_cmd->add_option("--in", norm_in, "element JSON file")->required();
    norm_cmd->add_option("--p", norm_p, "exponent (number or 'inf')");
    norm_cmd->add_option("--method", norm_method)
        ->check(CLI::IsMember({"moments", "spectral", "auto"}));
    norm_cmd->add_option("--radius", norm_radius)->check(CLI::NonNegativeNumber);
    norm_cmd->add_option("--out", norm_out);

    // experiment
    fht::ExperimentConfig cfg;
    std::string exp_name, exp_partition = "powers", check_against;
    std::vector<double> p_list;
    auto* exp_cmd = app.add_subcommand("experiment", "run a measurement experiment");
    exp_cmd->add_option("name", exp_name, "experiment name")
        ->required()
        ->check(CLI::IsMember(fht::experiment_names()));
    exp_cmd->add_option("--p", p_list, "exponent list")->delimiter(',');
    exp_cmd->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
    exp_cmd->add_option("--seed", cfg.seed);
    exp_cmd->add_option("--out", cfg.out_dir, "output directory");
    exp_cmd->add_option("--ring", cfg.ring)->check(CLI::IsMember({"rational", "float"}));
    exp_cmd->add_option("--partition", exp_partition)
        ->check(CLI::IsMember({"greedy", "powers"}));
    exp_cmd->add_option("--len", cfg.profile.max_len)->check(CLI::PositiveNumber);
    exp_cmd->add_option("--terms", cfg.profile.max_terms)->check(CLI::PositiveNumber);
    exp_cmd->add_option("--gens", cfg.profile.num_gens)->check(CLI::PositiveNumber);
    exp_cmd->add_option("--radius", cfg.radius)->check(CLI::PositiveNumber);
    exp_cmd->add_option("--depth", cfg.depth)->check(CLI::PositiveNumber);
    exp_cmd->add_option("--probe-gens", cfg.probe_gens)->check(CLI::PositiveNumber);
    exp_cmd->add_option("--matrix-dim", cfg.matrix_dim)->check(CLI::PositiveNumber);
    exp_cmd->add_option("--check-against", check_against,
                        "pilot summary JSON; exit 1 on >5% deviation");

    // partition
    std::string part_kind = "greedy", part_out;
    int part_radius = 4, part_gens = 2;
    std::uint64_t part_seed = 1;
    auto* part_cmd = app.add_subcommand("partition", "emit a geodesic path partition");
    part_cmd->add_option("--kind", part_kind)->check(CLI::IsMember({"greedy", "powers"}));
    part_cmd->add_option("--radius", part_radius)->check(CLI::PositiveNumber);
    part_cmd->add_option("--seed", part_seed);
    part_cmd->add_option("--gens", part_gens)->check(CLI::PositiveNumber);
    part_cmd->add_option("--out", part_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify_cmd->parsed())
            return run_verify(identity, trials, seed, arith, block_d, max_len, max_terms,
                              num_gens, verify_partition, verify_radius, verify_out);
        if (norm_cmd->parsed())
            return run_norm(norm_in, norm_p, norm_method, norm_radius, norm_out);
        if (exp_cmd->parsed()) {
            cfg.name = exp_name;
            if (!p_list.empty())
                cfg.p_list = p_list;
            cfg.partition = exp_partition == "greedy" ? fht::PartitionKind::greedy
                                                      : fht::PartitionKind::powers;
            return run_experiment_cmd(cfg, check_against);
        }
        if (part_cmd->parsed())
            return run_partition(part_kind, part_radius, part_seed, part_gens, part_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
