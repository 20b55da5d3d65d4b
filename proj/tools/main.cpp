#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qdecomp/pipeline.hpp"
#include "qdecomp/serialize.hpp"

using namespace qdecomp;

namespace {

void add_config_flags(CLI::App* cmd, PipelineConfig& cfg) {
    cmd->add_option("--n", cfg.n_cities, "Number of cities to generate");
    cmd->add_option("--seed", cfg.seed, "Root seed for all random substreams");
    cmd->add_option("--box", cfg.box, "Side length of the sampling square");
    cmd->add_option("--instance", cfg.instance_file, "Load a TSP instance JSON instead of generating");
    cmd->add_option("--penalty-a", cfg.penalty_a, "One-hot penalty A (0 = N*max_d + 1)");
    cmd->add_option("--penalty-b", cfg.penalty_b, "Distance scale B");
    cmd->add_option("--beta", cfg.beta, "Allowed imbalance |A|-|B| of the separator");
    cmd->add_option("--shrink-target", cfg.shrink_target, "Separator cardinality after shrinking");
    cmd->add_option("--layers", cfg.layers, "QAOA layer count (even)");
    cmd->add_option("--restarts", cfg.restarts, "Optimizer restarts");
    cmd->add_option("--budget", cfg.optimizer_budget, "Objective evaluations per restart");
    cmd->add_option("--shots", cfg.shots, "Monte-Carlo shots (0 = exact-only)");
    cmd->add_option("--top-k", cfg.top_k, "Bit strings decoded back to tours");
    cmd->add_option("--sim-cap", cfg.simulator_cap, "Statevector qubit cap");
    cmd->add_option("--exact-cap", cfg.exact_cut_cap, "Brute-force cap for optimality bookkeeping");
    cmd->add_option("--node-limit", cfg.node_limit, "Branch-and-bound node limit");
    cmd->add_option("--out", cfg.out_dir, "Artifact directory");
    cmd->add_flag("--dump-lp", cfg.dump_lp, "Dump LP models in text format");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TSP -> QUBO -> MaxCut -> shrink -> cut QAOA pipeline"};
    app.require_subcommand(1);

    PipelineConfig cfg;
    std::string mode;

    for (const auto& name : {"run", "generate", "shrink-only", "train", "cut-eval", "report"}) {
        CLI::App* cmd = app.add_subcommand(name, "");
        add_config_flags(cmd, cfg);
        cmd->callback([&mode, name]() { mode = name; });
    }
    app.add_subcommand("verify", "Run the built-in self checks")->callback([&mode]() {
        mode = "verify";
    });

    CLI11_PARSE(app, argc, argv);

    try {
        if (mode == "verify") {
            std::string summary;
            bool ok = run_verification(&summary);
            std::cout << summary;
            std::cout << (ok ? "verification passed" : "verification FAILED") << std::endl;
            return ok ? 0 : 2;
        }
        if (mode == "run") {
            PipelineReport rep = run_pipeline(cfg);
            std::cout << rep.json_text;
        } else if (mode == "generate") {
            stage_generate(cfg);
            std::cout << "wrote " << cfg.out_dir << "/instance.json" << std::endl;
        } else if (mode == "shrink-only") {
            stage_shrink(cfg);
            std::cout << "wrote shrink artifacts to " << cfg.out_dir << std::endl;
        } else if (mode == "train") {
            stage_train(cfg);
            std::cout << "wrote " << cfg.out_dir << "/qaoa_params.json" << std::endl;
        } else if (mode == "cut-eval") {
            stage_cut_eval(cfg);
            std::cout << "wrote cut evaluation artifacts to " << cfg.out_dir << std::endl;
        } else if (mode == "report") {
            PipelineReport rep = stage_report(cfg);
            std::cout << rep.json_text;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
