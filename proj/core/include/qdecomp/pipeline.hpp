#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qdecomp/cut_eval.hpp"
#include "qdecomp/fragments.hpp"
#include "qdecomp/maxcut.hpp"
#include "qdecomp/qaoa.hpp"
#include "qdecomp/separator.hpp"
#include "qdecomp/shrink.hpp"
#include "qdecomp/tsp.hpp"

namespace qdecomp {

struct PipelineConfig {
    // Instance source: generate n cities from the seed, or load from file.
    int n_cities = 7;
    std::uint64_t seed = 1;
    double box = 1.0;
    std::string instance_file;  // overrides generation when set

    double penalty_a = 0.0;  // 0 = default N * max d + 1
    double penalty_b = 1.0;
    int beta = 0;
    int shrink_target = 1;
    int layers = 2;
    int restarts = 10;
    int optimizer_budget = 250;
    long shots = 100000;
    int top_k = 50;
    int simulator_cap = 20;
    int exact_cut_cap = 22;  // brute-force cap for optimality bookkeeping
    long node_limit = 2'000'000;
    std::string out_dir = "out";
    bool dump_lp = false;

    void validate() const;
    std::string to_json_text() const;
    static PipelineConfig from_json_text(const std::string& text);
};

/// Everything run_pipeline produces, recomputable from the persisted
/// artifacts. Wall-clock timings live in a separate artifact so reports stay
/// byte-identical across reruns.
struct PipelineReport {
    std::string json_text;  // the serialized report
};

struct StageArtifacts {
    TspInstance tsp;
    QuboProblem qubo;
    MaxCutInstance maxcut;
    SeparatorResult separator;
    ShrinkOutcome shrink;
    TrainResult training;
    FragmentPair fragments;
};

/// Full workflow: generate/load -> QUBO -> MaxCut -> separator -> shrink ->
/// train -> cut evaluation -> decode tours. Persists every stage artifact
/// under cfg.out_dir and returns the report.
PipelineReport run_pipeline(const PipelineConfig& cfg);

// Stage entry points backing the CLI subcommands; each loads what it needs
// from cfg.out_dir and persists its own outputs.
void stage_generate(const PipelineConfig& cfg);
void stage_shrink(const PipelineConfig& cfg);
void stage_train(const PipelineConfig& cfg);
void stage_cut_eval(const PipelineConfig& cfg);
PipelineReport stage_report(const PipelineConfig& cfg);

/// Self-checks: QPD identities, QUBO <-> MaxCut equivalence on random
/// instances, shrink weight conservation. Returns true when all pass.
bool run_verification(std::string* summary = nullptr);

}  // namespace qdecomp
