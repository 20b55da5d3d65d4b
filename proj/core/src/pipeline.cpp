#include "qdecomp/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qdecomp/maxcut_exact.hpp"
#include "qdecomp/rng.hpp"
#include "qdecomp/serialize.hpp"

namespace qdecomp {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

void PipelineConfig::validate() const {
    if (instance_file.empty() && n_cities < 3)
        throw std::invalid_argument("config: need at least 3 cities");
    if (penalty_b <= 0.0) throw std::invalid_argument("config: penalty_b must be positive");
    if (beta < 0) throw std::invalid_argument("config: beta must be >= 0");
    if (layers < 2 || layers % 2 != 0)
        throw std::invalid_argument("config: layer count must be even and >= 2");
    if (shrink_target < 1) throw std::invalid_argument("config: shrink target must be >= 1");
    if (restarts < 1 || optimizer_budget < 10)
        throw std::invalid_argument("config: optimizer budget too small");
    if (shots < 0) throw std::invalid_argument("config: shots must be >= 0");
    if (top_k < 1) throw std::invalid_argument("config: top_k must be >= 1");
    if (out_dir.empty()) throw std::invalid_argument("config: output directory required");
}

std::string PipelineConfig::to_json_text() const {
    ordered_json j;
    j["n"] = n_cities;
    j["seed"] = seed;
    j["box"] = box;
    j["instance_file"] = instance_file;
    j["penalty_a"] = penalty_a;
    j["penalty_b"] = penalty_b;
    j["beta"] = beta;
    j["shrink_target"] = shrink_target;
    j["layers"] = layers;
    j["restarts"] = restarts;
    j["optimizer_budget"] = optimizer_budget;
    j["shots"] = shots;
    j["top_k"] = top_k;
    j["simulator_cap"] = simulator_cap;
    j["exact_cut_cap"] = exact_cut_cap;
    j["node_limit"] = node_limit;
    j["out_dir"] = out_dir;
    j["dump_lp"] = dump_lp;
    return j.dump(2);
}

PipelineConfig PipelineConfig::from_json_text(const std::string& text) {
    auto j = ordered_json::parse(text);
    PipelineConfig cfg;
    cfg.n_cities = j.value("n", cfg.n_cities);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.box = j.value("box", cfg.box);
    cfg.instance_file = j.value("instance_file", cfg.instance_file);
    cfg.penalty_a = j.value("penalty_a", cfg.penalty_a);
    cfg.penalty_b = j.value("penalty_b", cfg.penalty_b);
    cfg.beta = j.value("beta", cfg.beta);
    cfg.shrink_target = j.value("shrink_target", cfg.shrink_target);
    cfg.layers = j.value("layers", cfg.layers);
    cfg.restarts = j.value("restarts", cfg.restarts);
    cfg.optimizer_budget = j.value("optimizer_budget", cfg.optimizer_budget);
    cfg.shots = j.value("shots", cfg.shots);
    cfg.top_k = j.value("top_k", cfg.top_k);
    cfg.simulator_cap = j.value("simulator_cap", cfg.simulator_cap);
    cfg.exact_cut_cap = j.value("exact_cut_cap", cfg.exact_cut_cap);
    cfg.node_limit = j.value("node_limit", cfg.node_limit);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.dump_lp = j.value("dump_lp", cfg.dump_lp);
    return cfg;
}

namespace {

std::string path_in(const PipelineConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
}

struct StageTimer {
    ordered_json timings = ordered_json::object();
    std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();

    void lap(const std::string& stage) {
        auto now = std::chrono::steady_clock::now();
        timings[stage] = std::chrono::duration<double>(now - mark).count();
        mark = now;
    }
};

TspInstance obtain_instance(const PipelineConfig& cfg) {
    if (!cfg.instance_file.empty()) return tsp_from_json(load_text(cfg.instance_file));
    return generate_euclidean_tsp(cfg.n_cities, cfg.seed, cfg.box);
}

QuboProblem qubo_of(const PipelineConfig& cfg, const TspInstance& tsp) {
    if (cfg.penalty_a > 0.0) return tsp_to_qubo(tsp, cfg.penalty_a, cfg.penalty_b);
    double max_d = 0.0;
    for (double d : tsp.distances) max_d = std::max(max_d, d);
    return tsp_to_qubo(tsp, tsp.n_cities * max_d + 1.0, cfg.penalty_b);
}

// Side images of the separator partitions in the shrunk graph.
std::pair<std::vector<int>, std::vector<int>> side_images(const SeparatorResult& sep,
                                                          const ShrinkStack& stack) {
    std::vector<int> a, b;
    for (int v : sep.partition_a) a.push_back(stack.provenance[v]);
    for (int v : sep.partition_b) b.push_back(stack.provenance[v]);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return {std::move(a), std::move(b)};
}

ordered_json split_json(const SeparatorResult& sep, const ShrinkOutcome& shrink) {
    auto [img_a, img_b] = side_images(sep, shrink.stack);
    ordered_json j;
    j["partition_a"] = sep.partition_a;
    j["partition_b"] = sep.partition_b;
    j["separator"] = sep.separator;
    j["milp_nodes"] = sep.nodes_explored;
    j["separator_vertex"] = shrink.separator_vertex;
    j["side_a_image"] = img_a;
    j["side_b_image"] = img_b;
    return j;
}

double entropy_bits(const Distribution& d) {
    double h = 0.0;
    for (double p : d.p)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

std::string bitstring_text(std::size_t s, int bits) {
    std::string out(bits, '0');
    for (int k = 0; k < bits; ++k)
        if ((s >> k) & 1) out[k] = '1';
    return out;
}

struct LoadedArtifacts {
    TspInstance tsp;
    QuboProblem qubo;
    MaxCutInstance maxcut;
    SeparatorResult separator;
    ShrinkOutcome shrink;
    QaoaParams params;
};

LoadedArtifacts load_through_shrink(const PipelineConfig& cfg) {
    LoadedArtifacts art;
    art.tsp = tsp_from_json(load_text(path_in(cfg, "instance.json")));
    art.qubo = qubo_from_json(load_text(path_in(cfg, "qubo.json")));
    art.maxcut = maxcut_from_json(load_text(path_in(cfg, "maxcut.json")));

    auto j = ordered_json::parse(load_text(path_in(cfg, "separator.json")));
    art.separator.status = lp::SolveStatus::Optimal;
    art.separator.partition_a = j.at("partition_a").get<std::vector<int>>();
    art.separator.partition_b = j.at("partition_b").get<std::vector<int>>();
    art.separator.separator = j.at("separator").get<std::vector<int>>();
    art.separator.nodes_explored = j.at("milp_nodes").get<long>();

    art.shrink.graph = maxcut_from_json(load_text(path_in(cfg, "shrunk.json")));
    art.shrink.stack = shrink_stack_from_json(load_text(path_in(cfg, "shrink_stack.json")));
    art.shrink.separator_vertex = j.at("separator_vertex").get<int>();
    return art;
}

FragmentPair fragments_from(const LoadedArtifacts& art, const QaoaParams& params) {
    auto [img_a, img_b] = side_images(art.separator, art.shrink.stack);
    return build_fragments(art.shrink.graph, art.shrink.separator_vertex, params,
                           std::make_pair(img_a, img_b));
}

void run_shrink_stages(const PipelineConfig& cfg, StageTimer& timer) {
    TspInstance tsp = obtain_instance(cfg);
    save_text(path_in(cfg, "instance.json"), to_json(tsp));
    timer.lap("instance");

    QuboProblem qubo = qubo_of(cfg, tsp);
    save_text(path_in(cfg, "qubo.json"), to_json(qubo));
    MaxCutInstance maxcut = qubo_to_maxcut(qubo);
    save_text(path_in(cfg, "maxcut.json"), to_json(maxcut));
    timer.lap("qubo_maxcut");

    lp::MilpOptions milp_opts;
    milp_opts.node_limit = cfg.node_limit;
    SeparatorResult sep = balanced_vertex_separator(maxcut, cfg.beta, milp_opts);
    if (sep.status != lp::SolveStatus::Optimal)
        throw std::runtime_error("pipeline stage separator: MILP did not reach optimality");
    timer.lap("separator");

    ShrinkOutcome shrink = shrink_separator_to_vertex(maxcut, sep, cfg.shrink_target);
    save_text(path_in(cfg, "shrunk.json"), to_json(shrink.graph));
    save_text(path_in(cfg, "shrink_stack.json"), to_json(shrink.stack));
    save_text(path_in(cfg, "separator.json"), split_json(sep, shrink).dump(2));
    timer.lap("shrink");
}

void run_train_stage(const PipelineConfig& cfg, StageTimer& timer) {
    LoadedArtifacts art = load_through_shrink(cfg);
    TrainConfig tc;
    tc.restarts = cfg.restarts;
    tc.max_evals_per_restart = cfg.optimizer_budget;
    tc.seed = cfg.seed;
    TrainResult tr = train_qaoa(art.shrink.graph, cfg.layers, tc);
    ordered_json j;
    j["values"] = tr.params.values;
    j["expectation_uncut"] = tr.expectation;
    j["evaluations"] = tr.evaluations;
    save_text(path_in(cfg, "qaoa_params.json"), j.dump(2));
    timer.lap("train");
}

void run_cut_eval_stage(const PipelineConfig& cfg, StageTimer& timer) {
    LoadedArtifacts art = load_through_shrink(cfg);
    auto pj = ordered_json::parse(load_text(path_in(cfg, "qaoa_params.json")));
    QaoaParams params{pj.at("values").get<std::vector<double>>()};
    FragmentPair fp = fragments_from(art, params);

    const MaxCutInstance& gs = art.shrink.graph;
    Distribution p_uncut = simulate(build_qaoa_circuit(gs, params), cfg.simulator_cap);
    double uncut_exp = expectation_f(gs, p_uncut);
    double cut_exp = cut_expectation_exact(fp, cfg.simulator_cap);
    Distribution p_cut = cut_sampling_distribution(fp, cfg.simulator_cap);
    timer.lap("cut_exact");

    ordered_json j;
    j["expectation_uncut"] = uncut_exp;
    j["expectation_cut_exact"] = cut_exp;
    j["reconstruction_error"] = std::abs(uncut_exp - cut_exp);
    j["expectation_under_p_cut"] = expectation_f(gs, p_cut);
    save_text(path_in(cfg, "cut_eval.json"), j.dump(2));

    if (gs.n_vertices <= 16) {
        std::ostringstream hist;
        hist.precision(17);
        hist << "bitstring,f,p_uncut,p_cut\n";
        for (std::size_t s = 0; s < p_uncut.p.size(); ++s) {
            double f = 0.0;
            for (const auto& e : gs.edges)
                if (((s >> e.u) & 1) != ((s >> e.v) & 1)) f += e.w;
            hist << bitstring_text(s, gs.n_vertices) << ',' << f << ',' << p_uncut.p[s] << ','
                 << p_cut.p[s] << '\n';
        }
        save_text(path_in(cfg, "histogram.csv"), hist.str());
    }
    timer.lap("histogram");

    if (cfg.shots > 0) {
        SampleResult samples =
            sample_cut(fp, cfg.shots, Rng(cfg.seed).substream("sampler").next_u64(),
                       cfg.simulator_cap);
        std::ostringstream csv;
        write_sample_csv(samples, fp, csv);
        save_text(path_in(cfg, "samples.csv"), csv.str());
        timer.lap("sampling");
    }
}

}  // namespace

void stage_generate(const PipelineConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    save_text(path_in(cfg, "config.json"), cfg.to_json_text());
    TspInstance tsp = obtain_instance(cfg);
    save_text(path_in(cfg, "instance.json"), to_json(tsp));
}

void stage_shrink(const PipelineConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    save_text(path_in(cfg, "config.json"), cfg.to_json_text());
    StageTimer timer;
    run_shrink_stages(cfg, timer);
    save_text(path_in(cfg, "timings.json"), timer.timings.dump(2));
}

void stage_train(const PipelineConfig& cfg) {
    cfg.validate();
    StageTimer timer;
    run_train_stage(cfg, timer);
}

void stage_cut_eval(const PipelineConfig& cfg) {
    cfg.validate();
    StageTimer timer;
    run_cut_eval_stage(cfg, timer);
}

PipelineReport stage_report(const PipelineConfig& cfg) {
    cfg.validate();
    LoadedArtifacts art = load_through_shrink(cfg);
    auto pj = ordered_json::parse(load_text(path_in(cfg, "qaoa_params.json")));
    QaoaParams params{pj.at("values").get<std::vector<double>>()};
    FragmentPair fp = fragments_from(art, params);
    const MaxCutInstance& gs = art.shrink.graph;

    ordered_json rep;
    rep["config"] = ordered_json::parse(cfg.to_json_text());
    rep["endianness"] = "bit k of a bit string is the measured outcome of qubit k (vertex k)";

    Tour best_tour = tsp_brute_force(art.tsp);
    rep["instance"] = {{"n", art.tsp.n_cities},
                       {"seed", art.tsp.seed},
                       {"optimal_tour", best_tour.order},
                       {"optimal_length", best_tour.length}};
    rep["qubo"] = {{"n_vars", art.qubo.n_vars},
                   {"tour_scale", art.qubo.metadata->tour_scale},
                   {"tour_offset", art.qubo.metadata->tour_offset}};
    rep["maxcut"] = {{"n_vertices", art.maxcut.n_vertices},
                     {"n_edges", art.maxcut.edges.size()},
                     {"offset", art.maxcut.offset}};
    rep["separator"] = {{"size_a", art.separator.partition_a.size()},
                        {"size_b", art.separator.partition_b.size()},
                        {"size_c", art.separator.separator.size()},
                        {"beta", cfg.beta},
                        {"milp_nodes", art.separator.nodes_explored}};

    // Shrink bookkeeping plus the losslessness flag where exact optima are
    // affordable on both sides.
    CutSolution shrunk_opt = maxcut_exact(gs, {cfg.exact_cut_cap, cfg.exact_cut_cap});
    std::string lossless = "unverified";
    if (art.maxcut.n_vertices <= cfg.exact_cut_cap) {
        CutSolution orig_opt = maxcut_exact(art.maxcut, {cfg.exact_cut_cap, cfg.exact_cut_cap});
        double via_shrink = shrunk_opt.weight + art.shrink.stack.total_offset_delta();
        lossless = std::abs(via_shrink - orig_opt.weight) < 1e-9 ? "yes" : "no";
    }
    rep["shrink"] = {{"vertices_before", art.maxcut.n_vertices},
                     {"vertices_after", gs.n_vertices},
                     {"contractions", art.shrink.stack.records.size()},
                     {"total_offset_delta", art.shrink.stack.total_offset_delta()},
                     {"shrunk_optimum", shrunk_opt.weight},
                     {"lossless", lossless}};

    Distribution p_uncut = simulate(build_qaoa_circuit(gs, params), cfg.simulator_cap);
    double uncut_exp = expectation_f(gs, p_uncut);
    rep["training"] = {{"layers", cfg.layers},
                       {"params", params.values},
                       {"expectation_uncut", uncut_exp},
                       {"quality_vs_optimum", shrunk_opt.weight != 0.0
                                                  ? uncut_exp / shrunk_opt.weight
                                                  : 0.0}};

    const double kappa_h = fp.cut1.kappa();
    const double kappa_p = fp.cut2.kappa();
    const double kappa = kappa_h * kappa_p;
    double cut_exp = cut_expectation_exact(fp, cfg.simulator_cap);
    Distribution p_cut = cut_sampling_distribution(fp, cfg.simulator_cap);

    // Floor check over every bit string, and the guaranteed peak at the
    // optimal strings.
    double worst_floor_margin = lp::kInf;
    for (std::size_t s = 0; s < p_cut.p.size(); ++s)
        worst_floor_margin = std::min(worst_floor_margin, p_cut.p[s] - p_uncut.p[s] / kappa);
    ordered_json optimal_strings = ordered_json::array();
    for (std::size_t s = 0; s < p_cut.p.size(); ++s) {
        double f = 0.0;
        for (const auto& e : gs.edges)
            if (((s >> e.u) & 1) != ((s >> e.v) & 1)) f += e.w;
        if (std::abs(f - shrunk_opt.weight) < 1e-9)
            optimal_strings.push_back({{"bitstring", bitstring_text(s, gs.n_vertices)},
                                       {"p_uncut", p_uncut.p[s]},
                                       {"p_cut", p_cut.p[s]},
                                       {"floor_satisfied", p_cut.p[s] >= p_uncut.p[s] / kappa - 1e-12}});
    }

    rep["wirecut"] = {
        {"fragment_qubits", {fp.n_qubits_a(), fp.n_qubits_b()}},
        {"kappa_harada", kappa_h},
        {"kappa_peng", kappa_p},
        {"kappa_joint", kappa},
        {"overhead_peng_one_cut", expectation_overhead(kappa_p, 1)},
        {"overhead_harada_one_cut", expectation_overhead(kappa_h, 1)},
        {"overhead_joint", expectation_overhead(kappa, cfg.layers / 2)},
        {"expectation_cut_exact", cut_exp},
        {"reconstruction_error", std::abs(cut_exp - uncut_exp)},
        {"expectation_under_p_cut", expectation_f(gs, p_cut)},
        {"entropy_p_uncut_bits", entropy_bits(p_uncut)},
        {"entropy_p_cut_bits", entropy_bits(p_cut)},
        {"floor_margin_min", worst_floor_margin},
        {"p_cut_total", p_cut.sum()},
        {"optimal_strings", optimal_strings}};

    if (cfg.shots > 0) {
        SampleResult samples =
            sample_cut(fp, cfg.shots, Rng(cfg.seed).substream("sampler").next_u64(),
                       cfg.simulator_cap);
        std::vector<double> freq(p_cut.p.size(), 0.0);
        for (const auto& recd : samples.shots) freq[recd.bitstring] += 1.0 / cfg.shots;
        double tv = 0.0;
        for (std::size_t s = 0; s < freq.size(); ++s) tv += std::abs(freq[s] - p_cut.p[s]);
        rep["monte_carlo"] = {{"shots", cfg.shots},
                              {"estimator_mean", samples.estimator_mean},
                              {"tv_distance_to_exact", tv / 2.0}};
    }

    // Decode the top-k strings by sampled mass back to tours.
    std::vector<std::size_t> order(p_cut.p.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return p_cut.p[a] > p_cut.p[b];
    });
    int k = std::min<std::size_t>(cfg.top_k, order.size());
    ordered_json tours = ordered_json::array();
    int n_feasible = 0;
    double best_len = lp::kInf;
    ordered_json best_order;
    for (int rank = 0; rank < k; ++rank) {
        std::size_t s = order[rank];
        CutSolution cut;
        cut.side.resize(gs.n_vertices);
        for (int v = 0; v < gs.n_vertices; ++v) cut.side[v] = (s >> v) & 1;
        cut.weight = cut_weight(gs, cut.side);
        CutSolution lifted = lift_solution(cut, art.shrink.stack);
        auto x = cut_to_assignment(lifted, art.maxcut);
        DecodeResult dec = decode_tour(x, art.tsp, *art.qubo.metadata);
        ordered_json row;
        row["rank"] = rank;
        row["bitstring"] = bitstring_text(s, gs.n_vertices);
        row["p_cut"] = p_cut.p[s];
        row["p_uncut"] = p_uncut.p[s];
        row["f"] = cut.weight;
        row["feasible"] = dec.feasible();
        if (dec.feasible()) {
            ++n_feasible;
            row["tour"] = dec.tour->order;
            row["length"] = dec.tour->length;
            if (dec.tour->length < best_len) {
                best_len = dec.tour->length;
                best_order = ordered_json(dec.tour->order);
            }
        }
        tours.push_back(std::move(row));
    }
    rep["decoding"] = {{"top_k", k},
                       {"n_feasible", n_feasible},
                       {"best_length", n_feasible ? ordered_json(best_len) : ordered_json()},
                       {"best_tour", best_order},
                       {"matches_brute_force",
                        n_feasible > 0 && std::abs(best_len - best_tour.length) < 1e-9},
                       {"tours", tours}};

    PipelineReport out;
    out.json_text = rep.dump(2) + "\n";
    save_text(path_in(cfg, "report.json"), out.json_text);
    return out;
}

PipelineReport run_pipeline(const PipelineConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    save_text(path_in(cfg, "config.json"), cfg.to_json_text());
    StageTimer timer;
    std::string stage = "shrink";
    try {
        run_shrink_stages(cfg, timer);
        stage = "train";
        run_train_stage(cfg, timer);
        stage = "cut-eval";
        run_cut_eval_stage(cfg, timer);
        stage = "report";
        PipelineReport rep = stage_report(cfg);
        timer.lap("report");
        save_text(path_in(cfg, "timings.json"), timer.timings.dump(2));
        return rep;
    } catch (const std::exception& e) {
        save_text(path_in(cfg, "timings.json"), timer.timings.dump(2));
        throw std::runtime_error("pipeline stage " + stage + ": " + e.what());
    }
}

bool run_verification(std::string* summary) {
    std::ostringstream out;
    bool ok = true;
    auto check = [&](const std::string& name, bool pass, const std::string& detail = {}) {
        out << (pass ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) out << " (" << detail << ")";
        out << "\n";
        ok = ok && pass;
    };

    QpdVerification vp = verify_qpd(peng_decomposition());
    check("qpd identity, no-communication decomposition", vp.pass,
          "max deviation " + std::to_string(vp.max_deviation));
    QpdVerification vh = verify_qpd(harada_decomposition());
    check("qpd identity, communication decomposition", vh.pass,
          "max deviation " + std::to_string(vh.max_deviation));

    // QUBO <-> MaxCut equivalence over all cuts of random instances.
    {
        Rng rng(20240817);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            int n = 2 + static_cast<int>(rng.below(7));
            QuboProblem q;
            q.n_vars = n;
            q.coeffs.resize(static_cast<std::size_t>(n) * n);
            for (double& c : q.coeffs) c = rng.uniform(-1.0, 1.0);
            MaxCutInstance g = qubo_to_maxcut(q);
            for (std::size_t mask = 0; mask < (std::size_t{1} << (n + 1)); ++mask) {
                CutSolution cut;
                cut.side.resize(n + 1);
                for (int v = 0; v <= n; ++v) cut.side[v] = (mask >> v) & 1;
                double m = cut_weight(g, cut.side);
                double qv = qubo_value(q, cut_to_assignment(cut, g));
                worst = std::max(worst, std::abs(qv - (-m / 2.0 + g.offset)));
            }
        }
        check("qubo/maxcut equivalence (-M/2 + C) on random instances", worst < 1e-9,
              "max error " + std::to_string(worst));
    }

    // Shrink weight conservation on random graphs.
    {
        Rng rng(5150);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            MaxCutInstance g;
            g.n_vertices = 8;
            for (int u = 0; u < 8; ++u)
                for (int v = u + 1; v < 8; ++v) {
                    if (rng.uniform() > 0.5) continue;
                    double w = rng.uniform(-1.0, 1.0);
                    if (std::abs(w) < 0.05) w = 0.05;
                    g.add_edge(u, v, w);
                }
            ShrinkStack stack;
            stack.provenance.resize(8);
            for (int v = 0; v < 8; ++v) stack.provenance[v] = v;
            MaxCutInstance cur = g;
            for (int step = 0; step < 3; ++step) {
                int u = static_cast<int>(rng.below(cur.n_vertices));
                int v = static_cast<int>(rng.below(cur.n_vertices));
                if (u == v) continue;
                int sigma = rng.below(2) ? +1 : -1;
                auto [next, recd] = contract_edge(cur, u, v, sigma);
                cur = std::move(next);
                stack.records.push_back(std::move(recd));
            }
            for (std::size_t mask = 0; mask < (std::size_t{1} << cur.n_vertices); ++mask) {
                CutSolution cut;
                cut.side.resize(cur.n_vertices);
                for (int k = 0; k < cur.n_vertices; ++k) cut.side[k] = (mask >> k) & 1;
                cut.weight = cut_weight(cur, cut.side);
                CutSolution lifted = lift_solution(cut, stack);
                worst = std::max(worst,
                                 std::abs(cut_weight(g, lifted.side) - lifted.weight));
            }
        }
        check("shrink weight conservation on random contractions", worst < 1e-9,
              "max error " + std::to_string(worst));
    }

    if (summary) *summary = out.str();
    return ok;
}

}  // namespace qdecomp
