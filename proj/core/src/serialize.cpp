#include "qdecomp/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qdecomp {

using nlohmann::ordered_json;

std::string to_json(const TspInstance& tsp) {
    ordered_json j;
    j["n"] = tsp.n_cities;
    if (!tsp.coords.empty()) {
        ordered_json coords = ordered_json::array();
        for (auto [x, y] : tsp.coords) coords.push_back({x, y});
        j["coords"] = coords;
    }
    j["distances"] = tsp.distances;
    j["seed"] = tsp.seed;
    return j.dump(2);
}

TspInstance tsp_from_json(const std::string& text) {
    auto j = ordered_json::parse(text);
    TspInstance tsp;
    tsp.n_cities = j.at("n").get<int>();
    tsp.distances = j.at("distances").get<std::vector<double>>();
    tsp.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("coords"))
        for (const auto& c : j["coords"])
            tsp.coords.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    tsp.validate();
    return tsp;
}

std::string to_json(const QuboProblem& q) {
    ordered_json j;
    j["n_vars"] = q.n_vars;
    j["coeffs"] = q.coeffs;
    if (q.metadata) {
        j["metadata"] = {{"n_cities", q.metadata->n_cities},
                         {"tour_scale", q.metadata->tour_scale},
                         {"tour_offset", q.metadata->tour_offset}};
    }
    return j.dump(2);
}

QuboProblem qubo_from_json(const std::string& text) {
    auto j = ordered_json::parse(text);
    QuboProblem q;
    q.n_vars = j.at("n_vars").get<int>();
    q.coeffs = j.at("coeffs").get<std::vector<double>>();
    if (j.contains("metadata")) {
        QuboMetadata meta;
        meta.n_cities = j["metadata"].at("n_cities").get<int>();
        meta.tour_scale = j["metadata"].at("tour_scale").get<double>();
        meta.tour_offset = j["metadata"].at("tour_offset").get<double>();
        q.metadata = meta;
    }
    q.validate();
    return q;
}

std::string to_json(const MaxCutInstance& g) {
    ordered_json j;
    j["n_vertices"] = g.n_vertices;
    ordered_json edges = ordered_json::array();
    for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.w});
    j["edges"] = edges;
    j["offset"] = g.offset;
    if (g.root_vertex)
        j["root_vertex"] = *g.root_vertex;
    else
        j["root_vertex"] = nullptr;
    return j.dump(2);
}

MaxCutInstance maxcut_from_json(const std::string& text) {
    auto j = ordered_json::parse(text);
    MaxCutInstance g;
    g.n_vertices = j.at("n_vertices").get<int>();
    for (const auto& e : j.at("edges"))
        g.add_edge(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>());
    g.offset = j.at("offset").get<double>();
    if (j.contains("root_vertex") && !j["root_vertex"].is_null())
        g.root_vertex = j["root_vertex"].get<int>();
    g.validate();
    return g;
}

std::string to_json(const CutSolution& cut) {
    ordered_json j;
    j["side"] = cut.side;
    j["weight"] = cut.weight;
    return j.dump(2);
}

CutSolution cut_from_json(const std::string& text) {
    auto j = ordered_json::parse(text);
    CutSolution cut;
    cut.side = j.at("side").get<std::vector<int>>();
    cut.weight = j.at("weight").get<double>();
    return cut;
}

std::string to_json(const ShrinkStack& stack) {
    ordered_json j;
    ordered_json recs = ordered_json::array();
    for (const auto& r : stack.records) {
        ordered_json e_before = ordered_json::array();
        for (const auto& e : r.edges_before) e_before.push_back({e.u, e.v, e.w});
        ordered_json e_after = ordered_json::array();
        for (const auto& e : r.edges_after) e_after.push_back({e.u, e.v, e.w});
        recs.push_back({{"removed", r.removed},
                        {"kept", r.kept},
                        {"sigma", r.sigma},
                        {"offset_delta", r.offset_delta},
                        {"n_before", r.n_before},
                        {"edges_before", e_before},
                        {"edges_after", e_after},
                        {"root_cleared", r.root_cleared}});
    }
    j["records"] = recs;
    j["provenance"] = stack.provenance;
    return j.dump(2);
}

ShrinkStack shrink_stack_from_json(const std::string& text) {
    auto j = ordered_json::parse(text);
    ShrinkStack stack;
    for (const auto& r : j.at("records")) {
        ContractionRecord rec;
        rec.removed = r.at("removed").get<int>();
        rec.kept = r.at("kept").get<int>();
        rec.sigma = r.at("sigma").get<int>();
        rec.offset_delta = r.at("offset_delta").get<double>();
        rec.n_before = r.at("n_before").get<int>();
        for (const auto& e : r.at("edges_before"))
            rec.edges_before.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
        for (const auto& e : r.at("edges_after"))
            rec.edges_after.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
        rec.root_cleared = r.at("root_cleared").get<bool>();
        stack.records.push_back(std::move(rec));
    }
    stack.provenance = j.at("provenance").get<std::vector<int>>();
    return stack;
}

std::string to_json(const QaoaParams& params) {
    ordered_json j;
    j["values"] = params.values;
    return j.dump(2);
}

QaoaParams qaoa_params_from_json(const std::string& text) {
    auto j = ordered_json::parse(text);
    return QaoaParams{j.at("values").get<std::vector<double>>()};
}

void save_text(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("save_text: cannot open " + tmp);
        out << content;
        if (!out) throw std::runtime_error("save_text: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("save_text: rename failed for " + path);
}

std::string load_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_text: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace qdecomp
