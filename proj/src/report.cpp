#include "p7col/report.hpp"

#include "p7col/recognition.hpp"
#include "p7col/skeleton.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace p7col {

namespace {

using Json = nlohmann::ordered_json;

struct Lift {
    const std::vector<Vertex>& to_parent;

    std::vector<Vertex> operator()(const VertexSet& set) const { return (*this)(set.members()); }
    std::vector<Vertex> operator()(const std::vector<Vertex>& local) const {
        std::vector<Vertex> out;
        for (Vertex v : local) out.push_back(to_parent[v] + 1);
        std::sort(out.begin(), out.end());
        return out;
    }
};

Json violation_json(const PromiseViolation& w, const Lift& lift) {
    std::vector<Vertex> vertices;
    for (Vertex v : w.vertices) vertices.push_back(lift.to_parent[v] + 1);
    return {{"kind", to_string(w.kind)}, {"vertices", vertices}, {"note", w.note}};
}

Json skeleton_json(const SkeletonAnalysis& a, const Lift& lift) {
    const Skeleton& sk = a.skeleton;
    Json j;
    std::vector<Vertex> anchor;
    for (Vertex c : sk.c) anchor.push_back(lift.to_parent[c] + 1);
    j["anchor"] = anchor;
    Json t = Json::array(), d = Json::array();
    for (int i = 0; i < 5; ++i) {
        t.push_back(lift(sk.t[i]));
        d.push_back(lift(sk.d[i]));
    }
    j["t"] = t;
    j["d"] = d;
    j["w"] = lift(sk.w);
    Json comps = Json::array();
    for (const auto& c : sk.components) {
        Json tn = Json::array();
        for (const auto& s : c.t_nbhd) tn.push_back(lift(s));
        comps.push_back({{"sides", {lift(c.sides[0]), lift(c.sides[1])}},
                         {"side_neighbourhoods", {lift(c.side_nbhd[0]), lift(c.side_nbhd[1])}},
                         {"t_neighbourhoods", tn}});
    }
    j["components"] = comps;
    Json wd = Json::array();
    for (int i = 0; i < 5; ++i)
        for (const auto& c : a.wd[i])
            wd.push_back({{"index", i + 1},
                          {"w_side", lift(c.w_side)},
                          {"d_side", lift(c.d_side)},
                          {"t_neighbourhood", lift(c.t_nbhd)}});
    j["wd_components"] = wd;
    Json chains = Json::array();
    for (int i = 0; i < 5; ++i) {
        if (!a.chains[i]) continue;
        const Chain& ch = *a.chains[i];
        Json levels = Json::array();
        for (const auto& l : ch.levels) levels.push_back(lift(l));
        chains.push_back({{"index", i + 1}, {"v0", lift.to_parent[ch.v0] + 1}, {"r", ch.r}, {"levels", levels}});
    }
    j["chains"] = chains;
    return j;
}

Json component_json(const Graph& g, const Lift& lift) {
    Json j;
    auto split = bipartite_check(g);
    if (auto* sides = std::get_if<Bipartition>(&split)) {
        j["structure"] = "bipartite";
        j["sides"] = {lift(sides->first), lift(sides->second)};
        return j;
    }
    const auto cycle = shortest_odd_cycle(g);
    j["odd_girth"] = cycle->size();
    std::vector<Vertex> lifted;
    for (Vertex v : *cycle) lifted.push_back(lift.to_parent[v] + 1);
    j["cycle"] = lifted;
    if (cycle->size() == 5) {
        j["structure"] = "c5_skeleton";
        auto analysed = analyse_skeleton(g, std::span<const Vertex, 5>(cycle->data(), 5));
        if (auto* w = std::get_if<PromiseViolation>(&analysed)) j["violation"] = violation_json(*w, lift);
        else j["skeleton"] = skeleton_json(std::get<SkeletonAnalysis>(analysed), lift);
    } else if (cycle->size() == 7) {
        j["structure"] = "blownup_c7";
        auto dec = recognize_blownup_c7(g, std::span<const Vertex, 7>(cycle->data(), 7));
        if (auto* w = std::get_if<PromiseViolation>(&dec)) j["violation"] = violation_json(*w, lift);
        else {
            Json classes = Json::array();
            for (const auto& c : std::get<TwinDecomposition>(dec).classes) classes.push_back(lift(c));
            j["classes"] = classes;
        }
    } else {
        j["structure"] = "none";
    }
    return j;
}

} // namespace

std::string explain_structure(const Graph& g, int threads) {
    Json j;
    const std::vector<Vertex> identity = [&] {
        std::vector<Vertex> id(g.order());
        for (Vertex v = 0; v < g.order(); ++v) id[v] = v;
        return id;
    }();
    if (auto w = check_promise(g, threads)) j["promise"] = violation_json(*w, Lift{identity});
    else j["promise"] = "ok";
    Json comps = Json::array();
    for (const auto& component : connected_components(g)) {
        const auto sub = induced_subgraph(g, component);
        const Lift lift{sub.to_parent};
        Json c = component_json(sub.graph, lift);
        std::vector<Vertex> members;
        for (Vertex v : component) members.push_back(v + 1);
        c["vertices"] = members;
        comps.push_back(std::move(c));
    }
    j["components"] = comps;
    return j.dump(2) + "\n";
}

std::string structure_dot(const Graph& g) {
    std::vector<std::string> role(g.order(), "other");
    for (const auto& component : connected_components(g)) {
        const auto sub = induced_subgraph(g, component);
        const auto cycle = shortest_odd_cycle(sub.graph);
        if (!cycle || cycle->size() != 5) continue;
        auto analysed = analyse_skeleton(sub.graph, std::span<const Vertex, 5>(cycle->data(), 5));
        const auto* a = std::get_if<SkeletonAnalysis>(&analysed);
        if (!a) continue;
        const Skeleton& sk = a->skeleton;
        for (int i = 0; i < 5; ++i) {
            role[sub.to_parent[sk.c[i]]] = "c" + std::to_string(i + 1);
            for (Vertex v : sk.t[i].members()) role[sub.to_parent[v]] = "t" + std::to_string(i + 1);
            for (Vertex v : sk.d[i].members()) role[sub.to_parent[v]] = "d" + std::to_string(i + 1);
        }
        for (Vertex v : sk.w.members()) role[sub.to_parent[v]] = "w";
    }
    auto fill = [](const std::string& r) -> const char* {
        switch (r[0]) {
        case 'c': return "gold";
        case 't': return "lightblue";
        case 'd': return "palegreen";
        case 'w': return "lightgrey";
        default: return "white";
        }
    };
    std::ostringstream out;
    out << "graph skeleton {\n  node [style=filled];\n";
    for (Vertex v = 0; v < g.order(); ++v)
        out << "  " << v + 1 << " [label=\"" << v + 1 << "\\n" << role[v] << "\", fillcolor=" << fill(role[v])
            << "];\n";
    for (auto [u, v] : g.edges()) out << "  " << u + 1 << " -- " << v + 1 << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace p7col
