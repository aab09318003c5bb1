#pragma once
// The six summary statistics: density, bipartite density, transitivity,
// reciprocity, overlap coefficient, and the capture-recapture (MSE)
// population estimate. Zero-denominator cases throw undefined_input_error
// rather than returning NaN or a misleading 0.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linkscope/errors.hpp"
#include "linkscope/graph.hpp"
#include "linkscope/subnet.hpp"

#include <json.hpp>

namespace linkscope {

inline double density_from_counts(int64_t n_nodes, int64_t n_edges) {
    if (n_nodes < 2) throw undefined_input_error("density needs at least 2 nodes");
    if (n_edges < 0 || n_edges > n_nodes * (n_nodes - 1))
        throw validation_error("edge count exceeds possible directed edges");
    return static_cast<double>(n_edges) /
           (static_cast<double>(n_nodes) * static_cast<double>(n_nodes - 1));
}

inline double density(const DirectedGraph& g) {
    return density_from_counts(static_cast<int64_t>(g.node_count()),
                               static_cast<int64_t>(g.edge_count()));
}

inline double bipartite_density(int64_t edges_between, int64_t a_size, int64_t b_size) {
    if (a_size < 1 || b_size < 1)
        throw undefined_input_error("bipartite density needs non-empty sides");
    if (edges_between < 0 || edges_between > a_size * b_size)
        throw validation_error("edge count exceeds possible bipartite edges");
    return static_cast<double>(edges_between) / (static_cast<double>(a_size) * static_cast<double>(b_size));
}

// Bipartite density of a boomerang view with A = followers, B = friends.
inline double boomerang_bipartite_density(const SubnetView& view) {
    if (view.kind != SubnetView::Kind::Boomerang)
        throw validation_error("bipartite density is defined on boomerang views");
    int64_t a = static_cast<int64_t>(view.count_role(Role::Follower));
    int64_t b = static_cast<int64_t>(view.count_role(Role::Friend));
    int64_t between = 0;
    for (const auto& [s, d] : view.edges) {
        auto sr = view.members.at(s), dr = view.members.at(d);
        if ((sr == Role::Follower && dr == Role::Friend) ||
            (sr == Role::Friend && dr == Role::Follower))
            ++between;
    }
    return bipartite_density(between, a, b);
}

namespace detail {

// Symmetrized simple graph as sorted adjacency lists.
inline std::vector<std::vector<NodeIndex>> symmetrize(const DirectedGraph& g) {
    std::vector<std::vector<NodeIndex>> adj(g.node_count());
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        auto& a = adj[v];
        std::set_union(g.out_neighbors(v).begin(), g.out_neighbors(v).end(),
                       g.in_neighbors(v).begin(), g.in_neighbors(v).end(),
                       std::back_inserter(a));
    }
    return adj;
}

inline int64_t count_sorted_intersection_above(const std::vector<NodeIndex>& a,
                                               const std::vector<NodeIndex>& b, NodeIndex floor) {
    auto ia = std::upper_bound(a.begin(), a.end(), floor);
    auto ib = std::upper_bound(b.begin(), b.end(), floor);
    int64_t n = 0;
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++n; ++ia; ++ib; }
    }
    return n;
}

}  // namespace detail

// Global clustering coefficient on the symmetrized graph:
// 3 * triangles / connected triples.
inline double transitivity(const DirectedGraph& g) {
    auto adj = detail::symmetrize(g);
    int64_t wedges = 0;
    for (const auto& a : adj) {
        int64_t d = static_cast<int64_t>(a.size());
        wedges += d * (d - 1) / 2;
    }
    if (wedges == 0) throw undefined_input_error("transitivity needs at least one connected triple");

    int64_t triangles = 0;
    for (NodeIndex u = 0; u < adj.size(); ++u)
        for (NodeIndex v : adj[u])
            if (v > u) triangles += detail::count_sorted_intersection_above(adj[u], adj[v], v);
    return 3.0 * static_cast<double>(triangles) / static_cast<double>(wedges);
}

// Fraction of edges whose reverse also exists; a mutual pair contributes
// 2 to both numerator and denominator.
inline double reciprocity(const DirectedGraph& g) {
    if (g.edge_count() == 0) throw undefined_input_error("reciprocity needs at least one edge");
    int64_t bidirectional = 0;
    g.for_each_edge([&](NodeIndex s, NodeIndex d) {
        if (g.has_edge(d, s)) ++bidirectional;
    });
    return static_cast<double>(bidirectional) / static_cast<double>(g.edge_count());
}

inline double overlap_coefficient(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
    std::set<NodeId> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    if (sa.empty() || sb.empty()) throw undefined_input_error("overlap coefficient needs non-empty sets");
    int64_t inter = 0;
    for (const auto& x : sa)
        if (sb.count(x)) ++inter;
    return static_cast<double>(inter) /
           static_cast<double>(std::min(sa.size(), sb.size()));
}

// Capture-recapture population estimate |A|*|B|/|A∩B|, rounded half-up.
inline int64_t mse_estimate(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
    std::set<NodeId> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    int64_t inter = 0;
    for (const auto& x : sa)
        if (sb.count(x)) ++inter;
    if (inter == 0)
        throw undefined_input_error("population estimate undefined for disjoint samples");
    double est = static_cast<double>(sa.size()) * static_cast<double>(sb.size()) /
                 static_cast<double>(inter);
    return static_cast<int64_t>(std::floor(est + 0.5));
}

struct MetricReport {
    int64_t n_nodes = 0;
    int64_t n_edges = 0;
    std::optional<double> density;
    std::optional<double> transitivity;
    std::optional<double> reciprocity;
    std::optional<double> bipartite_density;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["n_nodes"] = n_nodes;
        j["n_edges"] = n_edges;
        auto put = [&](const char* key, const std::optional<double>& v) {
            if (v) j[key] = *v;
            else j[key] = nullptr;
        };
        put("density", density);
        put("transitivity", transitivity);
        put("reciprocity", reciprocity);
        if (bipartite_density) j["bipartite_density"] = *bipartite_density;
        return j;
    }
};

inline MetricReport compute_metrics(const DirectedGraph& g) {
    MetricReport r;
    r.n_nodes = static_cast<int64_t>(g.node_count());
    r.n_edges = static_cast<int64_t>(g.edge_count());
    try { r.density = density(g); } catch (const undefined_input_error&) {}
    try { r.transitivity = transitivity(g); } catch (const undefined_input_error&) {}
    try { r.reciprocity = reciprocity(g); } catch (const undefined_input_error&) {}
    return r;
}

inline MetricReport compute_metrics(const SubnetView& view) {
    MetricReport r = compute_metrics(view.to_graph());
    if (view.kind == SubnetView::Kind::Boomerang) {
        try { r.bipartite_density = boomerang_bipartite_density(view); }
        catch (const undefined_input_error&) {}
    }
    return r;
}

}  // namespace linkscope
