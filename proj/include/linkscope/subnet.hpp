#pragma once
// Egonet and boomerang network extraction.
//
// Egonet: the egos, their neighboring nodes (followers by default), and all
// parent-graph edges between members. Boomerang: the egonet plus the
// out-links of the follower members; the targets of those links join with
// the Friend role and are terminal (their own edges are not pulled in).
// Role precedence when a node qualifies for several: Ego > Follower > Friend.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "linkscope/errors.hpp"
#include "linkscope/graph.hpp"

namespace linkscope {

enum class Role { Ego, Follower, Friend };

inline const char* role_name(Role r) {
    switch (r) {
        case Role::Ego: return "ego";
        case Role::Follower: return "follower";
        case Role::Friend: return "friend";
    }
    return "?";
}

// Which neighbors count as an ego's "neighboring nodes".
enum class Direction { In, Out, Both };

struct SubnetView {
    enum class Kind { Egonet, Boomerang };

    Kind kind = Kind::Egonet;
    std::vector<NodeId> egos;
    std::map<NodeId, Role> members;
    std::vector<std::pair<NodeId, NodeId>> edges;  // sorted (src, dst)

    size_t count_role(Role r) const {
        size_t n = 0;
        for (const auto& [_, role] : members)
            if (role == r) ++n;
        return n;
    }

    std::vector<NodeId> members_with_role(Role r) const {
        std::vector<NodeId> out;
        for (const auto& [id, role] : members)
            if (role == r) out.push_back(id);
        return out;
    }

    // Materializes the view as a standalone graph (isolated members kept).
    DirectedGraph to_graph() const {
        DirectedGraph::Builder b;
        for (const auto& [id, _] : members) b.add_node(id);
        for (const auto& [s, d] : edges) b.add_edge(s, d);
        return b.build();
    }
};

namespace detail {

inline std::vector<NodeIndex> ego_indices(const DirectedGraph& g, const std::vector<NodeId>& egos) {
    if (egos.empty()) throw validation_error("ego set is empty");
    std::vector<NodeIndex> idx;
    idx.reserve(egos.size());
    for (const auto& e : egos) idx.push_back(g.index_of(e));  // throws on unknown ego
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

inline const std::vector<NodeIndex>& neighbor_list(const DirectedGraph& g, NodeIndex v,
                                                   Direction dir, std::vector<NodeIndex>& scratch) {
    switch (dir) {
        case Direction::In: return g.in_neighbors(v);
        case Direction::Out: return g.out_neighbors(v);
        case Direction::Both:
            scratch.clear();
            std::set_union(g.in_neighbors(v).begin(), g.in_neighbors(v).end(),
                           g.out_neighbors(v).begin(), g.out_neighbors(v).end(),
                           std::back_inserter(scratch));
            return scratch;
    }
    throw internal_error("bad direction");
}

}  // namespace detail

inline SubnetView extract_egonet(const DirectedGraph& g, const std::vector<NodeId>& egos,
                                 Direction dir = Direction::In) {
    auto ego_idx = detail::ego_indices(g, egos);

    // Role map over node indices: 0 = absent, 1 = ego, 2 = follower.
    std::vector<uint8_t> role(g.node_count(), 0);
    for (NodeIndex e : ego_idx) role[e] = 1;
    std::vector<NodeIndex> scratch;
    for (NodeIndex e : ego_idx)
        for (NodeIndex n : detail::neighbor_list(g, e, dir, scratch))
            if (role[n] == 0) role[n] = 2;

    SubnetView view;
    view.kind = SubnetView::Kind::Egonet;
    for (NodeIndex e : ego_idx) view.egos.push_back(g.id_of(e));
    std::sort(view.egos.begin(), view.egos.end());

    for (NodeIndex i = 0; i < g.node_count(); ++i) {
        if (role[i] == 1) view.members.emplace(g.id_of(i), Role::Ego);
        else if (role[i] == 2) view.members.emplace(g.id_of(i), Role::Follower);
    }
    // Induced edges: both endpoints must be members.
    g.for_each_edge([&](NodeIndex s, NodeIndex d) {
        if (role[s] && role[d]) view.edges.emplace_back(g.id_of(s), g.id_of(d));
    });
    std::sort(view.edges.begin(), view.edges.end());
    return view;
}

inline SubnetView extract_boomerang(const DirectedGraph& g, const std::vector<NodeId>& egos,
                                    Direction dir = Direction::In) {
    SubnetView view = extract_egonet(g, egos, dir);
    view.kind = SubnetView::Kind::Boomerang;

    std::vector<NodeId> followers = view.members_with_role(Role::Follower);
    for (const auto& f : followers) {
        NodeIndex fi = g.index_of(f);
        for (NodeIndex w : g.out_neighbors(fi)) {
            const NodeId& wid = g.id_of(w);
            auto it = view.members.find(wid);
            if (it == view.members.end()) {
                view.members.emplace(wid, Role::Friend);
                view.edges.emplace_back(f, wid);
            } else if (it->second == Role::Friend) {
                view.edges.emplace_back(f, wid);
            }
            // Targets that are already egos or followers: the edge is an
            // egonet edge and was captured by the induced pass.
        }
    }
    std::sort(view.edges.begin(), view.edges.end());
    view.edges.erase(std::unique(view.edges.begin(), view.edges.end()), view.edges.end());
    return view;
}

inline void write_view(const SubnetView& view, const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir + "/edges.csv");
        if (!out) throw io_error("cannot write " + dir + "/edges.csv");
        out << "src,dst,observed_at\n";
        for (const auto& [s, d] : view.edges)
            out << csv::escape(s) << ',' << csv::escape(d) << ",\n";
    }
    {
        std::ofstream out(dir + "/members.csv");
        if (!out) throw io_error("cannot write " + dir + "/members.csv");
        out << "node,role\n";
        for (const auto& [id, role] : view.members)
            out << csv::escape(id) << ',' << role_name(role) << '\n';
    }
}

}  // namespace linkscope
