#pragma once
// Follow-graph storage and the account attribute table.
//
// A DirectedGraph is immutable once built: construct it through
// DirectedGraph::Builder, then query freely (queries are const and safe to
// share across threads). Edge (src, dst) means "src follows dst", so
// followers_of(v) walks in-edges and friends_of(v) walks out-edges.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "linkscope/csv.hpp"
#include "linkscope/errors.hpp"

namespace linkscope {

using NodeId = std::string;
using NodeIndex = uint32_t;

class DirectedGraph {
public:
    class Builder;

    size_t node_count() const { return ids_.size(); }
    size_t edge_count() const { return edge_count_; }

    bool has_node(const NodeId& id) const { return index_.count(id) > 0; }

    bool has_edge(const NodeId& src, const NodeId& dst) const {
        auto s = find(src), d = find(dst);
        if (!s || !d) return false;
        return has_edge(*s, *d);
    }

    bool has_edge(NodeIndex src, NodeIndex dst) const {
        const auto& nbrs = out_[src];
        return std::binary_search(nbrs.begin(), nbrs.end(), dst);
    }

    NodeIndex index_of(const NodeId& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw validation_error("unknown node: " + id);
        return it->second;
    }

    const NodeId& id_of(NodeIndex i) const { return ids_[i]; }

    // Node ids in insertion order.
    const std::vector<NodeId>& nodes() const { return ids_; }

    // Sorted neighbor index lists.
    const std::vector<NodeIndex>& out_neighbors(NodeIndex i) const { return out_[i]; }
    const std::vector<NodeIndex>& in_neighbors(NodeIndex i) const { return in_[i]; }

    size_t out_degree(NodeIndex i) const { return out_[i].size(); }
    size_t in_degree(NodeIndex i) const { return in_[i].size(); }

    // Accounts following v (in-neighbors), as ids.
    std::vector<NodeId> followers_of(const NodeId& v) const { return to_ids(in_[index_of(v)]); }

    // Accounts v follows (out-neighbors), as ids.
    std::vector<NodeId> friends_of(const NodeId& v) const { return to_ids(out_[index_of(v)]); }

    std::optional<int64_t> observed_at(NodeIndex src, NodeIndex dst) const {
        auto it = observed_at_.find(edge_key(src, dst));
        if (it == observed_at_.end()) return std::nullopt;
        return it->second;
    }

    // Visits every edge as (src_index, dst_index), ordered by src insertion
    // order then dst index.
    template <typename Fn>
    void for_each_edge(Fn fn) const {
        for (NodeIndex s = 0; s < out_.size(); ++s)
            for (NodeIndex d : out_[s]) fn(s, d);
    }

private:
    friend class Builder;

    std::optional<NodeIndex> find(const NodeId& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::vector<NodeId> to_ids(const std::vector<NodeIndex>& idx) const {
        std::vector<NodeId> out;
        out.reserve(idx.size());
        for (NodeIndex i : idx) out.push_back(ids_[i]);
        std::sort(out.begin(), out.end());
        return out;
    }

    static uint64_t edge_key(NodeIndex s, NodeIndex d) {
        return (static_cast<uint64_t>(s) << 32) | d;
    }

    std::vector<NodeId> ids_;
    std::unordered_map<NodeId, NodeIndex> index_;
    std::vector<std::vector<NodeIndex>> out_, in_;
    std::unordered_map<uint64_t, int64_t> observed_at_;
    size_t edge_count_ = 0;
};

class DirectedGraph::Builder {
public:
    NodeIndex add_node(const NodeId& id) {
        if (id.empty()) throw validation_error("empty node id");
        auto it = g_.index_.find(id);
        if (it != g_.index_.end()) return it->second;
        NodeIndex i = static_cast<NodeIndex>(g_.ids_.size());
        g_.ids_.push_back(id);
        g_.index_.emplace(id, i);
        g_.out_.emplace_back();
        g_.in_.emplace_back();
        return i;
    }

    // Returns false when the edge was already present (duplicates dedupe).
    bool add_edge(const NodeId& src, const NodeId& dst,
                  std::optional<int64_t> observed_at = std::nullopt) {
        if (src == dst) throw validation_error("self-loop " + src + " -> " + dst);
        NodeIndex s = add_node(src), d = add_node(dst);
        uint64_t key = edge_key(s, d);
        if (!edge_seen_.insert(key).second) return false;
        g_.out_[s].push_back(d);
        g_.in_[d].push_back(s);
        if (observed_at) g_.observed_at_.emplace(key, *observed_at);
        ++g_.edge_count_;
        return true;
    }

    DirectedGraph build() {
        for (auto& v : g_.out_) std::sort(v.begin(), v.end());
        for (auto& v : g_.in_) std::sort(v.begin(), v.end());
        edge_seen_.clear();
        return std::move(g_);
    }

private:
    DirectedGraph g_;
    std::unordered_set<uint64_t> edge_seen_;
};

// ---------------------------------------------------------------------------
// Account attributes

// The thirteen profile attributes plus the free-text description. Absent
// fields stay nullopt and are excluded from that attribute's histogram.
struct AccountAttributes {
    NodeId account;
    std::optional<int> created_year;
    std::optional<bool> default_profile;
    std::optional<bool> default_profile_image;
    std::optional<int64_t> favorites_count;
    std::optional<int64_t> followers_count;
    std::optional<int64_t> friends_count;
    std::optional<int64_t> listed_count;
    std::optional<int64_t> statuses_count;
    std::optional<bool> geo_enabled;
    std::optional<std::string> lang;
    std::optional<bool> is_protected;
    std::optional<std::string> utc_offset;
    std::optional<bool> verified;
    std::optional<std::string> description;
};

using AttributeTable = std::unordered_map<NodeId, AccountAttributes>;
using LabelTable = std::map<NodeId, std::string>;

struct SnapshotDelta {
    int64_t delivered = 0;  // followers present at t0
    int64_t remaining = 0;  // followers present at t1
    int64_t lost = 0;       // followers in t0 but not t1
};

inline SnapshotDelta compare_snapshots(const std::vector<NodeId>& t0, const std::vector<NodeId>& t1) {
    std::set<NodeId> a(t0.begin(), t0.end()), b(t1.begin(), t1.end());
    SnapshotDelta d;
    d.delivered = static_cast<int64_t>(a.size());
    d.remaining = static_cast<int64_t>(b.size());
    for (const auto& id : a)
        if (!b.count(id)) ++d.lost;
    return d;
}

// ---------------------------------------------------------------------------
// File formats

inline const std::vector<std::string> kEdgesHeader = {"src", "dst", "observed_at"};
inline const std::vector<std::string> kEdgesHeaderShort = {"src", "dst"};

inline const std::vector<std::string> kAttributesHeader = {
    "account_id",      "created_year",  "default_profile", "default_profile_image",
    "favorites_count", "followers_count", "friends_count", "listed_count",
    "statuses_count",  "geo_enabled",   "lang",            "protected",
    "utc_offset",      "verified",      "description"};

inline const std::vector<std::string> kLabelsHeader = {"account_id", "label"};

inline DirectedGraph load_edges(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty file: " + path);
    auto header = csv::split_line(line, 1);
    bool with_ts = header == kEdgesHeader;
    if (!with_ts && header != kEdgesHeaderShort)
        throw parse_error("expected header 'src,dst[,observed_at]' in " + path, 1);

    DirectedGraph::Builder b;
    long line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        auto f = csv::split_line(line, line_number);
        if (f.size() != header.size())
            throw parse_error("expected " + std::to_string(header.size()) + " fields, got " +
                                  std::to_string(f.size()),
                              line_number);
        if (f[0].empty() || f[1].empty()) throw parse_error("empty node id", line_number);
        if (f[0] == f[1]) throw validation_error("self-loop at line " + std::to_string(line_number));
        std::optional<int64_t> ts;
        if (with_ts && !f[2].empty()) {
            try {
                size_t pos = 0;
                ts = std::stoll(f[2], &pos);
                if (pos != f[2].size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw parse_error("bad observed_at '" + f[2] + "'", line_number);
            }
        }
        b.add_edge(f[0], f[1], ts);
    }
    return b.build();
}

inline void write_edges(const DirectedGraph& g, const std::string& path) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(g.edge_count());
    std::vector<std::optional<int64_t>> stamps;
    g.for_each_edge([&](NodeIndex s, NodeIndex d) {
        edges.emplace_back(g.id_of(s), g.id_of(d));
    });
    std::sort(edges.begin(), edges.end());
    std::ofstream out(path);
    if (!out) throw io_error("cannot write file: " + path);
    out << "src,dst,observed_at\n";
    for (const auto& [s, d] : edges) {
        auto ts = g.observed_at(g.index_of(s), g.index_of(d));
        out << csv::escape(s) << ',' << csv::escape(d) << ',';
        if (ts) out << *ts;
        out << '\n';
    }
}

namespace detail {

inline bool parse_bool(const std::string& s, long line_number) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw parse_error("bad boolean '" + s + "'", line_number);
}

inline int64_t parse_count(const std::string& s, long line_number) {
    int64_t v;
    try {
        size_t pos = 0;
        v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw parse_error("bad integer '" + s + "'", line_number);
    }
    if (v < 0) throw validation_error("negative count at line " + std::to_string(line_number));
    return v;
}

inline size_t utf8_length(const std::string& s) {
    size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;  // count non-continuation bytes
    return n;
}

}  // namespace detail

inline AttributeTable load_attributes(const std::string& path) {
    AttributeTable table;
    csv::read_file(path, kAttributesHeader, [&](const std::vector<std::string>& f, long ln) {
        if (f.size() != kAttributesHeader.size())
            throw parse_error("expected " + std::to_string(kAttributesHeader.size()) +
                                  " fields, got " + std::to_string(f.size()),
                              ln);
        AccountAttributes a;
        a.account = f[0];
        if (a.account.empty()) throw parse_error("empty account id", ln);
        if (table.count(a.account))
            throw validation_error("duplicate account '" + a.account + "' at line " + std::to_string(ln));
        auto opt = [](const std::string& s) { return !s.empty(); };
        if (opt(f[1])) {
            int year = static_cast<int>(detail::parse_count(f[1], ln));
            if (year < 2006)
                throw validation_error("created_year before 2006 at line " + std::to_string(ln));
            a.created_year = year;
        }
        if (opt(f[2])) a.default_profile = detail::parse_bool(f[2], ln);
        if (opt(f[3])) a.default_profile_image = detail::parse_bool(f[3], ln);
        if (opt(f[4])) a.favorites_count = detail::parse_count(f[4], ln);
        if (opt(f[5])) a.followers_count = detail::parse_count(f[5], ln);
        if (opt(f[6])) a.friends_count = detail::parse_count(f[6], ln);
        if (opt(f[7])) a.listed_count = detail::parse_count(f[7], ln);
        if (opt(f[8])) a.statuses_count = detail::parse_count(f[8], ln);
        if (opt(f[9])) a.geo_enabled = detail::parse_bool(f[9], ln);
        if (opt(f[10])) a.lang = f[10];
        if (opt(f[11])) a.is_protected = detail::parse_bool(f[11], ln);
        if (opt(f[12])) a.utc_offset = f[12];
        if (opt(f[13])) a.verified = detail::parse_bool(f[13], ln);
        if (opt(f[14])) {
            if (detail::utf8_length(f[14]) > 160)
                throw validation_error("description longer than 160 characters at line " +
                                       std::to_string(ln));
            a.description = f[14];
        }
        table.emplace(a.account, std::move(a));
    });
    return table;
}

inline void write_attributes(const AttributeTable& table, const std::string& path) {
    std::vector<NodeId> keys;
    keys.reserve(table.size());
    for (const auto& [k, _] : table) keys.push_back(k);
    std::sort(keys.begin(), keys.end());

    std::ofstream out(path);
    if (!out) throw io_error("cannot write file: " + path);
    out << csv::join_row(kAttributesHeader) << '\n';
    auto b2s = [](const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; };
    auto i2s = [](const auto& v) { return v ? std::to_string(*v) : std::string(); };
    for (const auto& k : keys) {
        const auto& a = table.at(k);
        std::vector<std::string> row = {
            a.account,
            i2s(a.created_year),
            b2s(a.default_profile),
            b2s(a.default_profile_image),
            i2s(a.favorites_count),
            i2s(a.followers_count),
            i2s(a.friends_count),
            i2s(a.listed_count),
            i2s(a.statuses_count),
            b2s(a.geo_enabled),
            a.lang.value_or(""),
            b2s(a.is_protected),
            a.utc_offset.value_or(""),
            b2s(a.verified),
            a.description.value_or(""),
        };
        out << csv::join_row(row) << '\n';
    }
}

inline LabelTable load_labels(const std::string& path) {
    LabelTable labels;
    csv::read_file(path, kLabelsHeader, [&](const std::vector<std::string>& f, long ln) {
        if (f.size() != 2) throw parse_error("expected 2 fields", ln);
        if (f[1] != "genuine" && f[1] != "fraud")
            throw validation_error("label must be genuine|fraud at line " + std::to_string(ln));
        if (!labels.emplace(f[0], f[1]).second)
            throw validation_error("duplicate account '" + f[0] + "' at line " + std::to_string(ln));
    });
    return labels;
}

inline void write_labels(const LabelTable& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write file: " + path);
    out << "account_id,label\n";
    for (const auto& [id, label] : labels) out << csv::escape(id) << ',' << label << '\n';
}

}  // namespace linkscope
