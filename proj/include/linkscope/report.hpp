#pragma once
// Reproduction bundle: per-service summary tables with the reference column
// layouts (egonet stats, boomerang stats, reuse/overlap stats, attribute
// entropy with a max-entropy row) plus rank-frequency point files for
// replotting.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "linkscope/attrstats.hpp"
#include "linkscope/errors.hpp"
#include "linkscope/graph.hpp"
#include "linkscope/netmetrics.hpp"
#include "linkscope/powerlaw.hpp"
#include "linkscope/subnet.hpp"

namespace linkscope {

struct ServiceInputs {
    std::string name;
    DirectedGraph graph;
    AttributeTable attributes;
    std::vector<NodeId> egos;
};

inline ServiceInputs load_service_dir(const std::filesystem::path& dir) {
    ServiceInputs s;
    s.name = dir.filename().string();
    auto need = [&](const char* f) {
        auto p = dir / f;
        if (!std::filesystem::exists(p)) throw io_error("missing " + p.string());
        return p.string();
    };
    s.graph = load_edges(need("edges.csv"));
    s.attributes = load_attributes(need("attributes.csv"));
    std::ifstream in(need("egos.txt"));
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) s.egos.push_back(line);
    }
    if (s.egos.empty()) throw validation_error("no egos listed for service " + s.name);
    return s;
}

namespace report_detail {

inline std::string fmt(double v, int prec = 6) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

inline std::string fmt_opt(const std::optional<double>& v, int prec = 6) {
    return v ? fmt(*v, prec) : std::string();
}

}  // namespace report_detail

// Writes egonet_stats.csv, boomerang_stats.csv, reuse_stats.csv,
// attribute_entropy.csv and rank_frequency/<service>.csv for every service
// subdirectory found under input_dir.
inline void build_report(const std::string& input_dir, const std::string& output_dir) {
    namespace fs = std::filesystem;
    using report_detail::fmt;
    using report_detail::fmt_opt;

    if (!fs::is_directory(input_dir)) throw io_error("not a directory: " + input_dir);
    std::vector<fs::path> service_dirs;
    for (const auto& e : fs::directory_iterator(input_dir))
        if (e.is_directory() && fs::exists(e.path() / "edges.csv")) service_dirs.push_back(e.path());
    std::sort(service_dirs.begin(), service_dirs.end());
    if (service_dirs.empty())
        throw io_error("no service directories (containing edges.csv) under " + input_dir);

    fs::create_directories(output_dir);
    fs::create_directories(fs::path(output_dir) / "rank_frequency");

    std::ofstream ego_out(output_dir + "/egonet_stats.csv");
    ego_out << "service,n_nodes,n_edges,density,transitivity,reciprocity\n";
    std::ofstream boom_out(output_dir + "/boomerang_stats.csv");
    boom_out << "service,n_nodes,n_edges,bipartite_density\n";
    std::ofstream reuse_out(output_dir + "/reuse_stats.csv");
    reuse_out << "service,n_nodes,overlap,est_pool_nodes\n";
    std::ofstream ent_out(output_dir + "/attribute_entropy.csv");
    ent_out << "service";
    for (const auto& n : attr_names()) ent_out << ',' << n;
    ent_out << '\n';

    std::array<int64_t, kAttrCount> max_observed{};

    for (const auto& dir : service_dirs) {
        ServiceInputs svc = load_service_dir(dir);

        SubnetView ego = extract_egonet(svc.graph, svc.egos);
        MetricReport em = compute_metrics(ego);
        ego_out << csv::escape(svc.name) << ',' << em.n_nodes << ',' << em.n_edges << ','
                << fmt_opt(em.density) << ',' << fmt_opt(em.transitivity) << ','
                << fmt_opt(em.reciprocity) << '\n';

        SubnetView boom = extract_boomerang(svc.graph, svc.egos);
        MetricReport bm = compute_metrics(boom);
        boom_out << csv::escape(svc.name) << ',' << bm.n_nodes << ',' << bm.n_edges << ','
                 << fmt_opt(bm.bipartite_density) << '\n';

        if (svc.egos.size() >= 2) {
            auto a = svc.graph.followers_of(svc.egos[0]);
            auto b = svc.graph.followers_of(svc.egos[1]);
            std::set<NodeId> uni(a.begin(), a.end());
            uni.insert(b.begin(), b.end());
            std::string est;
            try { est = std::to_string(mse_estimate(a, b)); }
            catch (const undefined_input_error&) {}
            reuse_out << csv::escape(svc.name) << ',' << uni.size() << ','
                      << fmt(overlap_coefficient(a, b), 4) << ',' << est << '\n';
        }

        // Entropy over the delivered followers (ego union in-neighbors).
        std::vector<AccountAttributes> followers;
        std::set<NodeId> seen;
        for (const auto& e : svc.egos)
            for (const auto& f : svc.graph.followers_of(e))
                if (seen.insert(f).second) {
                    auto it = svc.attributes.find(f);
                    if (it != svc.attributes.end()) followers.push_back(it->second);
                }
        if (!followers.empty()) {
            auto table = attribute_entropy_table(followers);
            ent_out << csv::escape(svc.name);
            for (int i = 0; i < kAttrCount; ++i) {
                ent_out << ',' << fmt_opt(table.bits[static_cast<size_t>(i)], 4);
                max_observed[static_cast<size_t>(i)] =
                    std::max(max_observed[static_cast<size_t>(i)], table.observed_outcomes[static_cast<size_t>(i)]);
            }
            ent_out << '\n';

            std::vector<int64_t> counts;
            for (const auto& a : followers)
                if (a.followers_count) counts.push_back(*a.followers_count);
            std::ofstream rf_out(output_dir + "/rank_frequency/" + svc.name + ".csv");
            rf_out << "rank,frequency\n";
            for (const auto& [rank, freq] : rank_frequency_points(counts))
                rf_out << rank << ',' << freq << '\n';
        }
    }

    ent_out << "max_entropy";
    for (int i = 0; i < kAttrCount; ++i) {
        auto space = outcome_space_size(static_cast<Attr>(i), max_observed[static_cast<size_t>(i)]);
        ent_out << ',' << fmt(max_entropy(space), 4);
    }
    ent_out << '\n';
}

}  // namespace linkscope
