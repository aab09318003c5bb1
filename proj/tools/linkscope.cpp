// Command-line front end wiring the library into a file-based pipeline.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 computation error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkscope/attrstats.hpp"
#include "linkscope/errors.hpp"
#include "linkscope/fraudclf.hpp"
#include "linkscope/graph.hpp"
#include "linkscope/harvester.hpp"
#include "linkscope/netmetrics.hpp"
#include "linkscope/powerlaw.hpp"
#include "linkscope/regime_profiles.hpp"
#include "linkscope/report.hpp"
#include "linkscope/stopwords.hpp"
#include "linkscope/subnet.hpp"
#include "linkscope/synthgen.hpp"
#include "linkscope/version.hpp"

namespace ls = linkscope;

namespace {

std::vector<ls::NodeId> split_ids(const std::string& csv_list) {
    std::vector<ls::NodeId> out;
    std::string cur;
    for (char c : csv_list) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<ls::NodeId> read_id_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ls::io_error("cannot open " + path);
    std::vector<ls::NodeId> ids;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) ids.push_back(line);
    }
    return ids;
}

void append_csv_row(const std::string& path, const std::string& header, const std::string& row) {
    bool need_header = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw ls::io_error("cannot write " + path);
    if (need_header) out << header << '\n';
    out << row << '\n';
}

struct MetricsArgs {
    std::string edges, egos, view = "egonet", csv_path, format = "json";
    std::string direction = "in";
};

ls::Direction parse_direction(const std::string& s) {
    if (s == "in") return ls::Direction::In;
    if (s == "out") return ls::Direction::Out;
    if (s == "both") return ls::Direction::Both;
    throw ls::validation_error("direction must be in|out|both");
}

int run_metrics(const MetricsArgs& a) {
    ls::DirectedGraph g = ls::load_edges(a.edges);
    ls::MetricReport report;
    if (a.view == "graph") {
        report = ls::compute_metrics(g);
    } else {
        if (a.egos.empty()) throw ls::validation_error("--egos required for egonet/boomerang views");
        auto egos = split_ids(a.egos);
        auto dir = parse_direction(a.direction);
        ls::SubnetView view = a.view == "boomerang" ? ls::extract_boomerang(g, egos, dir)
                                                    : ls::extract_egonet(g, egos, dir);
        report = ls::compute_metrics(view);
    }
    nlohmann::json j = report.to_json();
    j["view"] = a.view;
    if (a.format == "json") std::cout << j.dump(2) << '\n';
    else {
        std::cout << "n_nodes,n_edges,density,transitivity,reciprocity,bipartite_density\n";
        auto f = [](const std::optional<double>& v) { return v ? std::to_string(*v) : std::string(); };
        std::cout << report.n_nodes << ',' << report.n_edges << ',' << f(report.density) << ','
                  << f(report.transitivity) << ',' << f(report.reciprocity) << ','
                  << f(report.bipartite_density) << '\n';
    }
    if (!a.csv_path.empty()) {
        auto f = [](const std::optional<double>& v) { return v ? std::to_string(*v) : std::string(); };
        std::ostringstream row;
        row << a.view << ',' << report.n_nodes << ',' << report.n_edges << ',' << f(report.density)
            << ',' << f(report.transitivity) << ',' << f(report.reciprocity) << ','
            << f(report.bipartite_density);
        append_csv_row(a.csv_path, "view,n_nodes,n_edges,density,transitivity,reciprocity,bipartite_density",
                       row.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linkscope: link-fraud characterization pipeline"};
    app.set_version_flag("--version", std::string("linkscope ") + ls::kVersion);
    app.require_subcommand(1);

    // --- ingest ---
    auto* ingest = app.add_subcommand("ingest", "validate edge/attribute/label files and summarize");
    std::string in_edges, in_attrs, in_labels;
    ingest->add_option("--edges", in_edges, "edges.csv")->required();
    ingest->add_option("--attrs", in_attrs, "attributes.csv");
    ingest->add_option("--labels", in_labels, "labels.csv");

    // --- egonet / boomerang ---
    std::string sub_edges, sub_egos, sub_out, sub_dir = "in";
    for (const char* name : {"egonet", "boomerang"}) {
        auto* c = app.add_subcommand(name, std::string("extract the ") + name + " of the given egos");
        c->add_option("--edges", sub_edges, "edges.csv")->required();
        c->add_option("--egos", sub_egos, "comma-separated ego ids")->required();
        c->add_option("--out", sub_out, "output directory")->required();
        c->add_option("--direction", sub_dir, "neighbor direction: in|out|both");
    }

    // --- metrics ---
    MetricsArgs margs;
    auto* metrics = app.add_subcommand("metrics", "summary statistics for a graph or view");
    metrics->add_option("--edges", margs.edges, "edges.csv")->required();
    metrics->add_option("--egos", margs.egos, "comma-separated ego ids");
    metrics->add_option("--view", margs.view, "graph|egonet|boomerang");
    metrics->add_option("--csv", margs.csv_path, "append a CSV row to this file");
    metrics->add_option("--format", margs.format, "json|csv");
    metrics->add_option("--direction", margs.direction, "neighbor direction: in|out|both");

    // --- entropy ---
    std::string ent_attrs, ent_scope = "all", ent_edges, ent_egos;
    auto* entropy_cmd = app.add_subcommand("entropy", "attribute entropy table");
    entropy_cmd->add_option("--attrs", ent_attrs, "attributes.csv")->required();
    entropy_cmd->add_option("--edges", ent_edges, "edges.csv (with --egos: restrict to their followers)");
    entropy_cmd->add_option("--egos", ent_egos, "comma-separated ego ids");

    // --- plfit ---
    std::string pl_attrs, pl_column = "followers_count", pl_counts, pl_points;
    auto* plfit = app.add_subcommand("plfit", "fit a power-law exponent to count data");
    plfit->add_option("--attrs", pl_attrs, "attributes.csv");
    plfit->add_option("--column", pl_column, "count column (default followers_count)");
    plfit->add_option("--counts", pl_counts, "file with one count per line (alternative input)");
    plfit->add_option("--points", pl_points, "write rank,frequency points to this file");

    // --- tokens ---
    std::string tok_attrs, tok_stopwords;
    auto* tokens_cmd = app.add_subcommand("tokens", "description token frequencies");
    tokens_cmd->add_option("--attrs", tok_attrs, "attributes.csv")->required();
    tokens_cmd->add_option("--stopwords", tok_stopwords, "stopword file (one word per line)");

    // --- synth ---
    std::string synth_config, synth_out, synth_profiles;
    uint64_t synth_seed = 0;
    auto* synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    synth->add_option("--config", synth_config, "regimes JSON config")->required();
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--seed", synth_seed, "base seed (default 0)");
    synth->add_option("--attr-profiles", synth_profiles, "attribute profile JSON override");

    // --- features ---
    std::string feat_edges, feat_attrs, feat_accounts, feat_out;
    auto* features_cmd = app.add_subcommand("features", "per-account follower-entropy features");
    features_cmd->add_option("--edges", feat_edges, "edges.csv")->required();
    features_cmd->add_option("--attrs", feat_attrs, "attributes.csv")->required();
    features_cmd->add_option("--accounts", feat_accounts, "file of account ids (e.g. egos.txt)")->required();
    features_cmd->add_option("--out", feat_out, "output features.csv")->required();

    // --- train ---
    std::string train_feat, train_labels, train_out, train_group = "All";
    double train_C = 1.0, train_gamma = 0.0;
    auto* train = app.add_subcommand("train", "train an RBF-SVM and save the model");
    train->add_option("--features", train_feat, "features.csv")->required();
    train->add_option("--labels", train_labels, "labels.csv")->required();
    train->add_option("--out", train_out, "model JSON path")->required();
    train->add_option("--group", train_group, "feature group (default All)");
    train->add_option("--C", train_C, "regularization (default 1.0)");
    train->add_option("--gamma", train_gamma, "kernel width (default 1/(d*mean variance))");

    // --- crossval ---
    std::string cv_feat, cv_labels, cv_group = "All";
    int cv_k = 10;
    double cv_C = 1.0, cv_gamma = 0.0;
    uint64_t cv_seed = 0;
    auto* crossval = app.add_subcommand("crossval", "stratified k-fold evaluation");
    crossval->add_option("--features", cv_feat, "features.csv")->required();
    crossval->add_option("--labels", cv_labels, "labels.csv")->required();
    crossval->add_option("--group", cv_group, "feature group (default All)");
    crossval->add_option("--k", cv_k, "folds (default 10)");
    crossval->add_option("--C", cv_C, "regularization");
    crossval->add_option("--gamma", cv_gamma, "kernel width");
    crossval->add_option("--seed", cv_seed, "fold shuffle seed");

    // --- harvest ---
    std::string hv_fixture, hv_out;
    long hv_hours = 24;
    int hv_credentials = 1;
    auto* harvest = app.add_subcommand("harvest", "simulate the polling schedule against a fixture");
    harvest->add_option("--fixture", hv_fixture, "fixture directory (edges/attributes/egos)")->required();
    harvest->add_option("--hours", hv_hours, "simulated hours (default 24)");
    harvest->add_option("--credentials", hv_credentials, "credential count (default 1)");
    harvest->add_option("--out", hv_out, "snapshots.ndjson output path");

    // --- report ---
    std::string rep_in, rep_out;
    auto* report_cmd = app.add_subcommand("report", "summary tables for a directory of services");
    report_cmd->add_option("--in", rep_in, "directory of service subdirectories")->required();
    report_cmd->add_option("--out", rep_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);  // prints usage; nonzero on error
    }

    try {
        if (*ingest) {
            ls::DirectedGraph g = ls::load_edges(in_edges);
            nlohmann::json j;
            j["nodes"] = g.node_count();
            j["edges"] = g.edge_count();
            if (!in_attrs.empty()) j["attributed_accounts"] = ls::load_attributes(in_attrs).size();
            if (!in_labels.empty()) {
                auto labels = ls::load_labels(in_labels);
                int64_t fraud = 0;
                for (const auto& [_, l] : labels) fraud += l == "fraud";
                j["labels"] = {{"total", labels.size()},
                               {"fraud", fraud},
                               {"genuine", static_cast<int64_t>(labels.size()) - fraud}};
            }
            std::cout << j.dump(2) << '\n';
        } else if (app.got_subcommand("egonet") || app.got_subcommand("boomerang")) {
            ls::DirectedGraph g = ls::load_edges(sub_edges);
            auto egos = split_ids(sub_egos);
            auto dir = parse_direction(sub_dir);
            ls::SubnetView view = app.got_subcommand("boomerang")
                                      ? ls::extract_boomerang(g, egos, dir)
                                      : ls::extract_egonet(g, egos, dir);
            ls::write_view(view, sub_out);
            std::cout << "wrote " << view.members.size() << " members, " << view.edges.size()
                      << " edges to " << sub_out << '\n';
        } else if (*metrics) {
            return run_metrics(margs);
        } else if (*entropy_cmd) {
            auto attrs = ls::load_attributes(ent_attrs);
            std::vector<ls::AccountAttributes> rows;
            if (!ent_edges.empty() && !ent_egos.empty()) {
                ls::DirectedGraph g = ls::load_edges(ent_edges);
                std::set<ls::NodeId> seen;
                for (const auto& ego : split_ids(ent_egos))
                    for (const auto& f : g.followers_of(ego))
                        if (seen.insert(f).second) {
                            auto it = attrs.find(f);
                            if (it != attrs.end()) rows.push_back(it->second);
                        }
            } else {
                std::vector<ls::NodeId> keys;
                for (const auto& [k, _] : attrs) keys.push_back(k);
                std::sort(keys.begin(), keys.end());
                for (const auto& k : keys) rows.push_back(attrs.at(k));
            }
            auto table = ls::attribute_entropy_table(rows);
            std::cout << "scope";
            for (const auto& n : ls::attr_names()) std::cout << ',' << n;
            std::cout << "\nentropy";
            std::cout.precision(4);
            for (int i = 0; i < ls::kAttrCount; ++i) {
                std::cout << ',';
                if (table.bits[static_cast<size_t>(i)]) std::cout << *table.bits[static_cast<size_t>(i)];
            }
            std::cout << "\nmax_entropy";
            for (int i = 0; i < ls::kAttrCount; ++i)
                std::cout << ','
                          << ls::max_entropy(ls::outcome_space_size(
                                 static_cast<ls::Attr>(i), table.observed_outcomes[static_cast<size_t>(i)]));
            std::cout << '\n';
        } else if (*plfit) {
            std::vector<int64_t> counts;
            if (!pl_counts.empty()) {
                std::ifstream in(pl_counts);
                if (!in) throw ls::io_error("cannot open " + pl_counts);
                int64_t v;
                while (in >> v)
                    if (v >= 1) counts.push_back(v);
            } else if (!pl_attrs.empty()) {
                auto attrs = ls::load_attributes(pl_attrs);
                std::vector<ls::NodeId> keys;
                for (const auto& [k, _] : attrs) keys.push_back(k);
                std::sort(keys.begin(), keys.end());
                for (const auto& k : keys) {
                    const auto& a = attrs.at(k);
                    std::optional<int64_t> v;
                    if (pl_column == "followers_count") v = a.followers_count;
                    else if (pl_column == "friends_count") v = a.friends_count;
                    else if (pl_column == "favorites_count") v = a.favorites_count;
                    else if (pl_column == "listed_count") v = a.listed_count;
                    else if (pl_column == "statuses_count") v = a.statuses_count;
                    else throw ls::validation_error("unknown count column: " + pl_column);
                    if (v && *v >= 1) counts.push_back(*v);  // zero counts carry no rank information
                }
            } else {
                throw ls::validation_error("plfit needs --attrs or --counts");
            }
            ls::PowerLawFit fit = ls::fit_powerlaw(counts);
            nlohmann::json j;
            j["n"] = fit.n;
            j["alpha_mle"] = fit.divergent ? nlohmann::json(nullptr) : nlohmann::json(fit.alpha_mle);
            j["alpha_ls"] = fit.alpha_ls;
            j["divergent"] = fit.divergent;
            std::cout << j.dump(2) << '\n';
            if (!pl_points.empty()) {
                std::ofstream out(pl_points);
                if (!out) throw ls::io_error("cannot write " + pl_points);
                out << "rank,frequency\n";
                for (const auto& [r, f] : ls::rank_frequency_points(counts)) out << r << ',' << f << '\n';
            }
        } else if (*tokens_cmd) {
            auto attrs = ls::load_attributes(tok_attrs);
            std::vector<std::string> descriptions;
            std::vector<ls::NodeId> keys;
            for (const auto& [k, _] : attrs) keys.push_back(k);
            std::sort(keys.begin(), keys.end());
            for (const auto& k : keys)
                if (attrs.at(k).description) descriptions.push_back(*attrs.at(k).description);
            auto stop = tok_stopwords.empty() ? ls::default_stopwords() : ls::load_stopwords(tok_stopwords);
            std::cout << "token,count\n";
            for (const auto& [t, c] : ls::token_frequency(descriptions, stop))
                std::cout << t << ',' << c << '\n';
        } else if (*synth) {
            std::ifstream in(synth_config);
            if (!in) throw ls::io_error("cannot open " + synth_config);
            nlohmann::json cfg;
            try { in >> cfg; } catch (const nlohmann::json::exception& e) {
                throw ls::parse_error(std::string("bad config JSON: ") + e.what());
            }
            uint64_t seed = synth->count("--seed") ? synth_seed : cfg.value("seed", uint64_t{0});
            ls::RegimeProfiles profiles =
                synth_profiles.empty() ? ls::RegimeProfiles::defaults() : ls::RegimeProfiles::load(synth_profiles);
            auto spec = ls::parse_synth_config(cfg, seed);
            for (auto& [p, _] : spec) p.profiles = &profiles;
            ls::LabeledCorpus corpus;
            if (spec.size() == 1) {
                int counter = 0;
                corpus = ls::gen_services(spec[0].first, spec[0].second, &counter);
            } else {
                corpus = ls::gen_corpus(spec);
            }
            ls::write_corpus(corpus, synth_out);
            std::cout << "wrote corpus: " << corpus.graph.node_count() << " nodes, "
                      << corpus.graph.edge_count() << " edges, " << corpus.customers.size()
                      << " customers -> " << synth_out << '\n';
        } else if (*features_cmd) {
            ls::DirectedGraph g = ls::load_edges(feat_edges);
            auto attrs = ls::load_attributes(feat_attrs);
            auto accounts = read_id_file(feat_accounts);
            std::vector<std::pair<ls::NodeId, ls::FeatureVector>> rows;
            for (const auto& id : accounts) rows.emplace_back(id, ls::extract_features(id, g, attrs));
            ls::write_features(rows, feat_out);
            std::cout << "wrote " << rows.size() << " feature rows to " << feat_out << '\n';
        } else if (*train) {
            auto rows = ls::load_features(train_feat);
            auto labels = ls::load_labels(train_labels);
            const auto& group = ls::group_by_name(train_group);
            std::vector<std::vector<double>> X;
            std::vector<int> y;
            for (const auto& [id, fv] : rows) {
                auto it = labels.find(id);
                if (it == labels.end()) throw ls::validation_error("no label for account " + id);
                std::vector<double> row;
                for (int f : group.indices) row.push_back(fv[static_cast<size_t>(f)]);
                X.push_back(std::move(row));
                y.push_back(ls::label_to_sign(it->second));
            }
            ls::SvmModel model = ls::train_svm(X, y, train_C, train_gamma, group.indices);
            model.save(train_out);
            std::cout << "trained on " << X.size() << " examples; " << model.support_vectors.size()
                      << " support vectors -> " << train_out << '\n';
        } else if (*crossval) {
            auto rows = ls::load_features(cv_feat);
            auto labels = ls::load_labels(cv_labels);
            std::vector<ls::FeatureVector> X;
            std::vector<std::string> y;
            for (const auto& [id, fv] : rows) {
                auto it = labels.find(id);
                if (it == labels.end()) throw ls::validation_error("no label for account " + id);
                X.push_back(fv);
                y.push_back(it->second);
            }
            const auto& group = ls::group_by_name(cv_group);
            ls::EvalReport report = ls::cross_validate(X, y, cv_k, group, cv_C, cv_gamma, cv_seed);
            nlohmann::json j = report.to_json();
            j["group"] = cv_group;
            j["k"] = cv_k;
            j["seed"] = cv_seed;
            std::cout << j.dump(2) << '\n';
        } else if (*harvest) {
            ls::FixtureSource source(hv_fixture);
            ls::CredentialPool pool = ls::CredentialPool::of(hv_credentials);
            ls::RunResult result = ls::run_harvest(ls::default_tasks(), pool, source, hv_hours * 60);
            if (!hv_out.empty()) ls::write_snapshots(result.records, hv_out);
            nlohmann::json j = result.stats.to_json();
            j["records"] = result.records.size();
            std::cout << j.dump(2) << '\n';
        } else if (*report_cmd) {
            ls::build_report(rep_in, rep_out);
            std::cout << "report written to " << rep_out << '\n';
        }
        return 0;
    } catch (const ls::convergence_error& e) {
        std::cerr << "computation error: " << e.what() << '\n';
        return 3;
    } catch (const ls::generation_error& e) {
        std::cerr << "computation error: " << e.what() << '\n';
        return 3;
    } catch (const ls::singular_exponent_error& e) {
        std::cerr << "computation error: " << e.what() << '\n';
        return 3;
    } catch (const ls::internal_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const ls::error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
