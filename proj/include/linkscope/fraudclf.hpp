#pragma once
// First-order entropy features and the classification harness.
//
// A feature vector holds, for one account, the entropy of each of the 13
// attributes measured over that account's followers (not the account's own
// values). Feature groups follow the standard taxonomy: Connection,
// Activity, Profile, Geography, and All (their union).

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "linkscope/attrstats.hpp"
#include "linkscope/errors.hpp"
#include "linkscope/graph.hpp"
#include "linkscope/svm.hpp"

#include <json.hpp>

namespace linkscope {

using FeatureVector = std::array<double, kAttrCount>;

struct FeatureGroup {
    std::string name;
    std::vector<int> indices;
};

// Connection: followers, friends. Activity: statuses, lists, favorites.
// Profile: default profile (and image), verified, created year.
// Geography: language, UTC. All: the union (geo_enabled and protected
// belong to no named group and stay out of All as well).
inline const std::vector<FeatureGroup>& standard_groups() {
    static const std::vector<FeatureGroup> groups = {
        {"Connection", {static_cast<int>(Attr::Followers), static_cast<int>(Attr::Friends)}},
        {"Activity",
         {static_cast<int>(Attr::Statuses), static_cast<int>(Attr::Lists),
          static_cast<int>(Attr::Favorites)}},
        {"Profile",
         {static_cast<int>(Attr::DefaultProfile), static_cast<int>(Attr::DefaultProfileImage),
          static_cast<int>(Attr::Verified), static_cast<int>(Attr::CreatedYear)}},
        {"Geography", {static_cast<int>(Attr::Lang), static_cast<int>(Attr::UtcOffset)}},
        {"All",
         {static_cast<int>(Attr::CreatedYear), static_cast<int>(Attr::DefaultProfile),
          static_cast<int>(Attr::DefaultProfileImage), static_cast<int>(Attr::Favorites),
          static_cast<int>(Attr::Followers), static_cast<int>(Attr::Friends),
          static_cast<int>(Attr::Lists), static_cast<int>(Attr::Statuses),
          static_cast<int>(Attr::Lang), static_cast<int>(Attr::UtcOffset),
          static_cast<int>(Attr::Verified)}},
    };
    return groups;
}

inline const FeatureGroup& group_by_name(const std::string& name) {
    for (const auto& g : standard_groups())
        if (g.name == name) return g;
    throw validation_error("unknown feature group: " + name);
}

// Entropy of each attribute over the account's attributed followers.
// Attributes that are missing on every follower contribute 0 bits.
inline FeatureVector extract_features(const NodeId& account, const DirectedGraph& g,
                                      const AttributeTable& attrs) {
    std::vector<const AccountAttributes*> followers;
    for (NodeIndex fi : g.in_neighbors(g.index_of(account))) {
        auto it = attrs.find(g.id_of(fi));
        if (it != attrs.end()) followers.push_back(&it->second);
    }
    if (followers.size() < 2)
        throw insufficient_data_error("account " + account + " has " +
                                      std::to_string(followers.size()) +
                                      " attributed followers; need >= 2");
    FeatureVector fv{};
    std::array<Histogram, kAttrCount> hists;
    for (const auto* a : followers)
        for (int i = 0; i < kAttrCount; ++i) {
            auto label = outcome_label(*a, static_cast<Attr>(i));
            if (label) hists[i].add(*label);
        }
    for (int i = 0; i < kAttrCount; ++i) fv[i] = hists[i].empty() ? 0.0 : entropy(hists[i]);
    return fv;
}

// ---------------------------------------------------------------------------
// Evaluation

struct FoldStats {
    int64_t tp = 0, fp = 0, tn = 0, fn = 0;
    double precision() const { return tp + fp == 0 ? 0.0 : double(tp) / double(tp + fp); }
    double recall() const { return tp + fn == 0 ? 0.0 : double(tp) / double(tp + fn); }
};

struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    FoldStats confusion;               // pooled over all test folds
    std::vector<FoldStats> folds;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["precision"] = precision;
        j["recall"] = recall;
        j["f1"] = f1;
        j["confusion"] = {{"tp", confusion.tp}, {"fp", confusion.fp},
                          {"tn", confusion.tn}, {"fn", confusion.fn}};
        j["folds"] = nlohmann::json::array();
        for (const auto& f : folds)
            j["folds"].push_back({{"tp", f.tp}, {"fp", f.fp}, {"tn", f.tn}, {"fn", f.fn},
                                  {"precision", f.precision()}, {"recall", f.recall()}});
        return j;
    }
};

inline int label_to_sign(const std::string& label) {
    if (label == "fraud") return 1;
    if (label == "genuine") return -1;
    throw validation_error("label must be genuine|fraud, got '" + label + "'");
}

// Stratified k-fold cross validation, deterministic under seed. Features are
// restricted to the group's indices; standardization is fit inside each
// fold's training split by train_svm. Precision/recall pool test predictions
// across folds with fraud as the positive class.
inline EvalReport cross_validate(const std::vector<FeatureVector>& X,
                                 const std::vector<std::string>& labels, int k,
                                 const FeatureGroup& group, double C = 1.0, double gamma = 0.0,
                                 uint64_t seed = 0) {
    if (X.size() != labels.size()) throw validation_error("feature/label count mismatch");
    if (k < 2) throw validation_error("k must be >= 2");

    std::vector<int> y(labels.size());
    std::vector<size_t> pos_idx, neg_idx;
    for (size_t i = 0; i < labels.size(); ++i) {
        y[i] = label_to_sign(labels[i]);
        (y[i] > 0 ? pos_idx : neg_idx).push_back(i);
    }
    if (pos_idx.size() < static_cast<size_t>(k) || neg_idx.size() < static_cast<size_t>(k))
        throw insufficient_data_error("need at least k examples of each class");

    std::mt19937_64 rng(seed);
    std::shuffle(pos_idx.begin(), pos_idx.end(), rng);
    std::shuffle(neg_idx.begin(), neg_idx.end(), rng);
    std::vector<int> fold_of(X.size());
    for (size_t i = 0; i < pos_idx.size(); ++i) fold_of[pos_idx[i]] = static_cast<int>(i % k);
    for (size_t i = 0; i < neg_idx.size(); ++i) fold_of[neg_idx[i]] = static_cast<int>(i % k);

    auto project = [&](size_t i) {
        std::vector<double> row;
        row.reserve(group.indices.size());
        for (int f : group.indices) row.push_back(X[i][static_cast<size_t>(f)]);
        return row;
    };

    EvalReport report;
    for (int fold = 0; fold < k; ++fold) {
        std::vector<std::vector<double>> train_x;
        std::vector<int> train_y;
        std::vector<size_t> test_idx;
        for (size_t i = 0; i < X.size(); ++i) {
            if (fold_of[i] == fold) test_idx.push_back(i);
            else { train_x.push_back(project(i)); train_y.push_back(y[i]); }
        }
        SvmModel model = train_svm(train_x, train_y, C, gamma, group.indices);
        FoldStats fs;
        for (size_t i : test_idx) {
            int pred = model.predict(project(i));
            if (pred > 0) (y[i] > 0 ? fs.tp : fs.fp)++;
            else (y[i] > 0 ? fs.fn : fs.tn)++;
        }
        report.confusion.tp += fs.tp;
        report.confusion.fp += fs.fp;
        report.confusion.tn += fs.tn;
        report.confusion.fn += fs.fn;
        report.folds.push_back(fs);
    }
    report.precision = report.confusion.precision();
    report.recall = report.confusion.recall();
    report.f1 = (report.precision + report.recall) > 0
                    ? 2.0 * report.precision * report.recall / (report.precision + report.recall)
                    : 0.0;
    return report;
}

// ---------------------------------------------------------------------------
// Feature file I/O (CSV with account_id + the 13 feature columns).

inline void write_features(const std::vector<std::pair<NodeId, FeatureVector>>& rows,
                           const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write file: " + path);
    out << "account_id";
    for (const auto& name : attr_names()) out << ',' << name;
    out << '\n';
    out.precision(17);
    for (const auto& [id, fv] : rows) {
        out << csv::escape(id);
        for (double v : fv) out << ',' << v;
        out << '\n';
    }
}

inline std::vector<std::pair<NodeId, FeatureVector>> load_features(const std::string& path) {
    std::vector<std::string> header = {"account_id"};
    for (const auto& name : attr_names()) header.push_back(name);
    std::vector<std::pair<NodeId, FeatureVector>> rows;
    csv::read_file(path, header, [&](const std::vector<std::string>& f, long ln) {
        if (f.size() != header.size()) throw parse_error("wrong field count", ln);
        FeatureVector fv{};
        for (int i = 0; i < kAttrCount; ++i) {
            try {
                fv[static_cast<size_t>(i)] = std::stod(f[static_cast<size_t>(i) + 1]);
            } catch (const std::exception&) {
                throw parse_error("bad feature value '" + f[static_cast<size_t>(i) + 1] + "'", ln);
            }
        }
        rows.emplace_back(f[0], fv);
    });
    return rows;
}

}  // namespace linkscope
