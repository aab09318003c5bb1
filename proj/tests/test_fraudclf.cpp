#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <random>

#include "linkscope/fraudclf.hpp"
#include "linkscope/synthgen.hpp"

using namespace linkscope;
using Catch::Approx;

namespace {

AccountAttributes follower_attrs(const std::string& id, const std::string& lang, int64_t followers) {
    AccountAttributes a;
    a.account = id;
    a.created_year = 2014;
    a.default_profile = true;
    a.default_profile_image = false;
    a.favorites_count = 10;
    a.followers_count = followers;
    a.friends_count = 20;
    a.listed_count = 1;
    a.statuses_count = 50;
    a.geo_enabled = false;
    a.lang = lang;
    a.is_protected = false;
    a.utc_offset = "UTC-05:00";
    a.verified = false;
    return a;
}

std::vector<std::vector<double>> cluster(double cx, double cy, int n, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 0.2);
    std::vector<std::vector<double>> out;
    for (int i = 0; i < n; ++i) out.push_back({cx + d(rng), cy + d(rng)});
    return out;
}

}  // namespace

TEST_CASE("identical followers give the all-zeros feature vector", "[fraudclf]") {
    DirectedGraph::Builder b;
    b.add_edge("f1", "h");
    b.add_edge("f2", "h");
    b.add_edge("f3", "h");
    DirectedGraph g = b.build();
    AttributeTable attrs;
    for (const char* f : {"f1", "f2", "f3"}) attrs.emplace(f, follower_attrs(f, "en", 100));
    FeatureVector fv = extract_features("h", g, attrs);
    for (double v : fv) REQUIRE(v == 0.0);
}

TEST_CASE("feature extraction needs two attributed followers", "[fraudclf]") {
    DirectedGraph::Builder b;
    b.add_edge("f1", "h");
    b.add_edge("f2", "h");
    DirectedGraph g = b.build();
    AttributeTable attrs;
    attrs.emplace("f1", follower_attrs("f1", "en", 5));
    REQUIRE_THROWS_AS(extract_features("h", g, attrs), insufficient_data_error);
}

TEST_CASE("feature extraction is follower-order invariant", "[fraudclf]") {
    AttributeTable attrs;
    attrs.emplace("f1", follower_attrs("f1", "en", 5));
    attrs.emplace("f2", follower_attrs("f2", "es", 500));
    attrs.emplace("f3", follower_attrs("f3", "pt", 50000));

    DirectedGraph::Builder b1, b2;
    b1.add_edge("f1", "h"); b1.add_edge("f2", "h"); b1.add_edge("f3", "h");
    b2.add_edge("f3", "h"); b2.add_edge("f1", "h"); b2.add_edge("f2", "h");
    FeatureVector a = extract_features("h", b1.build(), attrs);
    FeatureVector b = extract_features("h", b2.build(), attrs);
    REQUIRE(a == b);
    REQUIRE(a[size_t(Attr::Lang)] == Approx(std::log2(3.0)));
}

TEST_CASE("feature groups follow the taxonomy", "[fraudclf]") {
    const auto& all = group_by_name("All");
    REQUIRE(all.indices.size() == 11);  // geo_enabled and protected stay out
    REQUIRE(group_by_name("Connection").indices ==
            std::vector<int>{int(Attr::Followers), int(Attr::Friends)});
    REQUIRE(group_by_name("Geography").indices.size() == 2);
    REQUIRE_THROWS_AS(group_by_name("Bogus"), validation_error);
}

TEST_CASE("rbf kernel basics", "[fraudclf]") {
    std::vector<double> x = {1.0, 2.0}, y = {0.0, 0.5};
    REQUIRE(rbf_kernel(x, x, 0.7) == 1.0);
    REQUIRE(rbf_kernel(x, y, 0.7) == Approx(rbf_kernel(y, x, 0.7)));
    REQUIRE(rbf_kernel(x, y, 1e-12) == Approx(1.0).margin(1e-9));
    REQUIRE(rbf_kernel(x, y, 0.7) > 0.0);
    REQUIRE(rbf_kernel(x, y, 0.7) < 1.0);
    REQUIRE_THROWS_AS(rbf_kernel(x, {1.0}, 0.7), validation_error);
    REQUIRE_THROWS_AS(rbf_kernel(x, y, 0.0), validation_error);
}

TEST_CASE("smo separates two well-separated clusters", "[fraudclf]") {
    std::mt19937_64 rng(4);
    auto X = cluster(0, 0, 10, rng);
    auto X2 = cluster(3, 3, 10, rng);
    X.insert(X.end(), X2.begin(), X2.end());
    std::vector<int> y(20, -1);
    for (int i = 10; i < 20; ++i) y[size_t(i)] = 1;

    SmoResult r = smo_solve(X, y, 1.0, 1.0);
    int correct = 0;
    for (size_t i = 0; i < X.size(); ++i) {
        double f = r.bias;
        for (size_t j = 0; j < X.size(); ++j)
            f += r.alpha[j] * y[j] * rbf_kernel(X[i], X[j], 1.0);
        correct += (f >= 0 ? 1 : -1) == y[i];
    }
    REQUIRE(correct == 20);
}

TEST_CASE("smo matches the exact dual on the XOR kernel matrix", "[fraudclf]") {
    // By symmetry the unique optimum has equal duals a* = 4 / sum(Q), with
    // sum(Q) = 4 + 4 e^-2 - 8 e^-1 for gamma = 1, and bias 0.
    std::vector<std::vector<double>> X = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
    std::vector<int> y = {1, 1, -1, -1};
    double S = 4.0 + 4.0 * std::exp(-2.0) - 8.0 * std::exp(-1.0);
    double a_star = 4.0 / S;

    SmoResult r = smo_solve(X, y, 10.0, 1.0, 1e-5);
    for (double a : r.alpha) REQUIRE(a == Approx(a_star).margin(1e-3));
    REQUIRE(r.bias == Approx(0.0).margin(1e-3));
    for (size_t i = 0; i < X.size(); ++i) {
        double f = r.bias;
        for (size_t j = 0; j < X.size(); ++j)
            f += r.alpha[j] * y[j] * rbf_kernel(X[i], X[j], 1.0);
        REQUIRE((f >= 0 ? 1 : -1) == y[i]);  // RBF separates what linear cannot
    }
}

TEST_CASE("smo respects the box and equality constraints", "[fraudclf][property]") {
    std::mt19937_64 rng(12);
    auto X = cluster(0, 0, 15, rng);
    auto X2 = cluster(1.0, 0.8, 15, rng);  // partially overlapping
    X.insert(X.end(), X2.begin(), X2.end());
    std::vector<int> y(30, -1);
    for (int i = 15; i < 30; ++i) y[size_t(i)] = 1;
    double C = 0.7;

    SmoResult r = smo_solve(X, y, C, 2.0);
    double sum = 0.0;
    for (size_t i = 0; i < X.size(); ++i) {
        REQUIRE(r.alpha[i] >= -1e-12);
        REQUIRE(r.alpha[i] <= C + 1e-12);
        sum += r.alpha[i] * y[i];
    }
    REQUIRE(std::abs(sum) < 1e-6);

    // KKT gap recomputed from scratch stays within the stopping tolerance.
    double m = -1e300, M = 1e300;
    for (size_t k = 0; k < X.size(); ++k) {
        double grad = -1.0;
        for (size_t j = 0; j < X.size(); ++j)
            grad += r.alpha[j] * y[k] * y[j] * rbf_kernel(X[k], X[j], 2.0);
        double v = -y[k] * grad;
        bool up = (y[k] > 0 && r.alpha[k] < C) || (y[k] < 0 && r.alpha[k] > 0);
        bool low = (y[k] < 0 && r.alpha[k] < C) || (y[k] > 0 && r.alpha[k] > 0);
        if (up) m = std::max(m, v);
        if (low) M = std::min(M, v);
    }
    REQUIRE(m - M <= 1e-3 + 1e-9);
}

TEST_CASE("contradictory duplicate labels pin duals at the box", "[fraudclf]") {
    std::vector<std::vector<double>> X = {{0, 0}, {0, 0}, {2, 2}, {2, 2}};
    std::vector<int> y = {1, -1, 1, -1};
    SmoResult r = smo_solve(X, y, 1.5, 1.0);
    for (double a : r.alpha) REQUIRE(a <= 1.5 + 1e-12);
    double sum = 0;
    for (size_t i = 0; i < y.size(); ++i) sum += r.alpha[i] * y[i];
    REQUIRE(std::abs(sum) < 1e-6);
}

TEST_CASE("single-class input is rejected", "[fraudclf]") {
    std::vector<std::vector<double>> X = {{0, 0}, {1, 1}};
    REQUIRE_THROWS_AS(smo_solve(X, {1, 1}, 1.0, 1.0), validation_error);
    REQUIRE_THROWS_AS(train_svm(X, {1, 1}), validation_error);
}

TEST_CASE("train_svm standardizes with training statistics", "[fraudclf]") {
    std::mt19937_64 rng(3);
    auto X = cluster(0, 0, 8, rng);
    auto X2 = cluster(10, 10, 8, rng);
    X.insert(X.end(), X2.begin(), X2.end());
    std::vector<int> y(16, -1);
    for (int i = 8; i < 16; ++i) y[size_t(i)] = 1;
    SvmModel m = train_svm(X, y, 1.0);

    double mean0 = 0;
    for (const auto& row : X) mean0 += row[0];
    mean0 /= 16.0;
    REQUIRE(m.feat_mean[0] == Approx(mean0));
    double var0 = 0;
    for (const auto& row : X) var0 += (row[0] - mean0) * (row[0] - mean0);
    REQUIRE(m.feat_std[0] == Approx(std::sqrt(var0 / 16.0)));
    for (const auto& row : X) REQUIRE(m.predict(row) == (row[0] > 5 ? 1 : -1));
}

TEST_CASE("model JSON round trip preserves the decision function", "[fraudclf]") {
    std::mt19937_64 rng(6);
    auto X = cluster(0, 0, 10, rng);
    auto X2 = cluster(2, 2, 10, rng);
    X.insert(X.end(), X2.begin(), X2.end());
    std::vector<int> y(20, -1);
    for (int i = 10; i < 20; ++i) y[size_t(i)] = 1;
    SvmModel m = train_svm(X, y, 1.0, 0.5, {4, 5});

    auto path = (std::filesystem::temp_directory_path() / "linkscope_test" / "model.json").string();
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    m.save(path);
    SvmModel m2 = SvmModel::load(path);
    REQUIRE(m2.gamma == m.gamma);
    REQUIRE(m2.feature_indices == std::vector<int>{4, 5});
    for (const auto& row : X) REQUIRE(m2.decision(row) == Approx(m.decision(row)).margin(1e-12));

    std::ofstream(path) << "{\"format\":\"other\"}";
    REQUIRE_THROWS_AS(SvmModel::load(path), parse_error);
}

TEST_CASE("cross validation on trivially separable points", "[fraudclf]") {
    std::vector<FeatureVector> X(4);
    X[0].fill(0.0); X[1].fill(0.0);
    X[2].fill(3.0); X[3].fill(3.0);
    std::vector<std::string> y = {"genuine", "genuine", "fraud", "fraud"};
    EvalReport r = cross_validate(X, y, 2, group_by_name("All"), 10.0, 0.5, 1);
    REQUIRE(r.precision == 1.0);
    REQUIRE(r.recall == 1.0);
    REQUIRE(r.f1 == 1.0);
    REQUIRE(r.folds.size() == 2);
}

TEST_CASE("cross validation equals manual per-fold training", "[fraudclf]") {
    // Verifies the fold split and that standardization sees only the
    // training split: recompute one fold by hand and compare predictions.
    std::vector<FeatureVector> X;
    std::vector<std::string> labels;
    std::mt19937_64 rng(44);
    std::normal_distribution<double> noise(0.0, 0.3);
    for (int i = 0; i < 12; ++i) {
        FeatureVector fv{};
        double base = i < 6 ? 0.0 : 4.0;
        for (auto& v : fv) v = base + noise(rng);
        X.push_back(fv);
        labels.push_back(i < 6 ? "genuine" : "fraud");
    }
    uint64_t seed = 5;
    int k = 3;
    EvalReport r = cross_validate(X, labels, k, group_by_name("All"), 1.0, 0.0, seed);

    // Reproduce the fold assignment exactly as cross_validate builds it.
    std::vector<int> y(labels.size());
    std::vector<size_t> pos, neg;
    for (size_t i = 0; i < labels.size(); ++i) {
        y[i] = labels[i] == "fraud" ? 1 : -1;
        (y[i] > 0 ? pos : neg).push_back(i);
    }
    std::mt19937_64 shuffle_rng(seed);
    std::shuffle(pos.begin(), pos.end(), shuffle_rng);
    std::shuffle(neg.begin(), neg.end(), shuffle_rng);
    std::vector<int> fold_of(X.size());
    for (size_t i = 0; i < pos.size(); ++i) fold_of[pos[i]] = int(i % size_t(k));
    for (size_t i = 0; i < neg.size(); ++i) fold_of[neg[i]] = int(i % size_t(k));

    const auto& group = group_by_name("All");
    auto project = [&](size_t i) {
        std::vector<double> row;
        for (int f : group.indices) row.push_back(X[i][size_t(f)]);
        return row;
    };
    std::vector<std::vector<double>> train_x;
    std::vector<int> train_y;
    std::vector<size_t> test_idx;
    for (size_t i = 0; i < X.size(); ++i) {
        if (fold_of[i] == 0) test_idx.push_back(i);
        else { train_x.push_back(project(i)); train_y.push_back(y[i]); }
    }
    SvmModel manual = train_svm(train_x, train_y, 1.0, 0.0, group.indices);
    FoldStats manual_stats;
    for (size_t i : test_idx) {
        int pred = manual.predict(project(i));
        if (pred > 0) (y[i] > 0 ? manual_stats.tp : manual_stats.fp)++;
        else (y[i] > 0 ? manual_stats.fn : manual_stats.tn)++;
    }
    REQUIRE(r.folds[0].tp == manual_stats.tp);
    REQUIRE(r.folds[0].fp == manual_stats.fp);
    REQUIRE(r.folds[0].tn == manual_stats.tn);
    REQUIRE(r.folds[0].fn == manual_stats.fn);
}

TEST_CASE("cross validation input validation", "[fraudclf]") {
    std::vector<FeatureVector> X(4);
    std::vector<std::string> y = {"fraud", "fraud", "fraud", "fraud"};
    REQUIRE_THROWS_AS(cross_validate(X, y, 2, group_by_name("All")), insufficient_data_error);
    y = {"fraud", "fraud", "genuine", "bogus"};
    REQUIRE_THROWS_AS(cross_validate(X, y, 2, group_by_name("All")), validation_error);
}

TEST_CASE("f1 is the harmonic mean in every report", "[fraudclf][property]") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> noise(0.0, 1.2);
    std::vector<FeatureVector> X;
    std::vector<std::string> labels;
    for (int i = 0; i < 40; ++i) {
        FeatureVector fv{};
        double base = i % 2 ? 1.0 : 0.0;  // heavily overlapping classes
        for (auto& v : fv) v = base + noise(rng);
        X.push_back(fv);
        labels.push_back(i % 2 ? "fraud" : "genuine");
    }
    EvalReport r = cross_validate(X, labels, 4, group_by_name("All"), 1.0, 0.0, 9);
    if (r.precision + r.recall > 0)
        REQUIRE(r.f1 == Approx(2 * r.precision * r.recall / (r.precision + r.recall)).margin(1e-9));
    int64_t total = r.confusion.tp + r.confusion.fp + r.confusion.tn + r.confusion.fn;
    REQUIRE(total == 40);
}

TEST_CASE("group restriction ignores out-of-group features", "[fraudclf]") {
    std::vector<FeatureVector> X;
    std::vector<std::string> labels;
    std::mt19937_64 rng(2);
    std::normal_distribution<double> noise(0.0, 0.1);
    for (int i = 0; i < 20; ++i) {
        FeatureVector fv{};
        fv[size_t(Attr::Followers)] = (i < 10 ? 0.0 : 2.0) + noise(rng);
        fv[size_t(Attr::Friends)] = (i < 10 ? 0.0 : 2.0) + noise(rng);
        X.push_back(fv);
        labels.push_back(i < 10 ? "genuine" : "fraud");
    }
    auto X2 = X;
    for (auto& fv : X2) fv[size_t(Attr::Lang)] = noise(rng) * 100.0;  // garbage outside the group
    EvalReport a = cross_validate(X, labels, 2, group_by_name("Connection"), 1.0, 0.7, 3);
    EvalReport b = cross_validate(X2, labels, 2, group_by_name("Connection"), 1.0, 0.7, 3);
    REQUIRE(a.confusion.tp == b.confusion.tp);
    REQUIRE(a.confusion.fp == b.confusion.fp);
    REQUIRE(a.f1 == b.f1);
}

TEST_CASE("regime signatures show up in the language feature", "[fraudclf]") {
    RegimeParams p;
    p.regime = Regime::PremiumNaive;
    p.n_followers = 300;
    p.seed = 7;
    LabeledCorpus naive = gen_premium(p);
    FeatureVector fv = extract_features(naive.customers[0], naive.graph, naive.attributes);
    REQUIRE(fv[size_t(Attr::Lang)] <= 0.1);

    p.regime = Regime::Freemium;
    LabeledCorpus fre = gen_freemium(p);
    fv = extract_features(fre.customers[0], fre.graph, fre.attributes);
    REQUIRE(fv[size_t(Attr::Lang)] >= 1.7);
    REQUIRE(fv[size_t(Attr::Lang)] <= 2.3);
}
