#pragma once
// RBF-kernel SVM trained by sequential minimal optimization with
// maximal-KKT-violating-pair working-set selection. The dual problem is
//   min 1/2 a'Qa - e'a   s.t. 0 <= a_i <= C, y'a = 0,  Q_ij = y_i y_j K_ij.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "linkscope/errors.hpp"

#include <json.hpp>

namespace linkscope {

inline double rbf_kernel(const std::vector<double>& x, const std::vector<double>& y, double gamma) {
    if (x.size() != y.size()) throw validation_error("kernel arguments differ in dimension");
    if (gamma <= 0) throw validation_error("kernel width must be positive");
    double d2 = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - y[i];
        d2 += d * d;
    }
    return std::exp(-gamma * d2);
}

struct SmoResult {
    std::vector<double> alpha;
    double bias = 0.0;
    int64_t iterations = 0;
};

// Solves the dual on the given (already scaled) data. y entries are +1/-1.
inline SmoResult smo_solve(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                           double C, double gamma, double tol = 1e-3, int64_t max_iter = 0) {
    const size_t n = X.size();
    if (n < 2) throw validation_error("need at least 2 training points");
    if (y.size() != n) throw validation_error("label count mismatch");
    bool pos = false, neg = false;
    for (int v : y) (v > 0 ? pos : neg) = true;
    if (!pos || !neg) throw validation_error("training data contains a single class");
    if (max_iter <= 0) max_iter = std::max<int64_t>(200000, 2000 * static_cast<int64_t>(n));

    // Dense kernel matrix; problem sizes here are a few hundred rows.
    std::vector<std::vector<double>> K(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i) {
        K[i][i] = 1.0;
        for (size_t j = i + 1; j < n; ++j) K[i][j] = K[j][i] = rbf_kernel(X[i], X[j], gamma);
    }

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);  // gradient of the dual objective at a = 0

    SmoResult res;
    double m = 0, M = 0;
    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        // i: argmax over I_up of -y grad; j: argmin over I_low.
        int i = -1, j = -1;
        m = -std::numeric_limits<double>::infinity();
        M = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < n; ++k) {
            double v = -y[k] * grad[k];
            bool up = (y[k] > 0 && alpha[k] < C) || (y[k] < 0 && alpha[k] > 0);
            bool low = (y[k] < 0 && alpha[k] < C) || (y[k] > 0 && alpha[k] > 0);
            if (up && v > m) { m = v; i = static_cast<int>(k); }
            if (low && v < M) { M = v; j = static_cast<int>(k); }
        }
        if (i < 0 || j < 0 || m - M <= tol) break;

        double curv = std::max(K[i][i] + K[j][j] - 2.0 * K[i][j], 1e-12);
        double t = (m - M) / curv;
        // Box constraints along the feasible direction a_i += y_i t, a_j -= y_j t.
        t = std::min(t, y[i] > 0 ? C - alpha[i] : alpha[i]);
        t = std::min(t, y[j] > 0 ? alpha[j] : C - alpha[j]);
        if (t <= 0) break;  // boundary-pinned pair; violation is within tolerance anyway

        alpha[i] += y[i] > 0 ? t : -t;
        alpha[j] -= y[j] > 0 ? t : -t;
        double di = (y[i] > 0 ? t : -t);
        double dj = -(y[j] > 0 ? t : -t);
        for (size_t k = 0; k < n; ++k)
            grad[k] += y[k] * (y[i] * K[i][k] * di + y[j] * K[j][k] * dj);
    }
    if (res.iterations >= max_iter)
        throw convergence_error("SMO did not converge after " + std::to_string(res.iterations) +
                                " iterations (KKT gap " + std::to_string(m - M) + ")");
    res.bias = (m + M) / 2.0;
    res.alpha = std::move(alpha);
    return res;
}

struct SvmModel {
    double gamma = 1.0;
    double C = 1.0;
    double bias = 0.0;
    // Support vectors in standardized coordinates; coeff_i = alpha_i * y_i.
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> coefficients;
    // Per-feature standardization fitted on the training split.
    std::vector<double> feat_mean, feat_std;
    // Positions of the model's inputs within the full 13-feature vector.
    std::vector<int> feature_indices;

    double decision(const std::vector<double>& raw) const {
        if (raw.size() != feat_mean.size())
            throw validation_error("feature vector has wrong dimension");
        std::vector<double> z(raw.size());
        for (size_t i = 0; i < raw.size(); ++i) z[i] = (raw[i] - feat_mean[i]) / feat_std[i];
        double f = bias;
        for (size_t s = 0; s < support_vectors.size(); ++s)
            f += coefficients[s] * rbf_kernel(z, support_vectors[s], gamma);
        return f;
    }

    // +1 = fraud, -1 = genuine. Exact zero classifies as fraud.
    int predict(const std::vector<double>& raw) const { return decision(raw) >= 0.0 ? 1 : -1; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["format"] = "linkscope-svm";
        j["version"] = 1;
        j["kernel"] = "rbf";
        j["gamma"] = gamma;
        j["C"] = C;
        j["bias"] = bias;
        j["support_vectors"] = support_vectors;
        j["coefficients"] = coefficients;
        j["standardization"] = {{"mean", feat_mean}, {"std", feat_std}};
        j["feature_indices"] = feature_indices;
        return j;
    }

    static SvmModel from_json(const nlohmann::json& j) {
        if (j.value("format", "") != "linkscope-svm" || j.value("version", 0) != 1)
            throw parse_error("not a linkscope-svm v1 document");
        SvmModel m;
        m.gamma = j.at("gamma").get<double>();
        m.C = j.at("C").get<double>();
        m.bias = j.at("bias").get<double>();
        m.support_vectors = j.at("support_vectors").get<std::vector<std::vector<double>>>();
        m.coefficients = j.at("coefficients").get<std::vector<double>>();
        m.feat_mean = j.at("standardization").at("mean").get<std::vector<double>>();
        m.feat_std = j.at("standardization").at("std").get<std::vector<double>>();
        m.feature_indices = j.at("feature_indices").get<std::vector<int>>();
        return m;
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw io_error("cannot write model file: " + path);
        out << to_json().dump(2) << '\n';
    }

    static SvmModel load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open model file: " + path);
        nlohmann::json j;
        try { in >> j; } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("bad model JSON: ") + e.what());
        }
        return from_json(j);
    }
};

// Trains on raw features: standardizes with training statistics, resolves
// the default kernel width gamma = 1/(d * mean feature variance), runs SMO,
// and packages the support vectors.
inline SvmModel train_svm(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                          double C = 1.0, double gamma = 0.0,
                          std::vector<int> feature_indices = {}) {
    if (X.size() < 2) throw validation_error("need at least 2 training points");
    const size_t n = X.size(), d = X[0].size();
    if (d == 0) throw validation_error("empty feature vectors");

    SvmModel model;
    model.C = C;
    model.feat_mean.assign(d, 0.0);
    model.feat_std.assign(d, 0.0);
    for (const auto& row : X) {
        if (row.size() != d) throw validation_error("ragged feature matrix");
        for (size_t f = 0; f < d; ++f) model.feat_mean[f] += row[f];
    }
    for (size_t f = 0; f < d; ++f) model.feat_mean[f] /= static_cast<double>(n);
    double var_sum = 0.0;
    for (size_t f = 0; f < d; ++f) {
        double v = 0.0;
        for (const auto& row : X) {
            double c = row[f] - model.feat_mean[f];
            v += c * c;
        }
        v /= static_cast<double>(n);
        var_sum += v;
        model.feat_std[f] = v > 0 ? std::sqrt(v) : 1.0;
    }
    if (gamma <= 0) {
        double mean_var = var_sum / static_cast<double>(d);
        gamma = mean_var > 0 ? 1.0 / (static_cast<double>(d) * mean_var) : 1.0 / static_cast<double>(d);
    }
    model.gamma = gamma;

    std::vector<std::vector<double>> Z(n, std::vector<double>(d));
    for (size_t i = 0; i < n; ++i)
        for (size_t f = 0; f < d; ++f) Z[i][f] = (X[i][f] - model.feat_mean[f]) / model.feat_std[f];

    SmoResult sol = smo_solve(Z, y, C, gamma);
    model.bias = sol.bias;
    for (size_t i = 0; i < n; ++i) {
        if (sol.alpha[i] > 1e-12) {
            model.support_vectors.push_back(Z[i]);
            model.coefficients.push_back(sol.alpha[i] * y[i]);
        }
    }
    model.feature_indices = feature_indices.empty()
                                ? [&] {
                                      std::vector<int> v(d);
                                      for (size_t f = 0; f < d; ++f) v[f] = static_cast<int>(f);
                                      return v;
                                  }()
                                : std::move(feature_indices);
    return model;
}

}  // namespace linkscope
