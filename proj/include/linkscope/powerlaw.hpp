#pragma once
// Finite-support power-law model P(r) = C * r^(-alpha), r = 1..|V|, with
// C = 1/H_{|V|,alpha}. Provides the exact entropy sum, the Euler-Maclaurin
// closed-form approximation (singular at alpha = 1), a CDF-inversion
// sampler, and exponent fitting over observed counts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "linkscope/errors.hpp"

namespace linkscope {

struct PowerLawModel {
    double alpha = 1.2;
    int64_t size = 1;
    double normalizer = 1.0;  // C = 1/H_{size,alpha}

    static PowerLawModel make(double alpha, int64_t size) {
        if (size < 1) throw validation_error("power-law support must be >= 1");
        if (alpha < 0) throw validation_error("power-law exponent must be >= 0");
        long double h = 0.0L;
        for (int64_t r = size; r >= 1; --r) h += powl(static_cast<long double>(r), -alpha);
        return {alpha, size, static_cast<double>(1.0L / h)};
    }
};

// Exact entropy in bits: -sum_r C r^-a log2(C r^-a). Summed smallest terms
// first in long double, so the normalization invariant holds to ~1e-15.
inline double powerlaw_entropy_exact(const PowerLawModel& m) {
    long double C = m.normalizer;
    long double bits = 0.0L;
    for (int64_t r = m.size; r >= 1; --r) {
        long double p = C * powl(static_cast<long double>(r), -static_cast<long double>(m.alpha));
        bits -= p * log2l(p);
    }
    return bits < 0.0L ? 0.0 : static_cast<double>(bits);
}

// Closed-form approximation via the Euler-Maclaurin formula:
//   H ~ -C log2(C) (V^(1-a) - 1)/(1-a)
//       + a C (-V^(1-a) ((a-1) ln V + 1) + 1) / ((a-1)^2 ln 2)
// Refuses alpha = 1 (both terms divide by a power of (a-1)); use the exact
// sum there.
inline double powerlaw_entropy_closed_form(const PowerLawModel& m) {
    if (m.size < 2) throw validation_error("closed form needs |V| >= 2");
    if (m.alpha <= 0) throw validation_error("closed form needs alpha > 0");
    if (std::abs(m.alpha - 1.0) < 1e-9)
        throw singular_exponent_error("closed form is singular at alpha = 1; use exact summation");
    double a = m.alpha;
    double C = m.normalizer;
    double V = static_cast<double>(m.size);
    double v_pow = std::pow(V, 1.0 - a);
    double term1 = -C * std::log2(C) * (v_pow - 1.0) / (1.0 - a);
    double term2 = a * C * (-v_pow * ((a - 1.0) * std::log(V) + 1.0) + 1.0) /
                   ((a - 1.0) * (a - 1.0) * std::log(2.0));
    return term1 + term2;
}

// Draws ranks 1..size by inverse-CDF lookup.
class PowerLawSampler {
public:
    explicit PowerLawSampler(const PowerLawModel& m) : model_(m) {
        cdf_.resize(static_cast<size_t>(m.size));
        long double C = m.normalizer;
        long double acc = 0.0L;
        for (int64_t r = 1; r <= m.size; ++r) {
            acc += C * powl(static_cast<long double>(r), -static_cast<long double>(m.alpha));
            cdf_[static_cast<size_t>(r - 1)] = static_cast<double>(acc);
        }
        cdf_.back() = 1.0;
    }

    int64_t sample(std::mt19937_64& rng) const {
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        return static_cast<int64_t>(it - cdf_.begin()) + 1;
    }

    const PowerLawModel& model() const { return model_; }

private:
    PowerLawModel model_;
    std::vector<double> cdf_;
};

struct PowerLawFit {
    // Discrete-MLE approximation with x_min = 1: 1 + n / sum ln(x_i / 0.5).
    double alpha_mle = 0.0;
    // Least-squares slope of the log-log rank-frequency curve. This is the
    // estimate that tracks sub-unit exponents, where the MLE form cannot go
    // below 1.
    double alpha_ls = 0.0;
    // Set when every sample equals 1 (sum ln x_i = 0); the discrete MLE
    // diverges there and alpha_mle is +inf.
    bool divergent = false;
    size_t n = 0;
};

// Frequency of each distinct value, ranked by frequency descending.
inline std::vector<std::pair<int64_t, int64_t>> rank_frequency_points(
    const std::vector<int64_t>& values) {
    std::map<int64_t, int64_t> freq;
    for (int64_t v : values) ++freq[v];
    std::vector<int64_t> counts;
    counts.reserve(freq.size());
    for (const auto& [_, c] : freq) counts.push_back(c);
    std::sort(counts.rbegin(), counts.rend());
    std::vector<std::pair<int64_t, int64_t>> points;
    points.reserve(counts.size());
    for (size_t i = 0; i < counts.size(); ++i)
        points.emplace_back(static_cast<int64_t>(i + 1), counts[i]);
    return points;
}

inline PowerLawFit fit_powerlaw(const std::vector<int64_t>& samples) {
    if (samples.size() < 30)
        throw insufficient_data_error("power-law fit needs at least 30 samples, got " +
                                      std::to_string(samples.size()));
    PowerLawFit fit;
    fit.n = samples.size();

    double log_sum = 0.0;   // sum ln(x/0.5)
    double log_raw = 0.0;   // sum ln(x)
    for (int64_t x : samples) {
        if (x < 1) throw validation_error("power-law samples must be >= 1");
        log_raw += std::log(static_cast<double>(x));
        log_sum += std::log(static_cast<double>(x) / 0.5);
    }
    if (log_raw == 0.0) {
        fit.divergent = true;
        fit.alpha_mle = std::numeric_limits<double>::infinity();
    } else {
        fit.alpha_mle = 1.0 + static_cast<double>(samples.size()) / log_sum;
    }

    auto points = rank_frequency_points(samples);
    if (points.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double n = static_cast<double>(points.size());
        for (const auto& [rank, f] : points) {
            double x = std::log10(static_cast<double>(rank));
            double y = std::log10(static_cast<double>(f));
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        double denom = n * sxx - sx * sx;
        fit.alpha_ls = denom != 0.0 ? -(n * sxy - sx * sy) / denom : 0.0;
    }
    return fit;
}

}  // namespace linkscope
