#pragma once
// Attribute histograms and entropy.
//
// Count-valued attributes are discretized into 32 logarithmic bins spanning
// 1..1,000,000 before entropy is computed; categorical and boolean
// attributes use their raw labels, creation year its raw value. Missing
// values are excluded from the affected attribute's histogram.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linkscope/errors.hpp"
#include "linkscope/graph.hpp"

namespace linkscope {

struct Histogram {
    std::map<std::string, int64_t> outcomes;
    int64_t total = 0;

    void add(const std::string& outcome, int64_t count = 1) {
        outcomes[outcome] += count;
        total += count;
    }
    bool empty() const { return total == 0; }
};

// Shannon entropy in bits; 0*log(0) taken as 0 by construction (only
// observed outcomes are stored).
inline double entropy(const Histogram& h) {
    if (h.empty()) throw undefined_input_error("entropy of an empty histogram");
    double bits = 0.0;
    for (const auto& [_, c] : h.outcomes) {
        double p = static_cast<double>(c) / static_cast<double>(h.total);
        bits -= p * std::log2(p);
    }
    return bits < 0.0 ? 0.0 : bits;
}

inline double max_entropy(int64_t outcome_space) {
    if (outcome_space < 1) throw undefined_input_error("max entropy needs a non-empty outcome space");
    return std::log2(static_cast<double>(outcome_space));
}

// ---------------------------------------------------------------------------
// Logarithmic count binning: 32 bins over [1, 1e6]; values <= 1 fall in bin
// 0, values >= 1e6 in bin 31. Bin boundaries are precomputed as integer
// thresholds so the mapping is exactly monotone.
struct BinningScheme {
    static constexpr int kBins = 32;
    static constexpr int64_t kLo = 1;
    static constexpr int64_t kHi = 1000000;

    static int bin(int64_t v) {
        if (v <= kLo) return 0;
        if (v >= kHi) return kBins - 1;
        const auto& t = thresholds();
        // largest k with t[k] <= v
        auto it = std::upper_bound(t.begin(), t.end(), v);
        return static_cast<int>(it - t.begin()) - 1;
    }

    static std::string label(int64_t v) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "b%02d", bin(v));
        return buf;
    }

private:
    // thresholds[k] = smallest integer v with floor(32*log10(v)/6) == k
    static const std::array<int64_t, kBins>& thresholds() {
        static const std::array<int64_t, kBins> t = [] {
            std::array<int64_t, kBins> a{};
            a[0] = 0;
            for (int k = 1; k < kBins; ++k) {
                long double x = powl(10.0L, 6.0L * k / 32.0L);
                a[k] = static_cast<int64_t>(ceill(x - 1e-9L));
            }
            return a;
        }();
        return t;
    }
};

inline int discretize_count(int64_t v) {
    if (v < 0) throw validation_error("counts are non-negative");
    return BinningScheme::bin(v);
}

// ---------------------------------------------------------------------------
// The thirteen attributes, in the canonical column order.

enum class Attr {
    CreatedYear = 0,
    DefaultProfile,
    DefaultProfileImage,
    Favorites,
    Followers,
    Friends,
    Lists,
    Statuses,
    GeoEnabled,
    Lang,
    Protected,
    UtcOffset,
    Verified,
};

inline constexpr int kAttrCount = 13;

inline const std::array<std::string, kAttrCount>& attr_names() {
    static const std::array<std::string, kAttrCount> names = {
        "created_year", "default_profile", "default_profile_image", "favorites",
        "followers",    "friends",         "lists",                 "statuses",
        "geo_enabled",  "lang",            "protected",             "utc_offset",
        "verified"};
    return names;
}

// Histogram outcome for one attribute of one account; nullopt when missing.
inline std::optional<std::string> outcome_label(const AccountAttributes& a, Attr attr) {
    auto b2s = [](const std::optional<bool>& b) -> std::optional<std::string> {
        if (!b) return std::nullopt;
        return std::string(*b ? "true" : "false");
    };
    auto c2s = [](const std::optional<int64_t>& c) -> std::optional<std::string> {
        if (!c) return std::nullopt;
        return BinningScheme::label(*c);
    };
    switch (attr) {
        case Attr::CreatedYear:
            if (!a.created_year) return std::nullopt;
            return std::to_string(*a.created_year);
        case Attr::DefaultProfile: return b2s(a.default_profile);
        case Attr::DefaultProfileImage: return b2s(a.default_profile_image);
        case Attr::Favorites: return c2s(a.favorites_count);
        case Attr::Followers: return c2s(a.followers_count);
        case Attr::Friends: return c2s(a.friends_count);
        case Attr::Lists: return c2s(a.listed_count);
        case Attr::Statuses: return c2s(a.statuses_count);
        case Attr::GeoEnabled: return b2s(a.geo_enabled);
        case Attr::Lang: return a.lang;
        case Attr::Protected: return b2s(a.is_protected);
        case Attr::UtcOffset: return a.utc_offset;
        case Attr::Verified: return b2s(a.verified);
    }
    throw internal_error("bad attribute");
}

struct AttributeEntropyTable {
    // Entropy in bits per attribute; nullopt when every value was missing.
    std::array<std::optional<double>, kAttrCount> bits;
    // Distinct outcomes observed per attribute (drives max-entropy rows for
    // the label-valued attributes).
    std::array<int64_t, kAttrCount> observed_outcomes{};
    std::array<int64_t, kAttrCount> samples{};
};

inline AttributeEntropyTable attribute_entropy_table(const std::vector<AccountAttributes>& accounts) {
    if (accounts.empty()) throw undefined_input_error("no accounts");
    std::array<Histogram, kAttrCount> hists;
    for (const auto& a : accounts) {
        for (int i = 0; i < kAttrCount; ++i) {
            auto label = outcome_label(a, static_cast<Attr>(i));
            if (label) hists[i].add(*label);
        }
    }
    AttributeEntropyTable table;
    for (int i = 0; i < kAttrCount; ++i) {
        table.observed_outcomes[i] = static_cast<int64_t>(hists[i].outcomes.size());
        table.samples[i] = hists[i].total;
        if (!hists[i].empty()) table.bits[i] = entropy(hists[i]);
    }
    return table;
}

// Outcome-space size used for the max-entropy row. Language and UTC spaces
// are data-driven with the commonly observed sizes (35 and 39) as fallbacks;
// creation year spans 2006-2016, booleans 2, binned counts 32.
inline int64_t outcome_space_size(Attr attr, int64_t observed) {
    switch (attr) {
        case Attr::CreatedYear: return 11;
        case Attr::DefaultProfile:
        case Attr::DefaultProfileImage:
        case Attr::GeoEnabled:
        case Attr::Protected:
        case Attr::Verified: return 2;
        case Attr::Favorites:
        case Attr::Followers:
        case Attr::Friends:
        case Attr::Lists:
        case Attr::Statuses: return BinningScheme::kBins;
        case Attr::Lang: return observed > 0 ? observed : 35;
        case Attr::UtcOffset: return observed > 0 ? observed : 39;
    }
    throw internal_error("bad attribute");
}

// ---------------------------------------------------------------------------
// Description token frequencies. Lowercases, splits on non-alphanumeric
// bytes, drops stopwords, sorts by count desc then token asc.

inline std::vector<std::pair<std::string, int64_t>> token_frequency(
    const std::vector<std::string>& descriptions, const std::set<std::string>& stopwords) {
    std::map<std::string, int64_t> counts;
    std::string tok;
    for (const auto& text : descriptions) {
        tok.clear();
        auto flush = [&] {
            if (!tok.empty() && !stopwords.count(tok)) ++counts[tok];
            tok.clear();
        };
        for (unsigned char c : text) {
            if (std::isalnum(c)) tok += static_cast<char>(std::tolower(c));
            else flush();
        }
        flush();
    }
    std::vector<std::pair<std::string, int64_t>> out(counts.begin(), counts.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

}  // namespace linkscope
