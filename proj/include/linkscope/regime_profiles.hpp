#pragma once
// Per-regime attribute sampling distributions. The built-in defaults target
// the characteristic entropy signatures of each delivery regime; an
// identical copy ships as data/regime_attributes.json so bands can be
// adjusted without recompiling (pass a file to override the defaults).

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "linkscope/errors.hpp"

#include <json.hpp>

namespace linkscope {

struct CategoricalDist {
    std::vector<std::pair<std::string, double>> outcomes;  // label -> probability
};

struct CountDist {
    double alpha = 1.2;
    int64_t vmax = 1000000;
};

struct RegimeAttrProfile {
    CategoricalDist created_year;
    double p_default_profile = 0.5;
    double p_default_profile_image = 0.5;
    double p_geo_enabled = 0.5;
    double p_protected = 0.5;
    double p_verified = 0.0;
    CategoricalDist lang;
    CategoricalDist utc_offset;
    CountDist favorites, followers, friends, lists, statuses;
    std::vector<std::string> description_tokens;
    int description_min_tokens = 3;
    int description_max_tokens = 8;
};

inline const char* kDefaultRegimeProfilesJson = R"JSON({
  "genuine": {
    "created_year": {"2006": 0.02, "2007": 0.03, "2008": 0.05, "2009": 0.06, "2010": 0.08,
                     "2011": 0.09, "2012": 0.10, "2013": 0.12, "2014": 0.14, "2015": 0.15, "2016": 0.16},
    "default_profile": 0.35,
    "default_profile_image": 0.15,
    "geo_enabled": 0.40,
    "protected": 0.05,
    "verified": 0.02,
    "lang": {"en": 0.78, "es": 0.07, "pt": 0.04, "ja": 0.03, "fr": 0.025,
             "de": 0.02, "it": 0.015, "tr": 0.01, "ru": 0.01},
    "utc_offset": {"UTC-05:00": 0.30, "UTC-08:00": 0.20, "UTC+00:00": 0.12, "UTC+01:00": 0.10,
                   "UTC-06:00": 0.08, "UTC+09:00": 0.06, "UTC+05:30": 0.05, "UTC+02:00": 0.04,
                   "UTC+08:00": 0.03, "UTC-03:00": 0.02},
    "favorites_count": {"alpha": 1.1, "vmax": 1000000},
    "followers_count": {"alpha": 1.2, "vmax": 1000000},
    "friends_count": {"alpha": 1.3, "vmax": 1000000},
    "listed_count": {"alpha": 1.7, "vmax": 10000},
    "statuses_count": {"alpha": 1.1, "vmax": 1000000},
    "description_tokens": ["musician", "lover", "writer", "sports", "coffee", "travel",
                           "dreamer", "artist", "foodie", "gamer", "student", "engineer",
                           "photography", "music", "science", "books", "runner", "painter",
                           "history", "nature"],
    "description_length": [4, 12]
  },
  "freemium": {
    "created_year": {"2011": 0.02, "2012": 0.03, "2013": 0.07, "2014": 0.50, "2015": 0.28, "2016": 0.10},
    "default_profile": 0.66,
    "default_profile_image": 0.20,
    "geo_enabled": 0.13,
    "protected": 0.053,
    "verified": 0.0,
    "lang": {"en": 0.565, "es": 0.18, "pt": 0.10, "id": 0.055, "tr": 0.04,
             "ar": 0.025, "fr": 0.015, "ru": 0.01, "ja": 0.01},
    "utc_offset": {"UTC-05:00": 0.60, "UTC-08:00": 0.18, "UTC+00:00": 0.09, "UTC+01:00": 0.05,
                   "UTC-06:00": 0.04, "UTC+05:30": 0.025, "UTC+09:00": 0.015},
    "favorites_count": {"alpha": 1.1, "vmax": 1000000},
    "followers_count": {"alpha": 1.15, "vmax": 100000},
    "friends_count": {"alpha": 1.25, "vmax": 100000},
    "listed_count": {"alpha": 1.6, "vmax": 10000},
    "statuses_count": {"alpha": 1.05, "vmax": 1000000},
    "description_tokens": ["follow", "snapchat", "instagram", "youtube", "followback",
                           "teamfollowback", "free", "followers", "sub", "channel", "check",
                           "page", "dm", "promo", "likes", "shoutout"],
    "description_length": [3, 8]
  },
  "premium_naive": {
    "created_year": {"2014": 0.05, "2015": 0.65, "2016": 0.30},
    "default_profile": 0.60,
    "default_profile_image": 0.002,
    "geo_enabled": 0.0,
    "protected": 0.0,
    "verified": 0.0,
    "lang": {"en": 1.0},
    "utc_offset": {"UTC-05:00": 0.50, "UTC-08:00": 0.30, "UTC-06:00": 0.20},
    "favorites_count": {"alpha": 0.15, "vmax": 32},
    "followers_count": {"alpha": 0.15, "vmax": 32},
    "friends_count": {"alpha": 0.15, "vmax": 32},
    "listed_count": {"alpha": 0.2, "vmax": 128},
    "statuses_count": {"alpha": 0.15, "vmax": 32},
    "description_tokens": ["musician", "lover", "writer", "sports", "proud", "father",
                           "mother", "dreamer", "artist", "traveler", "enthusiast", "fan",
                           "life", "world", "passionate", "creative"],
    "description_length": [6, 14]
  },
  "premium_smart": {
    "created_year": {"2008": 0.07, "2009": 0.08, "2010": 0.10, "2011": 0.11, "2012": 0.12,
                     "2013": 0.12, "2014": 0.13, "2015": 0.13, "2016": 0.14},
    "default_profile": 0.75,
    "default_profile_image": 0.35,
    "geo_enabled": 0.17,
    "protected": 0.136,
    "verified": 0.028,
    "lang": {"en": 0.42, "es": 0.15, "pt": 0.10, "ja": 0.08, "fr": 0.06, "de": 0.05,
             "it": 0.04, "tr": 0.03, "ru": 0.025, "ar": 0.02, "ko": 0.015, "nl": 0.01},
    "utc_offset": {"UTC-05:00": 0.45, "UTC-08:00": 0.20, "UTC+00:00": 0.12, "UTC+01:00": 0.08,
                   "UTC-06:00": 0.06, "UTC+09:00": 0.04, "UTC+05:30": 0.03, "UTC+02:00": 0.02},
    "favorites_count": {"alpha": 1.5, "vmax": 1000000},
    "followers_count": {"alpha": 1.66, "vmax": 1000000},
    "friends_count": {"alpha": 1.66, "vmax": 1000000},
    "listed_count": {"alpha": 1.8, "vmax": 10000},
    "statuses_count": {"alpha": 1.4, "vmax": 1000000},
    "description_tokens": ["musician", "lover", "writer", "sports", "coffee", "travel",
                           "father", "mother", "dreamer", "artist", "designer", "blogger",
                           "entrepreneur", "speaker", "author", "fitness"],
    "description_length": [5, 12]
  }
})JSON";

namespace detail {

inline CategoricalDist parse_categorical(const nlohmann::json& j) {
    CategoricalDist d;
    for (auto it = j.begin(); it != j.end(); ++it)
        d.outcomes.emplace_back(it.key(), it.value().get<double>());
    std::sort(d.outcomes.begin(), d.outcomes.end());
    double total = 0;
    for (auto& [_, p] : d.outcomes) total += p;
    if (total <= 0) throw validation_error("categorical distribution has zero mass");
    for (auto& [_, p] : d.outcomes) p /= total;
    return d;
}

inline CountDist parse_count_dist(const nlohmann::json& j) {
    CountDist d;
    d.alpha = j.at("alpha").get<double>();
    d.vmax = j.at("vmax").get<int64_t>();
    if (d.vmax < 1) throw validation_error("count distribution vmax must be >= 1");
    return d;
}

inline RegimeAttrProfile parse_profile(const nlohmann::json& j) {
    RegimeAttrProfile p;
    p.created_year = parse_categorical(j.at("created_year"));
    p.p_default_profile = j.at("default_profile").get<double>();
    p.p_default_profile_image = j.at("default_profile_image").get<double>();
    p.p_geo_enabled = j.at("geo_enabled").get<double>();
    p.p_protected = j.at("protected").get<double>();
    p.p_verified = j.at("verified").get<double>();
    p.lang = parse_categorical(j.at("lang"));
    p.utc_offset = parse_categorical(j.at("utc_offset"));
    p.favorites = parse_count_dist(j.at("favorites_count"));
    p.followers = parse_count_dist(j.at("followers_count"));
    p.friends = parse_count_dist(j.at("friends_count"));
    p.lists = parse_count_dist(j.at("listed_count"));
    p.statuses = parse_count_dist(j.at("statuses_count"));
    p.description_tokens = j.at("description_tokens").get<std::vector<std::string>>();
    auto len = j.at("description_length");
    p.description_min_tokens = len.at(0).get<int>();
    p.description_max_tokens = len.at(1).get<int>();
    return p;
}

}  // namespace detail

struct RegimeProfiles {
    std::map<std::string, RegimeAttrProfile> by_name;

    const RegimeAttrProfile& at(const std::string& name) const {
        auto it = by_name.find(name);
        if (it == by_name.end()) throw validation_error("no attribute profile for regime " + name);
        return it->second;
    }

    static RegimeProfiles from_json_text(const std::string& text) {
        nlohmann::json j;
        try { j = nlohmann::json::parse(text); }
        catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("bad profile JSON: ") + e.what());
        }
        RegimeProfiles p;
        for (auto it = j.begin(); it != j.end(); ++it)
            p.by_name.emplace(it.key(), detail::parse_profile(it.value()));
        return p;
    }

    static RegimeProfiles load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open profile file: " + path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return from_json_text(text);
    }

    static const RegimeProfiles& defaults() {
        static const RegimeProfiles p = from_json_text(kDefaultRegimeProfilesJson);
        return p;
    }
};

}  // namespace linkscope
