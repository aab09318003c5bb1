#pragma once
// Seeded synthetic generators for the three delivery regimes.
//
// Each generator samples a provider account pool, wires its internal
// structure, attaches customers, measures its own egonet against the target
// bands, and retries with damped knob adjustments (up to 50 attempts) until
// the bands are hit. Identical RegimeParams produce identical corpora.
//
//   genuine        block-community follower structure, concentrated language
//   freemium       clustered reciprocal follow-trading pool, ~0.8 customer overlap
//   premium        overlapping stars; high reuse = near-total pool overlap,
//                  low reuse = large pool with near-zero overlap
//
// Followers also follow accounts outside the egonet ("friends"), giving the
// boomerang network its external connectivity: dense for premium, sparse
// for freemium.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "linkscope/errors.hpp"
#include "linkscope/graph.hpp"
#include "linkscope/netmetrics.hpp"
#include "linkscope/powerlaw.hpp"
#include "linkscope/regime_profiles.hpp"
#include "linkscope/subnet.hpp"

#include <json.hpp>

namespace linkscope {

enum class Regime { Genuine, Freemium, PremiumNaive, PremiumSmart };
enum class Reuse { High, Low };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Genuine: return "genuine";
        case Regime::Freemium: return "freemium";
        case Regime::PremiumNaive: return "premium_naive";
        case Regime::PremiumSmart: return "premium_smart";
    }
    return "?";
}

inline Regime regime_from_name(const std::string& s) {
    if (s == "genuine") return Regime::Genuine;
    if (s == "freemium") return Regime::Freemium;
    if (s == "premium_naive") return Regime::PremiumNaive;
    if (s == "premium_smart") return Regime::PremiumSmart;
    throw validation_error("unknown regime: " + s);
}

inline const char* regime_code(Regime r) {
    switch (r) {
        case Regime::Genuine: return "gen";
        case Regime::Freemium: return "fre";
        case Regime::PremiumNaive: return "pre";
        case Regime::PremiumSmart: return "smt";
    }
    return "unk";
}

struct Band {
    double lo = 0.0, hi = 1.0;
    bool contains(double x) const { return x >= lo && x <= hi; }
    double center() const { return (lo + hi) / 2.0; }
    // Same center, width scaled by f. The generator aims for this inner band
    // so measured values sit safely inside the advertised one.
    Band shrink(double f) const {
        double c = center(), h = (hi - lo) / 2.0 * f;
        return {c - h, c + h};
    }
};

struct RegimeParams {
    Regime regime = Regime::Freemium;
    int n_followers = 1000;  // per customer
    int n_customers = 2;
    Reuse reuse = Reuse::High;  // premium only
    uint64_t seed = 0;
    std::string id_prefix;  // defaults to "<code>_"

    // Target band overrides; regime defaults apply when unset.
    std::optional<Band> density_band, transitivity_band, reciprocity_band, overlap_band;

    const RegimeProfiles* profiles = nullptr;  // RegimeProfiles::defaults() when null

    int friends_per_follower = -1;  // regime default when < 0
    int friend_pool = -1;

    void validate() const {
        if (n_followers < 10) throw validation_error("n_followers must be >= 10");
        if (n_customers < 1) throw validation_error("n_customers must be >= 1");
    }
};

struct LabeledCorpus {
    DirectedGraph graph;
    AttributeTable attributes;
    LabelTable labels;                       // customer -> genuine|fraud
    std::map<NodeId, std::string> regimes;   // customer -> regime name
    std::vector<NodeId> customers;           // generation order
};

namespace synth_detail {

inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline bool bern(std::mt19937_64& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline const std::string& pick(const CategoricalDist& d, std::mt19937_64& rng) {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double acc = 0.0;
    for (const auto& [label, p] : d.outcomes) {
        acc += p;
        if (u < acc) return label;
    }
    return d.outcomes.back().first;
}

// First n entries of a seeded permutation of 0..pool-1.
inline std::vector<int> sample_without_replacement(int pool, int n, std::mt19937_64& rng) {
    std::vector<int> idx(static_cast<size_t>(pool));
    for (int i = 0; i < pool; ++i) idx[static_cast<size_t>(i)] = i;
    n = std::min(n, pool);
    for (int i = 0; i < n; ++i) {
        std::uniform_int_distribution<int> d(i, pool - 1);
        std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(d(rng))]);
    }
    idx.resize(static_cast<size_t>(n));
    return idx;
}

class AttrSampler {
public:
    int64_t count(const CountDist& d, std::mt19937_64& rng) {
        auto key = std::make_pair(d.alpha, d.vmax);
        auto it = samplers_.find(key);
        if (it == samplers_.end())
            it = samplers_.emplace(key, std::make_unique<PowerLawSampler>(
                                            PowerLawModel::make(d.alpha, d.vmax))).first;
        return it->second->sample(rng);
    }

    AccountAttributes make(const NodeId& id, const RegimeAttrProfile& p, std::mt19937_64& rng) {
        AccountAttributes a;
        a.account = id;
        a.created_year = std::stoi(pick(p.created_year, rng));
        a.default_profile = bern(rng, p.p_default_profile);
        a.default_profile_image = bern(rng, p.p_default_profile_image);
        a.favorites_count = count(p.favorites, rng);
        a.followers_count = count(p.followers, rng);
        a.friends_count = count(p.friends, rng);
        a.listed_count = count(p.lists, rng);
        a.statuses_count = count(p.statuses, rng);
        a.geo_enabled = bern(rng, p.p_geo_enabled);
        a.lang = pick(p.lang, rng);
        a.is_protected = bern(rng, p.p_protected);
        a.utc_offset = pick(p.utc_offset, rng);
        a.verified = bern(rng, p.p_verified);
        if (!p.description_tokens.empty()) {
            std::uniform_int_distribution<int> len(p.description_min_tokens, p.description_max_tokens);
            std::uniform_int_distribution<size_t> tok(0, p.description_tokens.size() - 1);
            std::string desc;
            int k = len(rng);
            for (int i = 0; i < k; ++i) {
                if (i) desc += ' ';
                desc += p.description_tokens[tok(rng)];
            }
            a.description = desc;
        }
        return a;
    }

private:
    std::map<std::pair<double, int64_t>, std::unique_ptr<PowerLawSampler>> samplers_;
};

inline std::string zero_pad(int v, int width) {
    std::string s = std::to_string(v);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

// One directed connection drawn between a pool pair: mutual with probability
// rho, otherwise a coin-flip direction.
struct PairEdges {
    std::vector<std::pair<int, int>> edges;  // pool-index pairs
    int64_t mutual_pairs = 0;
};

struct ServicePieces {
    std::vector<std::pair<int, int>> pool_edges;     // follower i -> follower j
    std::vector<std::vector<int>> customer_samples;  // per customer: pool indices
};

struct MeasuredBands {
    double density = 0, transitivity = 0, reciprocity = 0, overlap = 0;
    int64_t mse = 0;
};

}  // namespace synth_detail

// ---------------------------------------------------------------------------

namespace synth_detail {

// Assembles the service graph, measures the egonet, and fills the corpus.
// Shared by all three regimes once the pool structure has been decided.
class ServiceBuilder {
public:
    ServiceBuilder(const RegimeParams& params, int pool_size)
        : params_(params),
          prefix_(params.id_prefix.empty() ? std::string(regime_code(params.regime)) + "_"
                                           : params.id_prefix),
          pool_size_(pool_size) {
        for (int c = 0; c < params.n_customers; ++c)
            customer_ids_.push_back(prefix_ + "c" + std::to_string(c));
        pool_ids_.reserve(static_cast<size_t>(pool_size));
        for (int i = 0; i < pool_size; ++i)
            pool_ids_.push_back(prefix_ + "f" + zero_pad(i, 5));
    }

    const std::vector<NodeId>& customers() const { return customer_ids_; }
    const NodeId& pool_id(int i) const { return pool_ids_[static_cast<size_t>(i)]; }

    DirectedGraph assemble(const ServicePieces& pieces) const {
        DirectedGraph::Builder b;
        for (const auto& c : customer_ids_) b.add_node(c);
        for (const auto& f : pool_ids_) b.add_node(f);
        for (const auto& [i, j] : pieces.pool_edges) b.add_edge(pool_ids_[size_t(i)], pool_ids_[size_t(j)]);
        for (size_t c = 0; c < pieces.customer_samples.size(); ++c)
            for (int i : pieces.customer_samples[c])
                b.add_edge(pool_ids_[static_cast<size_t>(i)], customer_ids_[c]);
        return b.build();
    }

    MeasuredBands measure(const DirectedGraph& g, const ServicePieces& pieces) const {
        MeasuredBands m;
        SubnetView ego = extract_egonet(g, customer_ids_);
        DirectedGraph eg = ego.to_graph();
        m.density = density(eg);
        try { m.transitivity = transitivity(eg); } catch (const undefined_input_error&) {}
        try { m.reciprocity = reciprocity(eg); } catch (const undefined_input_error&) {}
        if (pieces.customer_samples.size() >= 2) {
            std::vector<NodeId> a, b;
            for (int i : pieces.customer_samples[0]) a.push_back(pool_id(i));
            for (int i : pieces.customer_samples[1]) b.push_back(pool_id(i));
            m.overlap = overlap_coefficient(a, b);
            try { m.mse = mse_estimate(a, b); } catch (const undefined_input_error&) { m.mse = -1; }
        }
        return m;
    }

    // Everything that happens after the egonet is accepted: friend out-links,
    // attributes, labels.
    void finish(LabeledCorpus& out, DirectedGraph&& g, const ServicePieces& pieces,
                const RegimeProfiles& profiles, std::mt19937_64& rng) const {
        // Friend universe size and per-follower out-degree control boomerang
        // bipartite density: premium pools are reused hard against a small
        // customer base, freemium followers spread over a wide one.
        bool premium = params_.regime == Regime::PremiumNaive || params_.regime == Regime::PremiumSmart;
        int fanout = params_.friends_per_follower >= 0 ? params_.friends_per_follower
                                                       : (premium ? 26 : (params_.regime == Regime::Freemium ? 25 : 20));
        int universe = params_.friend_pool > 0 ? params_.friend_pool
                                               : (premium ? 2 * params_.n_followers
                                                          : 10 * params_.n_followers);
        universe = std::max(universe, fanout + 1);

        // Members actually delivered to some customer.
        std::vector<uint8_t> delivered(static_cast<size_t>(pool_size_), 0);
        for (const auto& s : pieces.customer_samples)
            for (int i : s) delivered[static_cast<size_t>(i)] = 1;

        DirectedGraph::Builder b;
        // Re-add existing structure.
        for (const auto& id : g.nodes()) b.add_node(id);
        g.for_each_edge([&](NodeIndex s, NodeIndex d) { b.add_edge(g.id_of(s), g.id_of(d)); });
        for (int i = 0; i < pool_size_; ++i) {
            if (!delivered[static_cast<size_t>(i)]) continue;
            for (int w : sample_without_replacement(universe, fanout, rng))
                b.add_edge(pool_ids_[static_cast<size_t>(i)], prefix_ + "w" + zero_pad(w, 5));
        }
        out.graph = b.build();

        const auto& profile = profiles.at(regime_name(params_.regime));
        const auto& genuine_profile = profiles.at("genuine");
        AttrSampler sampler;
        // Customers look like ordinary genuine accounts in every regime.
        for (const auto& c : customer_ids_)
            out.attributes.emplace(c, sampler.make(c, genuine_profile, rng));
        for (int i = 0; i < pool_size_; ++i) {
            if (!delivered[static_cast<size_t>(i)]) continue;
            const auto& id = pool_ids_[static_cast<size_t>(i)];
            out.attributes.emplace(id, sampler.make(id, profile, rng));
        }

        const char* label = params_.regime == Regime::Genuine ? "genuine" : "fraud";
        for (const auto& c : customer_ids_) {
            out.labels[c] = label;
            out.regimes[c] = regime_name(params_.regime);
            out.customers.push_back(c);
        }
    }

private:
    const RegimeParams& params_;
    std::string prefix_;
    int pool_size_;
    std::vector<NodeId> customer_ids_;
    std::vector<NodeId> pool_ids_;
};

}  // namespace synth_detail

// ---------------------------------------------------------------------------

inline LabeledCorpus gen_freemium(const RegimeParams& params) {
    if (params.regime != Regime::Freemium) throw validation_error("params.regime must be freemium");
    params.validate();
    using namespace synth_detail;

    const Band density_b = params.density_band.value_or(Band{0.045, 0.075});
    const Band transitivity_b = params.transitivity_band.value_or(Band{0.24, 0.34});
    const Band reciprocity_b = params.reciprocity_band.value_or(Band{0.36, 0.46});
    const Band overlap_b = params.overlap_band.value_or(Band{0.70, 0.90});
    const Band density_i = density_b.shrink(0.5), transitivity_i = transitivity_b.shrink(0.5),
               reciprocity_i = reciprocity_b.shrink(0.5);

    const int n_fol = params.n_followers;
    const int pool = static_cast<int>(std::lround(n_fol / 0.8));
    const bool large = n_fol >= 500;
    const int cluster_size = large ? 300 : 70;
    const int k = std::max(2, static_cast<int>(std::lround(double(pool) / cluster_size)));

    // Calibrated starting knobs; the loop below nudges them onto the bands.
    double q = large ? 0.35 : 0.42;       // intra-cluster connection probability
    double qx = large ? 0.010 : 0.016;    // inter-cluster connection probability
    double rho = 0.27;                    // mutual fraction per connection

    std::mt19937_64 rng(mix_seed(params.seed, 0xF8EE));
    const RegimeProfiles& profiles = params.profiles ? *params.profiles : RegimeProfiles::defaults();
    ServiceBuilder builder(params, pool);

    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<int> cluster(static_cast<size_t>(pool));
        std::uniform_int_distribution<int> cd(0, k - 1);
        for (auto& c : cluster) c = cd(rng);

        ServicePieces pieces;
        for (int i = 0; i < pool; ++i) {
            for (int j = i + 1; j < pool; ++j) {
                double p = cluster[size_t(i)] == cluster[size_t(j)] ? q : qx;
                if (!bern(rng, p)) continue;
                if (bern(rng, rho)) {
                    pieces.pool_edges.emplace_back(i, j);
                    pieces.pool_edges.emplace_back(j, i);
                } else if (bern(rng, 0.5)) {
                    pieces.pool_edges.emplace_back(i, j);
                } else {
                    pieces.pool_edges.emplace_back(j, i);
                }
            }
        }
        for (int c = 0; c < params.n_customers; ++c)
            pieces.customer_samples.push_back(sample_without_replacement(pool, n_fol, rng));

        DirectedGraph g = builder.assemble(pieces);
        MeasuredBands m = builder.measure(g, pieces);
        bool overlap_ok = params.n_customers < 2 || overlap_b.contains(m.overlap);
        if (density_i.contains(m.density) && transitivity_i.contains(m.transitivity) &&
            reciprocity_i.contains(m.reciprocity) && overlap_ok) {
            LabeledCorpus out;
            builder.finish(out, std::move(g), pieces, profiles, rng);
            return out;
        }
        // Damped multiplicative adjustments: q drives closure, qx the
        // density remainder, rho the reciprocal share.
        q = std::clamp(q * std::pow(transitivity_i.center() / std::max(m.transitivity, 1e-6), 0.8) *
                           std::pow(density_i.center() / std::max(m.density, 1e-9), 0.3),
                       0.01, 0.95);
        qx = std::clamp(qx * std::pow(density_i.center() / std::max(m.density, 1e-9), 1.2), 1e-5, 0.5);
        rho = std::clamp(rho * reciprocity_i.center() / std::max(m.reciprocity, 1e-6), 0.01, 0.95);
    }
    throw generation_error("freemium generator could not hit its bands in 50 attempts");
}

inline LabeledCorpus gen_premium(const RegimeParams& params) {
    if (params.regime != Regime::PremiumNaive && params.regime != Regime::PremiumSmart)
        throw validation_error("params.regime must be premium_naive or premium_smart");
    params.validate();
    using namespace synth_detail;

    const int n_fol = params.n_followers;
    const bool high = params.reuse == Reuse::High;
    const Band overlap_b = params.overlap_band.value_or(high ? Band{0.95, 1.0} : Band{0.0, 0.05});
    // Star egonets at realistic sizes are structurally sparse; the density
    // ceiling only binds once the stars are big enough for it to be
    // satisfiable (density ~ n_customers / n_followers).
    const bool check_density = n_fol >= 500;
    const Band density_b = params.density_band.value_or(Band{0.0, 0.003});
    const Band transitivity_b = params.transitivity_band.value_or(Band{0.0, 0.001});

    const int pool = high ? std::max(n_fol, static_cast<int>(std::lround(n_fol * 1.005)))
                          : 25 * n_fol;

    std::mt19937_64 rng(mix_seed(params.seed, high ? 0xBEEF : 0xFEED));
    const RegimeProfiles& profiles = params.profiles ? *params.profiles : RegimeProfiles::defaults();
    ServiceBuilder builder(params, pool);

    for (int attempt = 0; attempt < 50; ++attempt) {
        ServicePieces pieces;  // no pool-internal edges: overlapping stars
        for (int c = 0; c < params.n_customers; ++c)
            pieces.customer_samples.push_back(sample_without_replacement(pool, n_fol, rng));

        DirectedGraph g = builder.assemble(pieces);
        MeasuredBands m = builder.measure(g, pieces);

        bool ok = m.reciprocity == 0.0 && transitivity_b.contains(m.transitivity);
        if (check_density) ok = ok && density_b.contains(m.density);
        if (params.n_customers >= 2) {
            ok = ok && overlap_b.contains(m.overlap) && m.mse > 0;
            if (high) ok = ok && std::abs(double(m.mse) - n_fol) <= 0.05 * n_fol;
            else ok = ok && m.mse >= 20LL * n_fol;
        }
        if (ok) {
            LabeledCorpus out;
            builder.finish(out, std::move(g), pieces, profiles, rng);
            return out;
        }
    }
    throw generation_error("premium generator could not hit its bands in 50 attempts");
}

inline LabeledCorpus gen_genuine(const RegimeParams& params) {
    if (params.regime != Regime::Genuine) throw validation_error("params.regime must be genuine");
    params.validate();
    using namespace synth_detail;

    const int n_fol = params.n_followers;
    const int pool = static_cast<int>(std::lround(n_fol * 1.25));

    std::mt19937_64 rng(mix_seed(params.seed, 0x6E47));
    const RegimeProfiles& profiles = params.profiles ? *params.profiles : RegimeProfiles::defaults();
    ServiceBuilder builder(params, pool);

    // Block communities: dense inside, sparse across; follows are organic so
    // roughly half the connections are mutual.
    std::uniform_int_distribution<int> kd(3, 8);
    const int k = kd(rng);
    const double q = 0.15, qx = 0.005, rho = 0.5;

    std::vector<int> community(static_cast<size_t>(pool));
    std::uniform_int_distribution<int> cd(0, k - 1);
    for (auto& c : community) c = cd(rng);

    ServicePieces pieces;
    for (int i = 0; i < pool; ++i) {
        for (int j = i + 1; j < pool; ++j) {
            double p = community[size_t(i)] == community[size_t(j)] ? q : qx;
            if (!bern(rng, p)) continue;
            if (bern(rng, rho)) {
                pieces.pool_edges.emplace_back(i, j);
                pieces.pool_edges.emplace_back(j, i);
            } else if (bern(rng, 0.5)) {
                pieces.pool_edges.emplace_back(i, j);
            } else {
                pieces.pool_edges.emplace_back(j, i);
            }
        }
    }
    for (int c = 0; c < params.n_customers; ++c)
        pieces.customer_samples.push_back(sample_without_replacement(pool, n_fol, rng));

    DirectedGraph g = builder.assemble(pieces);
    if (params.density_band || params.transitivity_band || params.reciprocity_band) {
        MeasuredBands m = builder.measure(g, pieces);
        auto fits = [](const std::optional<Band>& b, double v) { return !b || b->contains(v); };
        if (!fits(params.density_band, m.density) ||
            !fits(params.transitivity_band, m.transitivity) ||
            !fits(params.reciprocity_band, m.reciprocity))
            throw generation_error("genuine generator missed its override bands");
    }
    LabeledCorpus out;
    builder.finish(out, std::move(g), pieces, profiles, rng);
    return out;
}

inline LabeledCorpus generate(const RegimeParams& params) {
    switch (params.regime) {
        case Regime::Genuine: return gen_genuine(params);
        case Regime::Freemium: return gen_freemium(params);
        case Regime::PremiumNaive:
        case Regime::PremiumSmart: return gen_premium(params);
    }
    throw internal_error("bad regime");
}

// ---------------------------------------------------------------------------
// Corpus assembly: one entry per regime with a total customer count; the
// count is split into independent service instances of n_customers each,
// with disjoint id namespaces and per-instance derived seeds.

inline LabeledCorpus gen_services(const RegimeParams& base, int total_customers,
                                  int* instance_counter) {
    if (total_customers < 1) throw validation_error("customer count must be >= 1");
    LabeledCorpus merged;
    DirectedGraph::Builder b;
    std::set<NodeId> seen;

    int remaining = total_customers;
    while (remaining > 0) {
        RegimeParams p = base;
        p.n_customers = std::min(base.n_customers, remaining);
        int idx = (*instance_counter)++;
        p.seed = synth_detail::mix_seed(base.seed, static_cast<uint64_t>(idx));
        p.id_prefix = std::string(regime_code(base.regime)) + synth_detail::zero_pad(idx, 3) + "_";
        LabeledCorpus part = generate(p);

        for (const auto& id : part.graph.nodes()) {
            if (!seen.insert(id).second)
                throw internal_error("node id collision while merging corpora: " + id);
            b.add_node(id);
        }
        part.graph.for_each_edge([&](NodeIndex s, NodeIndex d) {
            b.add_edge(part.graph.id_of(s), part.graph.id_of(d));
        });
        for (auto& [id, a] : part.attributes) merged.attributes[id] = std::move(a);
        for (const auto& [id, l] : part.labels) merged.labels[id] = l;
        for (const auto& [id, r] : part.regimes) merged.regimes[id] = r;
        for (const auto& c : part.customers) merged.customers.push_back(c);
        remaining -= p.n_customers;
    }
    merged.graph = b.build();
    return merged;
}

inline LabeledCorpus gen_corpus(const std::vector<std::pair<RegimeParams, int>>& spec) {
    if (spec.empty()) throw validation_error("corpus spec is empty");
    std::set<Regime> regimes;
    for (const auto& [p, count] : spec) {
        if (count < 1) throw validation_error("corpus spec counts must be >= 1");
        regimes.insert(p.regime);
    }
    if (regimes.size() < 2 || !regimes.count(Regime::Genuine))
        throw validation_error("corpus spec needs >= 2 regimes including genuine");

    LabeledCorpus merged;
    DirectedGraph::Builder b;
    std::set<NodeId> seen;
    int instance_counter = 0;
    for (const auto& [params, count] : spec) {
        LabeledCorpus part = gen_services(params, count, &instance_counter);
        for (const auto& id : part.graph.nodes()) {
            if (!seen.insert(id).second)
                throw internal_error("node id collision while merging corpora: " + id);
            b.add_node(id);
        }
        part.graph.for_each_edge([&](NodeIndex s, NodeIndex d) {
            b.add_edge(part.graph.id_of(s), part.graph.id_of(d));
        });
        for (auto& [id, a] : part.attributes) merged.attributes[id] = std::move(a);
        for (const auto& [id, l] : part.labels) merged.labels[id] = l;
        for (const auto& [id, r] : part.regimes) merged.regimes[id] = r;
        for (const auto& c : part.customers) merged.customers.push_back(c);
    }
    merged.graph = b.build();
    return merged;
}

// The ground-truth-shaped corpus used by the evaluation harness:
// 200 genuine + 150 freemium + 157 premium customers.
inline LabeledCorpus default_classifier_corpus(uint64_t seed, int n_followers = 200) {
    auto params = [&](Regime r) {
        RegimeParams p;
        p.regime = r;
        p.n_followers = n_followers;
        p.seed = seed;
        return p;
    };
    return gen_corpus({{params(Regime::Genuine), 200},
                       {params(Regime::Freemium), 150},
                       {params(Regime::PremiumNaive), 157}});
}

// ---------------------------------------------------------------------------
// On-disk layout: edges.csv, attributes.csv, labels.csv, egos.txt.

inline void write_corpus(const LabeledCorpus& corpus, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_edges(corpus.graph, dir + "/edges.csv");
    write_attributes(corpus.attributes, dir + "/attributes.csv");
    write_labels(corpus.labels, dir + "/labels.csv");
    std::ofstream out(dir + "/egos.txt");
    if (!out) throw io_error("cannot write " + dir + "/egos.txt");
    std::vector<NodeId> sorted = corpus.customers;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& c : sorted) out << c << '\n';
}

// Parses the synth CLI config: {"seed": N, "services": [{regime, count,
// n_followers, n_customers, reuse, ...}]}.
inline std::vector<std::pair<RegimeParams, int>> parse_synth_config(const nlohmann::json& j,
                                                                    uint64_t seed) {
    std::vector<std::pair<RegimeParams, int>> spec;
    if (!j.contains("services") || !j["services"].is_array() || j["services"].empty())
        throw validation_error("config needs a non-empty 'services' array");
    for (const auto& s : j["services"]) {
        RegimeParams p;
        p.regime = regime_from_name(s.at("regime").get<std::string>());
        p.n_followers = s.value("n_followers", 1000);
        p.n_customers = s.value("n_customers", 2);
        if (s.contains("reuse")) {
            std::string r = s["reuse"].get<std::string>();
            if (r == "high") p.reuse = Reuse::High;
            else if (r == "low") p.reuse = Reuse::Low;
            else throw validation_error("reuse must be high|low");
        }
        if (s.contains("friends_per_follower")) p.friends_per_follower = s["friends_per_follower"].get<int>();
        if (s.contains("friend_pool")) p.friend_pool = s["friend_pool"].get<int>();
        auto band = [&](const char* key) -> std::optional<Band> {
            if (!s.contains(key)) return std::nullopt;
            auto arr = s[key];
            return Band{arr.at(0).get<double>(), arr.at(1).get<double>()};
        };
        p.density_band = band("density_band");
        p.transitivity_band = band("transitivity_band");
        p.reciprocity_band = band("reciprocity_band");
        p.overlap_band = band("overlap_band");
        p.seed = seed;
        int count = s.value("count", p.n_customers);
        spec.emplace_back(std::move(p), count);
    }
    return spec;
}

}  // namespace linkscope
