#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "linkscope/fraudclf.hpp"
#include "linkscope/netmetrics.hpp"
#include "linkscope/powerlaw.hpp"
#include "linkscope/synthgen.hpp"

using namespace linkscope;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

RegimeParams params(Regime r, int n_followers, uint64_t seed, Reuse reuse = Reuse::High) {
    RegimeParams p;
    p.regime = r;
    p.n_followers = n_followers;
    p.seed = seed;
    p.reuse = reuse;
    return p;
}

MetricReport egonet_metrics(const LabeledCorpus& c) {
    return compute_metrics(extract_egonet(c.graph, c.customers));
}

double customer_overlap(const LabeledCorpus& c) {
    return overlap_coefficient(c.graph.followers_of(c.customers[0]),
                               c.graph.followers_of(c.customers[1]));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("identical params give identical corpora", "[synthgen]") {
    LabeledCorpus a = gen_freemium(params(Regime::Freemium, 120, 7));
    LabeledCorpus b = gen_freemium(params(Regime::Freemium, 120, 7));
    REQUIRE(a.graph.node_count() == b.graph.node_count());
    REQUIRE(a.graph.edge_count() == b.graph.edge_count());
    a.graph.for_each_edge([&](NodeIndex s, NodeIndex d) {
        REQUIRE(b.graph.has_edge(a.graph.id_of(s), a.graph.id_of(d)));
    });

    fs::path dir = fs::temp_directory_path() / "linkscope_test";
    fs::create_directories(dir / "d1");
    fs::create_directories(dir / "d2");
    write_corpus(a, (dir / "d1").string());
    write_corpus(b, (dir / "d2").string());
    for (const char* f : {"edges.csv", "attributes.csv", "labels.csv", "egos.txt"})
        REQUIRE(slurp(dir / "d1" / f) == slurp(dir / "d2" / f));
}

TEST_CASE("different seeds give different corpora", "[synthgen]") {
    LabeledCorpus a = gen_freemium(params(Regime::Freemium, 120, 7));
    LabeledCorpus b = gen_freemium(params(Regime::Freemium, 120, 8));
    REQUIRE(a.graph.edge_count() != b.graph.edge_count());
}

TEST_CASE("genuine corpus has genuine labels and a ~1.2 exponent", "[synthgen]") {
    LabeledCorpus c = gen_genuine(params(Regime::Genuine, 300, 3));
    for (const auto& [_, label] : c.labels) REQUIRE(label == "genuine");
    REQUIRE(c.customers.size() == 2);

    std::vector<int64_t> counts;
    for (const auto& ego : c.customers)
        for (const auto& f : c.graph.followers_of(ego)) {
            auto it = c.attributes.find(f);
            if (it != c.attributes.end() && it->second.followers_count)
                counts.push_back(*it->second.followers_count);
        }
    auto fit = fit_powerlaw(counts);
    REQUIRE(fit.alpha_mle > 1.05);
    REQUIRE(fit.alpha_mle < 1.35);
}

TEST_CASE("genuine egonet closes more triangles than premium", "[synthgen]") {
    LabeledCorpus gen = gen_genuine(params(Regime::Genuine, 200, 7));
    LabeledCorpus pre = gen_premium(params(Regime::PremiumNaive, 200, 7));
    MetricReport g = egonet_metrics(gen);
    MetricReport p = egonet_metrics(pre);
    REQUIRE(g.transitivity.value() > p.transitivity.value_or(0.0));
}

TEST_CASE("freemium egonet lands in its bands", "[synthgen]") {
    LabeledCorpus c = gen_freemium(params(Regime::Freemium, 200, 7));
    MetricReport m = egonet_metrics(c);
    REQUIRE(m.density.value() == Approx(0.06).margin(0.015));
    REQUIRE(m.transitivity.value() == Approx(0.29).margin(0.05));
    REQUIRE(m.reciprocity.value() == Approx(0.41).margin(0.05));
    REQUIRE(customer_overlap(c) == Approx(0.8).margin(0.1));

    // At least 30% of egonet edges sit in mutual pairs.
    DirectedGraph eg = extract_egonet(c.graph, c.customers).to_graph();
    REQUIRE(reciprocity(eg) >= 0.30);
}

TEST_CASE("premium egonets are sterile stars", "[synthgen]") {
    LabeledCorpus c = gen_premium(params(Regime::PremiumNaive, 200, 7));
    DirectedGraph eg = extract_egonet(c.graph, c.customers).to_graph();
    int64_t mutual = 0;
    eg.for_each_edge([&](NodeIndex s, NodeIndex d) { mutual += eg.has_edge(d, s); });
    REQUIRE(mutual == 0);
    MetricReport m = compute_metrics(eg);
    REQUIRE(m.transitivity.value_or(0.0) == 0.0);
    REQUIRE(m.reciprocity.value() == 0.0);
}

TEST_CASE("premium reuse modes produce the two overlap signatures", "[synthgen]") {
    LabeledCorpus high = gen_premium(params(Regime::PremiumNaive, 200, 7, Reuse::High));
    REQUIRE(customer_overlap(high) >= 0.95);
    auto a = high.graph.followers_of(high.customers[0]);
    auto b = high.graph.followers_of(high.customers[1]);
    REQUIRE(std::abs(double(mse_estimate(a, b)) - 200.0) <= 10.0);

    LabeledCorpus low = gen_premium(params(Regime::PremiumNaive, 200, 7, Reuse::Low));
    REQUIRE(customer_overlap(low) <= 0.05);
    a = low.graph.followers_of(low.customers[0]);
    b = low.graph.followers_of(low.customers[1]);
    REQUIRE(mse_estimate(a, b) >= 20 * 200);
}

TEST_CASE("premium boomerang is denser than freemium at matched size", "[synthgen]") {
    LabeledCorpus pre = gen_premium(params(Regime::PremiumNaive, 200, 7));
    LabeledCorpus fre = gen_freemium(params(Regime::Freemium, 200, 7));
    double bp = boomerang_bipartite_density(extract_boomerang(pre.graph, pre.customers));
    double bf = boomerang_bipartite_density(extract_boomerang(fre.graph, fre.customers));
    REQUIRE(bp >= 3.0 * bf);
}

TEST_CASE("naive premium follower counts fit an unnaturally low exponent", "[synthgen]") {
    LabeledCorpus c = gen_premium(params(Regime::PremiumNaive, 500, 7));
    std::vector<int64_t> counts;
    for (const auto& ego : c.customers)
        for (const auto& f : c.graph.followers_of(ego)) {
            auto it = c.attributes.find(f);
            if (it != c.attributes.end() && it->second.followers_count)
                counts.push_back(*it->second.followers_count);
        }
    auto fit = fit_powerlaw(counts);
    REQUIRE(fit.alpha_ls <= 0.3);
}

TEST_CASE("smart premium camouflages language and exponent", "[synthgen]") {
    LabeledCorpus c = gen_premium(params(Regime::PremiumSmart, 400, 7));
    std::vector<AccountAttributes> followers;
    std::vector<int64_t> counts;
    for (const auto& f : c.graph.followers_of(c.customers[0])) {
        auto it = c.attributes.find(f);
        if (it == c.attributes.end()) continue;
        followers.push_back(it->second);
        if (it->second.followers_count) counts.push_back(*it->second.followers_count);
    }
    auto table = attribute_entropy_table(followers);
    REQUIRE(table.bits[size_t(Attr::Lang)].value() >= 2.0);
    auto fit = fit_powerlaw(counts);
    REQUIRE(fit.alpha_mle > 1.4);
    REQUIRE(fit.alpha_mle < 1.9);
}

TEST_CASE("corpus merge is disjoint, labeled, and sized as requested", "[synthgen]") {
    std::vector<std::pair<RegimeParams, int>> spec = {
        {params(Regime::Genuine, 120, 7), 4},
        {params(Regime::Freemium, 120, 7), 4},
        {params(Regime::PremiumNaive, 120, 7), 3},
    };
    LabeledCorpus c = gen_corpus(spec);
    REQUIRE(c.customers.size() == 11);
    REQUIRE(c.labels.size() == 11);
    int64_t fraud = 0;
    for (const auto& [id, label] : c.labels) {
        REQUIRE(c.graph.has_node(id));
        fraud += label == "fraud";
    }
    REQUIRE(fraud == 7);
    for (const auto& ego : c.customers) REQUIRE(c.graph.in_degree(c.graph.index_of(ego)) >= 1);
    // Regime tags survive the merge.
    REQUIRE(c.regimes.at(c.customers.front()) == "genuine");
}

TEST_CASE("corpus spec validation", "[synthgen]") {
    REQUIRE_THROWS_AS(gen_corpus({}), validation_error);
    REQUIRE_THROWS_AS(gen_corpus({{params(Regime::Freemium, 100, 1), 2}}), validation_error);
    REQUIRE_THROWS_AS(gen_corpus({{params(Regime::Freemium, 100, 1), 2},
                                  {params(Regime::PremiumNaive, 100, 1), 2}}),
                      validation_error);  // no genuine
}

TEST_CASE("regime params are validated", "[synthgen]") {
    REQUIRE_THROWS_AS(gen_freemium(params(Regime::Freemium, 5, 1)), validation_error);
    REQUIRE_THROWS_AS(gen_freemium(params(Regime::Genuine, 100, 1)), validation_error);
    RegimeParams p = params(Regime::Freemium, 100, 1);
    p.n_customers = 0;
    REQUIRE_THROWS_AS(gen_freemium(p), validation_error);
}

TEST_CASE("infeasible band overrides fail loudly", "[synthgen]") {
    RegimeParams p = params(Regime::Freemium, 60, 1);
    p.density_band = Band{0.90, 0.95};  // unreachable together with reciprocity
    p.transitivity_band = Band{0.0, 0.001};
    REQUIRE_THROWS_AS(gen_freemium(p), generation_error);
}

TEST_CASE("shipped profile file matches the embedded defaults", "[synthgen]") {
    fs::path data = fs::path(__FILE__).parent_path().parent_path() / "data" / "regime_attributes.json";
    REQUIRE(fs::exists(data));
    RegimeProfiles from_file = RegimeProfiles::load(data.string());
    const RegimeProfiles& builtin = RegimeProfiles::defaults();
    REQUIRE(from_file.by_name.size() == builtin.by_name.size());
    for (const auto& [name, prof] : builtin.by_name) {
        const auto& other = from_file.at(name);
        REQUIRE(other.lang.outcomes == prof.lang.outcomes);
        REQUIRE(other.followers.alpha == prof.followers.alpha);
        REQUIRE(other.p_default_profile == prof.p_default_profile);
        REQUIRE(other.description_tokens == prof.description_tokens);
    }
}
