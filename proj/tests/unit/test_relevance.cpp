#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dense_pagerank.hpp"
#include "generators.hpp"
#include "ontoview/document.hpp"
#include "ontoview/relevance.hpp"

using namespace ontoview;
using ontoview::testing::dense_pagerank;

namespace {

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

Edges random_graph(std::uint64_t seed, std::size_t n) {
    auto dag = ontoview::testing::random_dag(seed, n);
    std::mt19937_64 rng(seed * 7919);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    // Some back edges and repeated edges so cycles and multi-links are covered.
    for (std::size_t k = 0; k < n / 5; ++k) {
        dag.edges.emplace_back(pick(rng), pick(rng));
    }
    return dag.edges;
}

OntoGraph graph_of(const std::string& axioms) {
    const std::string text = "Prefix(:=<http://example.org/t#>)\nOntology(<http://example.org/t>\n" + axioms + ")\n";
    auto loaded = load_document(text);
    REQUIRE(loaded.ok());
    return loaded.document->build();
}

std::size_t index_of(const OntoGraph& g, const std::string& label) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.nodes[i].label == label) {
            return i;
        }
    }
    FAIL("no node labelled " << label);
    return 0;
}

const std::string kBinaryTree =
    "SubClassOf(:A owl:Thing)\nSubClassOf(:B owl:Thing)\n"
    "SubClassOf(:A1 :A)\nSubClassOf(:A2 :A)\nSubClassOf(:B1 :B)\nSubClassOf(:B2 :B)\n";

}  // namespace

TEST_CASE("pagerank trivial cases") {
    SUBCASE("two nodes linked both ways") {
        for (const double d : {0.1, 0.5, 0.85, 0.99}) {
            const auto r = pagerank(2, Edges{{0, 1}, {1, 0}}, true, {d, 1e-10});
            CHECK(r.values[0] == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(r.values[1] == doctest::Approx(0.5).epsilon(1e-12));
        }
    }
    SUBCASE("single node") {
        const auto r = pagerank(1, Edges{}, true);
        CHECK(r.values == std::vector<double>{1.0});
    }
    SUBCASE("empty graph") {
        CHECK(pagerank(0, Edges{}, true).values.empty());
    }
    SUBCASE("damping outside (0, 1)") {
        CHECK_THROWS_AS(pagerank(2, Edges{{0, 1}}, true, {1.0, 1e-10}), std::invalid_argument);
        CHECK_THROWS_AS(pagerank(2, Edges{{0, 1}}, true, {0.0, 1e-10}), std::invalid_argument);
    }
}

TEST_CASE("pagerank star matches the dense oracle") {
    // Leaves 1..3 link to hub 0.
    const Edges star{{1, 0}, {2, 0}, {3, 0}};
    const auto r = pagerank(4, star, true);
    const auto oracle = dense_pagerank(4, star, true, 0.85);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(r.values[i] - oracle(static_cast<Eigen::Index>(i))) <= 1e-8);
    }
    CHECK(r.values[0] > r.values[1]);
    CHECK(r.values[1] == doctest::Approx(r.values[2]));
}

TEST_CASE("pagerank agrees with the dense oracle on random graphs") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const std::size_t n = 5 + seed % 40;
        const auto edges = random_graph(seed, n);
        for (const bool directed : {true, false}) {
            const auto r = pagerank(n, edges, directed);
            const auto oracle = dense_pagerank(n, edges, directed, 0.85);
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                worst = std::max(worst, std::abs(r.values[i] - oracle(static_cast<Eigen::Index>(i))));
            }
            CHECK(worst <= 1e-8);
        }
    }
}

TEST_CASE("pagerank scores are a distribution") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const std::size_t n = 2 + seed * 3;
        const auto edges = random_graph(seed, n);
        for (const bool directed : {true, false}) {
            const auto r = pagerank(n, edges, directed);
            const double sum = std::accumulate(r.values.begin(), r.values.end(), 0.0);
            CHECK(std::abs(sum - 1.0) <= 1e-9);
            CHECK(std::all_of(r.values.begin(), r.values.end(), [](double v) { return std::isfinite(v) && v >= 0.0; }));
        }
    }
}

TEST_CASE("copying every edge keeps the ranking") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::size_t n = 10 + seed;
        const auto edges = random_graph(seed, n);
        for (const std::size_t copies : {2, 3}) {
            Edges scaled;
            for (std::size_t k = 0; k < copies; ++k) {
                scaled.insert(scaled.end(), edges.begin(), edges.end());
            }
            for (const bool directed : {true, false}) {
                const auto a = pagerank(n, edges, directed);
                const auto b = pagerank(n, scaled, directed);
                for (std::size_t i = 0; i < n; ++i) {
                    CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("pagerank on the isA graph") {
    const auto g = graph_of(kBinaryTree);
    const auto directed = pagerank(g, true);
    const auto undirected = pagerank(g, false);
    // Mass flows child → parent: Thing collects the most.
    const auto best = std::max_element(directed.values.begin(), directed.values.end()) - directed.values.begin();
    CHECK(static_cast<std::size_t>(best) == OntoGraph::kThing);
    CHECK(directed.values[index_of(g, "A")] == doctest::Approx(directed.values[index_of(g, "B")]));
    CHECK(undirected.values[index_of(g, "A1")] == doctest::Approx(undirected.values[index_of(g, "B2")]));
    CHECK(std::all_of(directed.scored.begin(), directed.scored.end(), [](char c) { return c != 0; }));
}

TEST_CASE("label tokens") {
    CHECK(label_tokens("Pizza") == 1);
    CHECK(label_tokens("MargheritaPizza") == 2);
    CHECK(label_tokens("margherita_pizza") == 2);
    CHECK(label_tokens("hot-spicy topping") == 3);
    CHECK(label_tokens("HTTPServer") == 2);
    CHECK(label_tokens("Route66") == 2);
    CHECK(label_tokens("") == 1);
    CHECK(label_tokens("__") == 1);
}

TEST_CASE("kce") {
    SUBCASE("single class scores maximal") {
        const auto g = graph_of("Declaration(Class(:Only))\n");
        const auto s = kce_scores(g);
        const auto only = index_of(g, "Only");
        CHECK(s.scored[only]);
        CHECK_FALSE(s.scored[OntoGraph::kThing]);
        // Coverage 1, name simplicity 1, density 0 (nothing hangs below it).
        CHECK(s.values[only] == doctest::Approx(0.6));
    }
    SUBCASE("binary tree: inner nodes outscore leaves") {
        const auto g = graph_of(kBinaryTree);
        const auto s = kce_scores(g);
        // density 2/2, coverage 2/4, simplicity 1 → 0.4 + 0.2 + 0.2
        CHECK(s.values[index_of(g, "A")] == doctest::Approx(0.8));
        // density 0, coverage 1/4, simplicity 1/2 ("A1" → A, 1)
        CHECK(s.values[index_of(g, "A1")] == doctest::Approx(0.2));
        for (const auto* inner : {"A", "B"}) {
            for (const auto* leaf : {"A1", "A2", "B1", "B2"}) {
                CHECK(s.values[index_of(g, inner)] > s.values[index_of(g, leaf)]);
            }
        }
    }
    SUBCASE("isomorphic siblings tie") {
        const auto g = graph_of("SubClassOf(:Red :Colour)\nSubClassOf(:Blue :Colour)\n");
        const auto s = kce_scores(g);
        CHECK(s.values[index_of(g, "Red")] == s.values[index_of(g, "Blue")]);
    }
    SUBCASE("weights are configurable") {
        const auto g = graph_of(kBinaryTree);
        const auto s = kce_scores(g, {0.0, 1.0, 0.0});
        CHECK(s.values[index_of(g, "A")] == doctest::Approx(0.5));
        CHECK(s.values[index_of(g, "A1")] == doctest::Approx(0.25));
    }
    SUBCASE("anonymous and Nothing nodes are not ranked") {
        const auto g = graph_of(
            "ObjectPropertyDomain(:p :A)\nSubClassOf(:B ObjectSomeValuesFrom(:p :A))\n"
            "SubClassOf(:X :A)\nSubClassOf(:X :C)\nDisjointClasses(:A :C)\nSubClassOf(:Y :X)\n");
        const auto s = kce_scores(g);
        std::size_t anonymous = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const bool named = g.nodes[i].kind != NodeKind::Anonymous && !g.nodes[i].unsatisfiable;
            CHECK(static_cast<bool>(s.scored[i]) == (named && i != OntoGraph::kThing));
            anonymous += g.nodes[i].kind == NodeKind::Anonymous;
        }
        CHECK(anonymous == 1);
        CHECK(std::any_of(g.nodes.begin(), g.nodes.end(), [](const OntoNode& n) { return n.unsatisfiable; }));
    }
}

TEST_CASE("summaries") {
    const auto g = graph_of(kBinaryTree);
    const ScorerRegistry registry;

    SUBCASE("n at or above the node count returns everything") {
        for (const auto& method : registry.names()) {
            const auto s = registry.score(method, g);
            for (const std::size_t n : {g.size(), g.size() + 10}) {
                CHECK(summarize(g, {method, n, {}}, s).size() == g.size());
            }
        }
    }
    SUBCASE("tied siblings both enter") {
        const auto s = registry.score("kce", g);
        const auto out = summarize(g, {"kce", 1, {}}, s);
        CHECK(out == std::vector<std::size_t>{OntoGraph::kThing, index_of(g, "A"), index_of(g, "B")});
    }
    SUBCASE("custom returns the set plus Thing") {
        const auto out = summarize(g, {"custom", 1, {index_of(g, "B2"), index_of(g, "A")}}, {});
        CHECK(out == std::vector<std::size_t>{OntoGraph::kThing, index_of(g, "A"), index_of(g, "B2")});
        CHECK_THROWS_AS(summarize(g, {"custom", 1, {}}, {}), std::invalid_argument);
    }
    SUBCASE("n = 0 is rejected") {
        CHECK_THROWS_AS(summarize(g, {"pagerank", 0, {}}, registry.score("pagerank", g)), std::invalid_argument);
    }
    SUBCASE("unknown method") {
        CHECK_FALSE(registry.contains("popularity"));
        CHECK_THROWS_AS(registry.score("popularity", g), std::invalid_argument);
    }
    SUBCASE("a constant scorer ties everything") {
        ScorerRegistry custom;
        custom.add("constant", [](const OntoGraph& graph) {
            return RelevanceScore{std::vector<double>(graph.size(), 1.0), std::vector<char>(graph.size(), 1)};
        });
        CHECK(custom.contains("constant"));
        for (std::size_t n = 1; n <= g.size(); ++n) {
            CHECK(summarize(g, {"constant", n, {}}, custom.score("constant", g)).size() == g.size());
        }
    }
}

TEST_CASE("summaries never split a tie and keep the top scores") {
    const ScorerRegistry registry;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const auto dag = ontoview::testing::random_dag(seed, 40, 2);
        auto loaded = load_document(ontoview::testing::dag_document(dag));
        REQUIRE(loaded.ok());
        const auto g = loaded.document->build();
        for (const auto& method : registry.names()) {
            const auto s = registry.score(method, g);
            for (const std::size_t n : {1, 3, 7, 15}) {
                const auto out = summarize(g, {method, n, {}}, s);
                std::vector<char> in(g.size(), 0);
                for (const auto i : out) {
                    in[i] = 1;
                }
                CHECK(in[OntoGraph::kThing]);
                std::size_t ranked_in = 0;
                double lowest_in = 1e300;
                double highest_out = -1.0;
                for (std::size_t i = 0; i < g.size(); ++i) {
                    if (!s.scored[i]) {
                        continue;
                    }
                    ranked_in += in[i];
                    // Thing is in regardless of its score.
                    if (i == OntoGraph::kThing) {
                        continue;
                    }
                    if (in[i]) {
                        lowest_in = std::min(lowest_in, s.values[i]);
                    } else {
                        highest_out = std::max(highest_out, s.values[i]);
                    }
                }
                CHECK(ranked_in >= n);
                CHECK(lowest_in > highest_out * (1.0 + 1e-9));
            }
        }
    }
}

TEST_CASE("dbpedia-scale pagerank summary of 20") {
    auto loaded = load_document(ontoview::testing::synthetic_dbpedia(11));
    REQUIRE(loaded.ok());
    const auto g = loaded.document->build();
    REQUIRE(g.size() > 400);
    const auto s = pagerank(g, true);
    const auto out = summarize(g, {"pagerank", 20, {}}, s);
    CHECK(out.size() >= 20);
    std::vector<double> sorted = s.values;
    std::sort(sorted.rbegin(), sorted.rend());
    for (const auto i : out) {
        CHECK(s.values[i] >= sorted[19] * (1.0 - 1e-9));
    }
}
