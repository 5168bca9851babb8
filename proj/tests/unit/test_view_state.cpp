#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "generators.hpp"
#include "view_fuzz.hpp"
#include "ontoview/document.hpp"
#include "ontoview/render.hpp"
#include "ontoview/view_document.hpp"
#include "ontoview/view_state.hpp"

using namespace ontoview;

namespace {

struct Loaded {
    std::shared_ptr<const Document> document;
    std::shared_ptr<const OntoGraph> graph;
    std::shared_ptr<Explorer> explorer;
};

Loaded load_text(const std::string& text) {
    auto loaded = load_document(text);
    REQUIRE(loaded.ok());
    Loaded out;
    out.document = loaded.document;
    out.graph = std::make_shared<const OntoGraph>(loaded.document->build());
    out.explorer = std::make_shared<Explorer>(out.graph, pagerank(*out.graph, true));
    return out;
}

Loaded load_axioms(const std::string& axioms) {
    return load_text("Prefix(:=<http://example.org/v#>)\nOntology(<http://example.org/v>\n" + axioms + ")\n");
}

std::size_t at(const OntoGraph& g, const std::string& label) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.nodes[i].label == label) {
            return i;
        }
    }
    FAIL("no node labelled " << label);
    return 0;
}

std::vector<char> only(const OntoGraph& g, std::initializer_list<const char*> labels) {
    std::vector<char> v(g.size(), 0);
    v[OntoGraph::kThing] = 1;
    for (const auto* l : labels) {
        v[at(g, l)] = 1;
    }
    return v;
}

std::size_t count(const std::vector<char>& v) { return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1)); }

/// Literal reading of the dashed-edge definition over explicit path enumeration.
std::vector<DashedEdge> brute_dashed(const OntoGraph& g, const std::vector<char>& visible) {
    std::vector<DashedEdge> out;
    for (std::size_t d = 0; d < g.size(); ++d) {
        if (!visible[d]) {
            continue;
        }
        // For every ancestor: does some path reach it, and does every path have a hidden interior?
        std::vector<char> reached(g.size(), 0);
        std::vector<char> clean(g.size(), 1);
        std::vector<std::size_t> path;
        std::function<void(std::size_t)> walk = [&](std::size_t v) {
            for (const auto p : g.parents(v)) {
                reached[p] = 1;
                const bool interior_visible =
                    std::any_of(path.begin(), path.end(), [&](std::size_t x) { return visible[x] != 0; });
                if (interior_visible) {
                    clean[p] = 0;
                }
                path.push_back(p);
                walk(p);
                path.pop_back();
            }
        };
        walk(d);
        const auto parents = g.parents(d);
        for (std::size_t a = 0; a < g.size(); ++a) {
            if (a == d || !visible[a] || !reached[a] || !clean[a]) {
                continue;
            }
            if (std::find(parents.begin(), parents.end(), a) != parents.end()) {
                continue;
            }
            out.push_back({d, a});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

const std::string kTen =
    "SubClassOf(:R owl:Thing)\n"
    "SubClassOf(:C01 :R)\nSubClassOf(:C02 :R)\nSubClassOf(:C03 :R)\nSubClassOf(:C04 :R)\nSubClassOf(:C05 :R)\n"
    "SubClassOf(:C06 :R)\nSubClassOf(:C07 :R)\nSubClassOf(:C08 :R)\nSubClassOf(:C09 :R)\nSubClassOf(:C10 :R)\n";

}  // namespace

TEST_CASE("dashed connectors") {
    SUBCASE("everything visible") {
        const auto l = load_axioms("SubClassOf(:A :B)\nSubClassOf(:B :C)\n");
        CHECK(derive_dashed(*l.graph, std::vector<char>(l.graph->size(), 1)).empty());
    }
    SUBCASE("chain with a hidden middle") {
        const auto l = load_axioms("SubClassOf(:A :B)\nSubClassOf(:B :C)\n");
        const auto& g = *l.graph;
        const auto dashed = derive_dashed(g, only(g, {"A", "C"}));
        CHECK(dashed == std::vector<DashedEdge>{{at(g, "A"), at(g, "C")}});
    }
    SUBCASE("diamond with one intact path") {
        const auto l = load_axioms("SubClassOf(:D :B)\nSubClassOf(:D :C)\nSubClassOf(:B :A)\nSubClassOf(:C :A)\n");
        const auto& g = *l.graph;
        const auto vis = only(g, {"A", "B", "D"});
        CHECK(derive_dashed(g, vis).empty());
        CHECK(brute_dashed(g, vis).empty());
    }
    SUBCASE("random DAGs against path enumeration") {
        std::mt19937_64 rng(5);
        for (std::uint64_t seed = 1; seed <= 40; ++seed) {
            const auto dag = ontoview::testing::random_dag(seed, 18, 3);
            const auto l = load_text(ontoview::testing::dag_document(dag));
            const auto& g = *l.graph;
            for (int round = 0; round < 10; ++round) {
                std::vector<char> vis(g.size(), 0);
                for (auto& v : vis) {
                    v = std::bernoulli_distribution(0.4)(rng) ? 1 : 0;
                }
                vis[OntoGraph::kThing] = 1;
                CHECK(derive_dashed(g, vis) == brute_dashed(g, vis));
            }
        }
    }
}

TEST_CASE("visible ratio") {
    const auto l = load_axioms(
        "SubClassOf(:B :A)\nSubClassOf(:C :A)\nSubClassOf(:D :B)\nSubClassOf(:E :B)\nSubClassOf(:F :C)\n"
        "SubClassOf(:G :C)\nSubClassOf(:H :G)\n");
    const auto& g = *l.graph;
    const std::vector<char> all(g.size(), 1);
    CHECK(visible_ratio(g, all, at(g, "H")) == VisibleRatio{0, 0});
    CHECK(visible_ratio(g, all, at(g, "A")) == VisibleRatio{7, 7});
    CHECK(visible_ratio(g, only(g, {"A", "D"}), at(g, "A")) == VisibleRatio{1, 7});

    const auto ten = load_axioms(kTen);
    auto state = ten.explorer->initial_state();
    ten.explorer->set_step(state, 20);
    ten.explorer->expand(state, at(*ten.graph, "R"), Direction::Descendants);
    CHECK(visible_ratio(*ten.graph, state.visible, at(*ten.graph, "R")) == VisibleRatio{2, 10});
}

TEST_CASE("expand") {
    SUBCASE("step of 20% over ten descendants") {
        const auto l = load_axioms(kTen);
        auto s = l.explorer->initial_state();
        l.explorer->set_step(s, 20);
        const auto c = l.explorer->expand(s, at(*l.graph, "R"), Direction::Descendants);
        CHECK(c.revealed.size() == 2);
        CHECK(c.hidden.empty());
        const auto again = l.explorer->expand(s, at(*l.graph, "R"), Direction::Descendants);
        CHECK(again.revealed.size() == 2);
    }
    SUBCASE("at least one node per step") {
        const auto l = load_axioms("SubClassOf(:Leaf :R)\n");
        auto s = l.explorer->initial_state();
        l.explorer->set_step(s, 10);
        const auto c = l.explorer->expand(s, at(*l.graph, "R"), Direction::Descendants);
        CHECK(c.revealed == std::vector<std::size_t>{at(*l.graph, "Leaf")});
        CHECK(l.explorer->expand(s, at(*l.graph, "R"), Direction::Descendants).noop());
    }
    SUBCASE("general-first fills levels in order") {
        const auto l = load_axioms("SubClassOf(:B :A)\nSubClassOf(:C :A)\nSubClassOf(:D :B)\nSubClassOf(:E :C)\n");
        const auto& g = *l.graph;
        auto s = l.explorer->initial_state();
        l.explorer->set_policy(s, Policy::GeneralFirst);
        l.explorer->set_step(s, 50);
        auto c = l.explorer->expand(s, at(g, "A"), Direction::Descendants);
        CHECK(c.revealed == std::vector<std::size_t>{at(g, "B"), at(g, "C")});
        c = l.explorer->expand(s, at(g, "A"), Direction::Descendants);
        CHECK(c.revealed == std::vector<std::size_t>{at(g, "D"), at(g, "E")});
    }
    SUBCASE("specific-first starts at the deepest level") {
        const auto l = load_axioms("SubClassOf(:B :A)\nSubClassOf(:C :A)\nSubClassOf(:D :B)\nSubClassOf(:E :C)\n");
        const auto& g = *l.graph;
        auto s = l.explorer->initial_state();
        l.explorer->set_policy(s, Policy::SpecificFirst);
        l.explorer->set_step(s, 50);
        const auto c = l.explorer->expand(s, at(g, "A"), Direction::Descendants);
        CHECK(c.revealed == std::vector<std::size_t>{at(g, "D"), at(g, "E")});
        CHECK(derive_dashed(g, s.visible).size() == 2);
    }
    SUBCASE("relevance picks by score across levels") {
        const auto l = load_axioms(kTen);
        const auto& g = *l.graph;
        auto s = l.explorer->initial_state();
        l.explorer->set_policy(s, Policy::Relevance);
        const auto order = l.explorer->policy_order(OntoGraph::kThing, Direction::Descendants, Policy::Relevance);
        for (std::size_t k = 1; k < order.size(); ++k) {
            CHECK(l.explorer->relevance().values[order[k - 1]] >= l.explorer->relevance().values[order[k]]);
        }
        CHECK(order.front() == at(g, "R"));
    }
    SUBCASE("ancestors") {
        const auto l = load_axioms("SubClassOf(:A :B)\nSubClassOf(:B :C)\nSubClassOf(:C :D)\n");
        const auto& g = *l.graph;
        auto s = l.explorer->initial_state();
        l.explorer->show_only(s, {at(g, "A")});
        l.explorer->set_step(s, 100);
        const auto c = l.explorer->expand(s, at(g, "A"), Direction::Ancestors);
        CHECK(c.revealed == std::vector<std::size_t>{at(g, "B"), at(g, "C"), at(g, "D")});
    }
    SUBCASE("hidden node is rejected") {
        const auto l = load_axioms(kTen);
        auto s = l.explorer->initial_state();
        CHECK_THROWS_AS(l.explorer->expand(s, at(*l.graph, "C01"), Direction::Descendants), ViewError);
    }
}

TEST_CASE("collapse") {
    SUBCASE("undoes the previous expansion") {
        const auto l = load_axioms(kTen);
        auto s = l.explorer->initial_state();
        l.explorer->set_step(s, 20);
        const auto before = s.visible;
        l.explorer->expand(s, at(*l.graph, "R"), Direction::Descendants);
        l.explorer->collapse(s, at(*l.graph, "R"), Direction::Descendants);
        CHECK(s.visible == before);
    }
    SUBCASE("fully collapsed node") {
        const auto l = load_axioms(kTen);
        auto s = l.explorer->initial_state();
        CHECK(l.explorer->collapse(s, at(*l.graph, "R"), Direction::Descendants).noop());
    }
    SUBCASE("without a matching expansion hides in reverse policy order") {
        const auto l = load_axioms("SubClassOf(:B :A)\nSubClassOf(:C :A)\nSubClassOf(:D :B)\nSubClassOf(:E :C)\n");
        const auto& g = *l.graph;
        auto s = l.explorer->initial_state();
        l.explorer->show_only(s, {at(g, "A"), at(g, "B"), at(g, "C"), at(g, "D"), at(g, "E")});
        l.explorer->set_policy(s, Policy::GeneralFirst);
        l.explorer->set_step(s, 50);
        const auto c = l.explorer->collapse(s, at(g, "A"), Direction::Descendants);
        CHECK(c.hidden == std::vector<std::size_t>{at(g, "D"), at(g, "E")});
    }
    SUBCASE("ancestors with other visible descendants stay") {
        // X and Y both under P; P under Q.
        const auto l = load_axioms("SubClassOf(:X :P)\nSubClassOf(:Y :P)\nSubClassOf(:P :Q)\n");
        const auto& g = *l.graph;
        auto s = l.explorer->initial_state();
        l.explorer->show_only(s, {at(g, "X"), at(g, "Y"), at(g, "P"), at(g, "Q")});
        l.explorer->set_step(s, 100);
        const auto c = l.explorer->collapse(s, at(g, "X"), Direction::Ancestors);
        CHECK(s.visible[at(g, "P")]);
        CHECK(s.visible[at(g, "Q")]);
        CHECK(s.visible[OntoGraph::kThing]);
        CHECK(c.noop());
        l.explorer->show_only(s, {at(g, "X"), at(g, "P"), at(g, "Q")});
        l.explorer->collapse(s, at(g, "X"), Direction::Ancestors);
        CHECK(s.visible == only(g, {"X"}));
    }
}

TEST_CASE("slider") {
    const auto l = load_text(ontoview::testing::read_fixture("pizza.ofn"));
    const auto& g = *l.graph;
    auto s = l.explorer->initial_state();
    l.explorer->set_slider(s, OntoGraph::kThing, 0);
    CHECK(count(s.visible) == 1);
    l.explorer->set_slider(s, OntoGraph::kThing, 100);
    CHECK(count(s.visible) == g.size());
    l.explorer->set_slider(s, OntoGraph::kThing, 5);
    const auto five = s.visible;
    l.explorer->set_slider(s, OntoGraph::kThing, 15);
    const auto fifteen = s.visible;
    CHECK(count(fifteen) > count(five));
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK((!five[i] || fifteen[i]));
    }
    std::vector<char> prev(g.size(), 0);
    for (int p = 0; p <= 100; p += 5) {
        l.explorer->set_slider(s, OntoGraph::kThing, p);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK((!prev[i] || s.visible[i]));
        }
        prev = s.visible;
    }
    CHECK(s.sliders.at(OntoGraph::kThing) == 100);
    CHECK_THROWS_AS(l.explorer->set_slider(s, OntoGraph::kThing, 101), ViewError);
}

TEST_CASE("search") {
    const auto l = load_text(ontoview::testing::read_fixture("pizza.ofn"));
    const auto& g = *l.graph;
    const auto hits = search(g, "pizza");
    CHECK(std::find(hits.begin(), hits.end(), at(g, "MargheritaPizza")) != hits.end());
    const auto anon = search(g, "hasTopping some Spicy");
    REQUIRE_FALSE(anon.empty());
    CHECK(g.nodes[anon.front()].kind == NodeKind::Anonymous);
    CHECK(g.nodes[anon.front()].label == "hasTopping some Spicy");
    // Equivalent to Pizza through the domain of hasBase, so it is found on the Pizza node.
    CHECK(search(g, "hasBase some PizzaBase") == std::vector<std::size_t>{at(g, "Pizza")});
    CHECK(search(g, "no such thing anywhere").empty());
    CHECK(search(g, "").empty());
    // Earlier match positions first.
    for (std::size_t k = 1; k < hits.size(); ++k) {
        auto pos = [&](std::size_t v) {
            std::vector<std::string> texts = g.nodes[v].labels;
            texts.push_back(g.nodes[v].label);
            texts.insert(texts.end(), g.nodes[v].equivalents.begin(), g.nodes[v].equivalents.end());
            std::size_t best = std::string::npos;
            for (auto t : texts) {
                std::transform(t.begin(), t.end(), t.begin(), ::tolower);
                best = std::min(best, t.find("pizza"));
            }
            return best;
        };
        CHECK(pos(hits[k - 1]) <= pos(hits[k]));
    }
}

TEST_CASE("search reaches rdfs labels") {
    const auto l = load_axioms(
        "Declaration(Class(:Q1))\nAnnotationAssertion(rdfs:label :Q1 \"Quattro Formaggi\")\n");
    const auto hits = search(*l.graph, "formaggi");
    CHECK(hits == std::vector<std::size_t>{at(*l.graph, "Q1")});
}

TEST_CASE("view documents") {
    const auto l = load_text(ontoview::testing::read_fixture("pizza.ofn"));
    const auto& g = *l.graph;
    SUBCASE("default state") {
        const auto s = l.explorer->initial_state();
        CHECK(load_view(save_view(s, g), g) == s);
    }
    SUBCASE("overrides, slider, markers and expansion") {
        auto s = l.explorer->initial_state();
        l.explorer->set_slider(s, OntoGraph::kThing, 40);
        l.explorer->set_policy(s, Policy::SpecificFirst);
        s.position_overrides[at(g, "Pizza")] = {123.25, 77.5};
        s.zoom = 1.75;
        s.selection = at(g, "Pizza");
        s.markers[at(g, "Pizza")] = {true, true};
        l.explorer->set_step(s, 33.3);
        l.explorer->expand(s, at(g, "Pizza"), Direction::Descendants);
        s.window = {ClassExpression::named(Iri("http://example.org/pizza#Pizza")),
                    ClassExpression::nothing()};
        REQUIRE(s.last_expansion.has_value());
        const auto doc = save_view(s, g);
        CHECK(load_view(doc, g) == s);
        CHECK(load_view(nlohmann::json::parse(doc.dump(2)), g) == s);
    }
    SUBCASE("unknown ids are listed") {
        auto doc = save_view(l.explorer->initial_state(), g);
        doc["visible"].push_back("n0000000000000000");
        doc["markers"]["nffffffffffffffff"] = {{"disjoint", true}, {"properties", false}};
        try {
            load_view(doc, g);
            FAIL("expected an error");
        } catch (const ViewDocumentError& e) {
            CHECK(e.unknown_ids == std::vector<std::string>{"n0000000000000000", "nffffffffffffffff"});
            CHECK(std::string(e.what()).find("n0000000000000000") != std::string::npos);
        }
    }
    SUBCASE("version and format") {
        auto doc = save_view(l.explorer->initial_state(), g);
        doc["version"] = 2;
        CHECK_THROWS_WITH_AS(load_view(doc, g), doctest::Contains("version 2"), ViewDocumentError);
        doc["format"] = "other";
        CHECK_THROWS_AS(load_view(doc, g), ViewDocumentError);
        CHECK_THROWS_AS(load_view(nlohmann::json::array(), g), ViewDocumentError);
    }
    SUBCASE("ids survive a reload of the same ontology") {
        auto s = l.explorer->initial_state();
        l.explorer->set_slider(s, OntoGraph::kThing, 30);
        const auto again = load_text(ontoview::testing::read_fixture("pizza.ofn"));
        CHECK(load_view(save_view(s, g), *again.graph) == s);
    }
}

TEST_CASE("rebinding onto a narrower window keeps surviving nodes") {
    const auto l = load_text(ontoview::testing::read_fixture("pizza.ofn"));
    const auto& g = *l.graph;
    auto s = l.explorer->initial_state();
    l.explorer->set_slider(s, OntoGraph::kThing, 100);
    const DetailWindow w{ClassExpression::named(Iri("http://example.org/pizza#Pizza")),
                         ClassExpression::nothing()};
    const auto narrow = l.document->build(w);
    const auto r = rebind(s, g, narrow);
    CHECK(r.visible.size() == narrow.size());
    for (std::size_t i = 0; i < narrow.size(); ++i) {
        CHECK(r.visible[i]);
    }
}

TEST_CASE("svg export") {
    const auto l = load_text(ontoview::testing::read_fixture("pizza.ofn"));
    const auto& g = *l.graph;
    auto node_shapes = [](const std::string& svg) {
        std::size_t n = 0;
        for (std::size_t p = svg.find("class=\"node "); p != std::string::npos; p = svg.find("class=\"node ", p + 1)) {
            ++n;
        }
        return n;
    };
    SUBCASE("Thing alone") {
        auto s = l.explorer->initial_state();
        l.explorer->set_slider(s, OntoGraph::kThing, 0);
        const auto svg = export_svg(*l.explorer, s, layout_view(*l.explorer, s));
        CHECK(node_shapes(svg) == 1);
        CHECK(svg.rfind("<?xml", 0) == 0);
    }
    SUBCASE("byte identical exports") {
        auto s = l.explorer->initial_state();
        l.explorer->set_slider(s, OntoGraph::kThing, 60);
        s.markers[at(g, "Pizza")] = {true, true};
        s.selection = at(g, "Pizza");
        const auto a = export_svg(*l.explorer, s, layout_view(*l.explorer, s));
        const auto b = export_svg(*l.explorer, s, layout_view(*l.explorer, s));
        CHECK(a == b);
        CHECK(node_shapes(a) == count(s.visible));
        CHECK(a.find("#f08c1e") != std::string::npos);
    }
    SUBCASE("kinds, dashed and disjoint connectors") {
        auto s = l.explorer->initial_state();
        l.explorer->set_slider(s, OntoGraph::kThing, 100);
        // Hide middle nodes until an indirect connector appears.
        for (std::size_t v = 1; v < g.size() && derive_dashed(g, s.visible).empty(); ++v) {
            s.visible[v] = 0;
        }
        const auto layout = layout_view(*l.explorer, s);
        REQUIRE_FALSE(layout.dashed.empty());
        s.markers[at(g, "PizzaBase")] = {true, false};
        const auto svg = export_svg(*l.explorer, s, layout);
        CHECK(svg.find("class=\"dashed\"") != std::string::npos);
        CHECK(svg.find("stroke-dasharray=\"6 4\"") != std::string::npos);
        CHECK(svg.find("class=\"disjoint\"") != std::string::npos);
        CHECK(svg.find("class=\"node anonymous\"") != std::string::npos);
        CHECK(svg.find("class=\"band\"") != std::string::npos);
        CHECK(svg.find("class=\"level\"") != std::string::npos);
        CHECK(export_dot(*l.explorer, layout).find("style=dashed") != std::string::npos);
    }
    SUBCASE("isA connectors point leftward") {
        auto s = l.explorer->initial_state();
        l.explorer->set_slider(s, OntoGraph::kThing, 100);
        const auto layout = layout_view(*l.explorer, s);
        for (const auto& [c, p] : layout.isa) {
            CHECK(layout.geometry.boxes[layout.slot(p)].x < layout.geometry.boxes[layout.slot(c)].x);
        }
    }
    SUBCASE("dragged nodes keep their position") {
        auto s = l.explorer->initial_state();
        const auto dragged = g.children(OntoGraph::kThing).front();
        s.position_overrides[dragged] = {500, 600};
        const auto layout = layout_view(*l.explorer, s);
        const auto& box = layout.geometry.boxes[layout.slot(dragged)];
        CHECK(box.x == 500);
        CHECK(box.y == 600);
        CHECK(layout.geometry.height >= 600 + box.height);
    }
}

namespace {

/// Invariants every view must keep.
void fuzz(const Loaded& l, std::uint64_t seed, std::size_t steps) {
    const auto report = ontoview::testing::fuzz_view(*l.document, *l.explorer, seed, steps);
    for (const auto& m : report.messages) {
        MESSAGE(m);
    }
    CHECK(report.steps == steps);
    CHECK(report.violations == 0);
}

}  // namespace

TEST_CASE("randomized view operations keep the invariants") {
    SUBCASE("pizza") {
        fuzz(load_text(ontoview::testing::read_fixture("pizza.ofn")), 17, 1000);
    }
    SUBCASE("random ontologies") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto o = ontoview::testing::random_ontology(seed);
            fuzz(load_text(serialize_document(o)), seed, 200);
        }
    }
}
