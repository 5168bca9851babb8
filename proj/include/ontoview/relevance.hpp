#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ontoview/onto_graph.hpp"

namespace ontoview {

struct RelevanceScore {
    std::vector<double> values;
    /// Nodes a scorer does not rank (KCE skips anonymous nodes) are never summary candidates.
    std::vector<char> scored;
};

struct PageRankOptions {
    double damping = 0.85;
    double epsilon = 1e-10;
    std::size_t max_iterations = 100000;
};

/// Power iteration over `edges` (from, to); undirected adds every edge in both
/// directions. Dangling mass is spread uniformly. Stops once the largest
/// per-node change is below epsilon; scores sum to 1.
RelevanceScore pagerank(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges, bool directed,
                        const PageRankOptions& options = {});

/// Links run child → parent along isA edges.
RelevanceScore pagerank(const OntoGraph& graph, bool directed, const PageRankOptions& options = {});

struct KceWeights {
    double density = 0.4;
    double coverage = 0.4;
    double simplicity = 0.2;
};

/// Words in a label split on camel case, digits and the delimiters `_`, `-`, space.
std::size_t label_tokens(std::string_view label);

/// density·w_d + coverage·w_c + nameSimplicity·w_s over named nodes other than
/// Thing and Nothing (Thing is part of every summary anyway).
///   density    (direct subclasses + properties + instances) / maximum over scored nodes
///   coverage   leaves among the node and its descendants / all leaves
///   simplicity 1 / label_tokens(label)
RelevanceScore kce_scores(const OntoGraph& graph, const KceWeights& weights = {});

struct SummaryRequest {
    std::string method;
    std::size_t n = 20;
    /// Node indices, for method "custom".
    std::vector<std::size_t> custom;
};

/// Top-n ranked nodes plus every node tied with the n-th (relative tolerance 1e-9),
/// always including Thing; "custom" returns custom ∪ {Thing}. Sorted indices.
std::vector<std::size_t> summarize(const OntoGraph& graph, const SummaryRequest& request, const RelevanceScore& scores);

struct RelevanceConfig {
    PageRankOptions pagerank;
    KceWeights kce;
};

using Scorer = std::function<RelevanceScore(const OntoGraph&)>;

/// Scorers by method name; "kce", "pagerank" and "rdfrank" are registered by default.
class ScorerRegistry {
public:
    explicit ScorerRegistry(const RelevanceConfig& config = {});

    void add(std::string name, Scorer scorer);
    bool contains(const std::string& name) const { return scorers_.contains(name); }
    RelevanceScore score(const std::string& name, const OntoGraph& graph) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, Scorer> scorers_;
};

}  // namespace ontoview
