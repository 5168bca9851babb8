#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontoview/functional_syntax.hpp"
#include "ontoview/graph_builder.hpp"
#include "ontoview/reasoner.hpp"

namespace ontoview {

/**
 * A parsed and classified ontology. The reasoner has every harvested
 * expression registered, so graph builds for any detail window reuse it.
 * Immutable; share it between sessions through shared_ptr<const Document>.
 */
class Document {
public:
    /// Throws InconsistentOntologyError.
    explicit Document(Ontology ontology);

    const Ontology& ontology() const noexcept { return ontology_; }
    std::span<const ClassExpression> harvested() const noexcept { return harvested_; }
    const Reasoner& reasoner() const noexcept { return reasoner_; }
    const Taxonomy& taxonomy() const noexcept { return taxonomy_; }
    double classify_ms() const noexcept { return classify_ms_; }

    /// Throws InvalidWindowError.
    OntoGraph build(const DetailWindow& window = {}) const;

private:
    Ontology ontology_;
    std::vector<ClassExpression> harvested_;
    double classify_ms_ = 0;
    Reasoner reasoner_;
    Taxonomy taxonomy_;
};

struct LoadResult {
    std::shared_ptr<const Document> document;
    std::vector<ParseError> errors;
    /// Set when parsing succeeded but the ontology is inconsistent.
    std::string failure;
    double parse_ms = 0;
    bool ok() const noexcept { return document != nullptr; }
};

LoadResult load_document(std::string_view text);
LoadResult load_file(const std::string& path);

}  // namespace ontoview
