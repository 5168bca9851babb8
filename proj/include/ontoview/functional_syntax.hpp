#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoview/class_expression.hpp"
#include "ontoview/ontology.hpp"

namespace ontoview {

/// 1-based position of a problem in the source text.
struct ParseError {
    std::size_t line = 1;
    std::size_t column = 1;
    std::string message;
    std::string token;
    bool operator==(const ParseError&) const = default;
};

std::string to_string(const ParseError& error);

/// `ontology` is set iff `errors` is empty.
struct ParseResult {
    std::optional<Ontology> ontology;
    std::vector<ParseError> errors;
    bool ok() const noexcept { return ontology.has_value(); }
};

/**
 * Parses an OWL 2 Functional-Style Syntax document.
 *
 * Recognized axiom kinds outside the supported subset, and supported kinds
 * that use unsupported constructors, become skip records on the ontology
 * (their source text is kept). Parsing continues after an error by
 * resynchronizing at the end of the enclosing axiom, so every independent
 * error is reported.
 */
ParseResult parse_document(std::string_view text);

/// Inverse of parse_document up to axiom order and prefix spelling.
std::string serialize_document(const Ontology& ontology);

/// Writes one `SKIP <axiom-kind> <line>:<col>` line per skip record.
void write_skip_log(const Ontology& ontology, std::ostream& out);

/// Parses a single class expression; named classes may be prefixed names or full IRIs.
std::optional<ClassExpression> parse_class_expression(std::string_view text, const PrefixTable& prefixes,
                                                      std::vector<ParseError>* errors = nullptr);

/// Functional-syntax text of `ce`. With no prefix table all IRIs are written in full,
/// which gives the canonical string used for stable identifiers.
std::string to_functional(const ClassExpression& ce, const PrefixTable* prefixes = nullptr);

/// `xsd:string` style label for a datatype name.
std::string display_datatype(const Datatype& datatype);

}  // namespace ontoview
