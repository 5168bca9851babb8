#include "ontoview/functional_syntax.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace ontoview {

std::string to_string(const ParseError& error) {
    std::ostringstream out;
    out << error.line << ':' << error.column << ": " << error.message;
    if (!error.token.empty()) {
        out << " (at '" << error.token << "')";
    }
    return out.str();
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { LParen, RParen, Equals, FullIri, PrefixedName, Identifier, Integer, Literal, BlankNode, End };

struct Token {
    Tok kind = Tok::End;
    std::string lexeme;
    /// IRI body for FullIri, decoded string for Literal.
    std::string value;
    std::size_t offset = 0;
    std::size_t end = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

bool name_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-' || c == '.' || c == ':' || c == '%' || u >= 0x80;
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run(std::vector<ParseError>& errors) {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token tok;
            tok.offset = pos_;
            tok.line = line_;
            tok.column = column_;
            if (pos_ >= text_.size()) {
                tok.kind = Tok::End;
                tok.end = pos_;
                out.push_back(std::move(tok));
                return out;
            }
            const char c = text_[pos_];
            if (c == '(' || c == ')' || c == '=') {
                tok.kind = c == '(' ? Tok::LParen : c == ')' ? Tok::RParen : Tok::Equals;
                tok.lexeme = std::string(1, c);
                advance();
            } else if (c == '<') {
                if (!lex_iri(tok, errors)) {
                    continue;
                }
            } else if (c == '"') {
                if (!lex_literal(tok, errors)) {
                    continue;
                }
            } else if (name_char(c)) {
                const std::size_t start = pos_;
                while (pos_ < text_.size() && name_char(text_[pos_])) {
                    advance();
                }
                // A trailing '.' never belongs to a name.
                while (pos_ > start + 1 && text_[pos_ - 1] == '.') {
                    --pos_;
                    --column_;
                }
                tok.lexeme = std::string(text_.substr(start, pos_ - start));
                if (tok.lexeme.starts_with("_:")) {
                    tok.kind = Tok::BlankNode;
                } else if (tok.lexeme.find(':') != std::string::npos) {
                    tok.kind = Tok::PrefixedName;
                } else if (std::all_of(tok.lexeme.begin(), tok.lexeme.end(),
                                       [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
                    tok.kind = Tok::Integer;
                } else {
                    tok.kind = Tok::Identifier;
                }
            } else {
                errors.push_back({line_, column_, "unexpected character", std::string(1, c)});
                advance();
                continue;
            }
            tok.end = pos_;
            out.push_back(std::move(tok));
        }
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    bool lex_iri(Token& tok, std::vector<ParseError>& errors) {
        const std::size_t start = pos_;
        const std::size_t line = line_;
        const std::size_t column = column_;
        advance();
        while (pos_ < text_.size() && text_[pos_] != '>' && text_[pos_] != '\n') {
            advance();
        }
        if (pos_ >= text_.size() || text_[pos_] != '>') {
            errors.push_back({line, column, "unterminated IRI", std::string(text_.substr(start, pos_ - start))});
            return false;
        }
        advance();
        tok.kind = Tok::FullIri;
        tok.lexeme = std::string(text_.substr(start, pos_ - start));
        tok.value = tok.lexeme.substr(1, tok.lexeme.size() - 2);
        return true;
    }

    bool lex_literal(Token& tok, std::vector<ParseError>& errors) {
        const std::size_t start = pos_;
        const std::size_t line = line_;
        const std::size_t column = column_;
        advance();
        std::string value;
        bool closed = false;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\\' && pos_ + 1 < text_.size()) {
                value.push_back(text_[pos_ + 1]);
                advance();
                advance();
                continue;
            }
            advance();
            if (c == '"') {
                closed = true;
                break;
            }
            value.push_back(c);
        }
        if (!closed) {
            errors.push_back({line, column, "unterminated string literal", "\""});
            return false;
        }
        // Language tag or datatype suffix stays part of the lexeme.
        if (pos_ < text_.size() && text_[pos_] == '@') {
            advance();
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
                advance();
            }
        } else if (pos_ + 1 < text_.size() && text_[pos_] == '^' && text_[pos_ + 1] == '^') {
            advance();
            advance();
            if (pos_ < text_.size() && text_[pos_] == '<') {
                while (pos_ < text_.size() && text_[pos_] != '>') {
                    advance();
                }
                if (pos_ < text_.size()) {
                    advance();
                }
            } else {
                while (pos_ < text_.size() && name_char(text_[pos_])) {
                    advance();
                }
            }
        }
        tok.kind = Tok::Literal;
        tok.lexeme = std::string(text_.substr(start, pos_ - start));
        tok.value = std::move(value);
        return true;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

struct SyntaxError {
    ParseError error;
};

/// A recognized construct this engine does not model; the enclosing axiom is skipped.
struct Unsupported {
    std::string what;
};

const std::set<std::string, std::less<>> kKnownAxioms = {
    "Declaration", "SubClassOf", "EquivalentClasses", "DisjointClasses", "DisjointUnion",
    "SubObjectPropertyOf", "EquivalentObjectProperties", "DisjointObjectProperties",
    "InverseObjectProperties", "ObjectPropertyDomain", "ObjectPropertyRange", "FunctionalObjectProperty",
    "InverseFunctionalObjectProperty", "ReflexiveObjectProperty", "IrreflexiveObjectProperty",
    "SymmetricObjectProperty", "AsymmetricObjectProperty", "TransitiveObjectProperty", "SubDataPropertyOf",
    "EquivalentDataProperties", "DisjointDataProperties", "DataPropertyDomain", "DataPropertyRange",
    "FunctionalDataProperty", "DatatypeDefinition", "HasKey", "SameIndividual", "DifferentIndividuals",
    "ClassAssertion", "ObjectPropertyAssertion", "NegativeObjectPropertyAssertion", "DataPropertyAssertion",
    "NegativeDataPropertyAssertion", "AnnotationAssertion", "SubAnnotationPropertyOf",
    "AnnotationPropertyDomain", "AnnotationPropertyRange",
};

const std::set<std::string, std::less<>> kUnsupportedClassConstructors = {
    "ObjectOneOf", "ObjectHasValue", "ObjectHasSelf", "DataSomeValuesFrom", "DataAllValuesFrom",
    "DataHasValue", "DataMinCardinality", "DataMaxCardinality", "DataExactCardinality",
};

class Parser {
public:
    Parser(std::string_view text, std::vector<Token> tokens, PrefixTable prefixes)
        : text_(text), tokens_(std::move(tokens)), prefixes_(std::move(prefixes)) {}

    std::vector<ParseError> errors;

    Ontology parse_document() {
        Ontology onto;
        while (is_identifier("Prefix")) {
            guarded([&] { parse_prefix(); });
        }
        onto.prefixes = prefixes_;
        if (!is_identifier("Ontology")) {
            error_here("expected 'Ontology'");
            return onto;
        }
        next();
        if (!expect_or_record(Tok::LParen, "'(' after Ontology")) {
            return onto;
        }
        if (peek().kind == Tok::FullIri || peek().kind == Tok::PrefixedName) {
            guarded([&] { onto.iri = entity(); });
            if (peek().kind == Tok::FullIri || peek().kind == Tok::PrefixedName) {
                guarded([&] { onto.version_iri = entity(); });
            }
        }
        while (true) {
            const Token& tok = peek();
            if (tok.kind == Tok::RParen) {
                next();
                break;
            }
            if (tok.kind == Tok::End) {
                const bool reported = !errors.empty() && errors.back().line == tok.line &&
                                      errors.back().column == tok.column;
                if (!reported) {
                    error_at(tok, "expected ')' closing Ontology but found end of input");
                }
                return onto;
            }
            if (tok.kind != Tok::Identifier) {
                error_at(tok, "expected an axiom");
                next();
                continue;
            }
            if (tok.lexeme == "Ontology") {
                error_at(tok, "duplicate Ontology header");
                skip_construct();
                continue;
            }
            if (tok.lexeme == "Import") {
                guarded([&] {
                    next();
                    expect(Tok::LParen, "'('");
                    onto.imports.push_back(entity());
                    expect(Tok::RParen, "')'");
                });
                continue;
            }
            if (tok.lexeme == "Annotation") {
                const std::size_t start = tok.offset;
                skip_construct();
                onto.annotations.emplace_back(text_.substr(start, previous().end - start));
                continue;
            }
            if (!kKnownAxioms.contains(tok.lexeme)) {
                error_at(tok, "unknown axiom kind '" + tok.lexeme + "'");
                skip_construct();
                continue;
            }
            parse_axiom(onto);
        }
        if (peek().kind != Tok::End) {
            if (is_identifier("Ontology")) {
                error_at(peek(), "duplicate Ontology header");
            } else {
                error_at(peek(), "unexpected content after the ontology");
            }
        }
        return onto;
    }

    ClassExpression parse_single_expression() {
        ClassExpression ce = class_expression();
        if (peek().kind != Tok::End) {
            fail(peek(), "unexpected content after class expression");
        }
        return ce;
    }

    template <class F>
    bool guarded(F&& f) {
        try {
            f();
            return true;
        } catch (const SyntaxError& e) {
            errors.push_back(e.error);
            return false;
        } catch (const Unsupported& u) {
            errors.push_back({peek().line, peek().column, "unsupported construct " + u.what, peek().lexeme});
            return false;
        }
    }

private:
    // -- token helpers ------------------------------------------------------
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    const Token& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }
    const Token& next() {
        const Token& tok = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) {
            ++pos_;
        }
        return tok;
    }
    bool is_identifier(std::string_view name) const {
        return peek().kind == Tok::Identifier && peek().lexeme == name;
    }

    static std::string describe(const Token& tok) {
        return tok.kind == Tok::End ? "end of input" : "'" + tok.lexeme + "'";
    }

    [[noreturn]] void fail(const Token& tok, std::string message) {
        throw SyntaxError{{tok.line, tok.column, std::move(message), tok.kind == Tok::End ? "" : tok.lexeme}};
    }

    void error_at(const Token& tok, std::string message) {
        errors.push_back({tok.line, tok.column, std::move(message), tok.kind == Tok::End ? "" : tok.lexeme});
    }
    void error_here(std::string message) { error_at(peek(), std::move(message) + " but found " + describe(peek())); }

    void expect(Tok kind, std::string_view what) {
        if (peek().kind != kind) {
            fail(peek(), "expected " + std::string(what) + " but found " + describe(peek()));
        }
        next();
    }

    bool expect_or_record(Tok kind, std::string_view what) {
        if (peek().kind != kind) {
            error_here("expected " + std::string(what));
            return false;
        }
        next();
        return true;
    }

    /// Skips an `Identifier ( ... )` construct with balanced parentheses.
    void skip_construct() {
        if (peek().kind == Tok::Identifier) {
            next();
        }
        if (peek().kind != Tok::LParen) {
            return;
        }
        int depth = 0;
        do {
            const Token& tok = next();
            if (tok.kind == Tok::LParen) {
                ++depth;
            } else if (tok.kind == Tok::RParen) {
                --depth;
            } else if (tok.kind == Tok::End) {
                return;
            }
        } while (depth > 0);
    }

    /// After an error inside the axiom that started at token `start`, moves past its closing ')'.
    void resync(std::size_t start) {
        pos_ = start;
        skip_construct();
    }

    // -- grammar ------------------------------------------------------------
    void parse_prefix() {
        next();
        expect(Tok::LParen, "'(' after Prefix");
        const Token& name = peek();
        if (name.kind != Tok::PrefixedName || name.lexeme.back() != ':' ||
            name.lexeme.find(':') != name.lexeme.size() - 1) {
            fail(name, "expected a prefix name ending in ':'");
        }
        next();
        expect(Tok::Equals, "'='");
        const Token& iri = peek();
        if (iri.kind != Tok::FullIri) {
            fail(iri, "expected a full IRI in angle brackets but found " + describe(iri));
        }
        next();
        if (!prefixes_.add(name.lexeme, iri.value)) {
            fail(name, "prefix '" + name.lexeme + "' is already bound to a different IRI");
        }
        expect(Tok::RParen, "')'");
    }

    Iri entity() {
        const Token& tok = peek();
        if (tok.kind == Tok::FullIri) {
            next();
            if (!is_absolute_iri(tok.value)) {
                fail(tok, "not an absolute IRI");
            }
            return Iri(tok.value);
        }
        if (tok.kind == Tok::PrefixedName) {
            next();
            const auto colon = tok.lexeme.find(':');
            if (!prefixes_.lookup(std::string_view(tok.lexeme).substr(0, colon + 1))) {
                fail(tok, "unresolvable prefix '" + tok.lexeme.substr(0, colon + 1) + "'");
            }
            auto iri = prefixes_.expand(tok.lexeme);
            if (!iri) {
                fail(tok, "prefixed name does not expand to an absolute IRI");
            }
            return *iri;
        }
        fail(tok, "expected an IRI but found " + describe(tok));
    }

    Iri individual() {
        if (peek().kind == Tok::BlankNode) {
            throw Unsupported{"anonymous individual"};
        }
        return entity();
    }

    Iri object_property() {
        if (is_identifier("ObjectInverseOf")) {
            throw Unsupported{"ObjectInverseOf"};
        }
        if (is_identifier("ObjectPropertyChain")) {
            throw Unsupported{"ObjectPropertyChain"};
        }
        return entity();
    }

    void skip_axiom_annotations() {
        while (is_identifier("Annotation")) {
            skip_construct();
        }
    }

    std::uint32_t cardinality() {
        const Token& tok = peek();
        if (tok.kind != Tok::Integer) {
            fail(tok, "expected a non-negative integer but found " + describe(tok));
        }
        std::uint32_t n = 0;
        const auto [ptr, ec] = std::from_chars(tok.lexeme.data(), tok.lexeme.data() + tok.lexeme.size(), n);
        if (ec != std::errc{}) {
            fail(tok, "cardinality out of range");
        }
        next();
        return n;
    }

    ClassExpression class_expression() {
        const Token& tok = peek();
        if (tok.kind == Tok::FullIri || tok.kind == Tok::PrefixedName) {
            return ClassExpression::named(entity());
        }
        if (tok.kind != Tok::Identifier) {
            fail(tok, "expected a class expression but found " + describe(tok));
        }
        const std::string name = tok.lexeme;
        if (kUnsupportedClassConstructors.contains(name)) {
            throw Unsupported{name};
        }
        next();
        expect(Tok::LParen, "'(' after " + name);
        ClassExpression result;
        if (name == "ObjectIntersectionOf" || name == "ObjectUnionOf") {
            std::vector<ClassExpression> ops;
            ops.push_back(class_expression());
            do {
                ops.push_back(class_expression());
            } while (peek().kind != Tok::RParen);
            result = name == "ObjectIntersectionOf" ? ClassExpression::conjunction(std::move(ops))
                                                    : ClassExpression::disjunction(std::move(ops));
        } else if (name == "ObjectComplementOf") {
            result = ClassExpression::complement(class_expression());
        } else if (name == "ObjectSomeValuesFrom" || name == "ObjectAllValuesFrom") {
            Iri role = object_property();
            ClassExpression filler = class_expression();
            result = name == "ObjectSomeValuesFrom" ? ClassExpression::some(std::move(role), std::move(filler))
                                                    : ClassExpression::only(std::move(role), std::move(filler));
        } else if (name == "ObjectMinCardinality" || name == "ObjectMaxCardinality" ||
                   name == "ObjectExactCardinality") {
            const std::uint32_t n = cardinality();
            Iri role = object_property();
            ClassExpression filler =
                peek().kind == Tok::RParen ? ClassExpression::thing() : class_expression();
            if (name == "ObjectMinCardinality") {
                result = ClassExpression::min_card(n, std::move(role), std::move(filler));
            } else if (name == "ObjectMaxCardinality") {
                result = ClassExpression::max_card(n, std::move(role), std::move(filler));
            } else {
                result = ClassExpression::exact_card(n, std::move(role), std::move(filler));
            }
        } else {
            fail(tok, "unknown class expression constructor '" + name + "'");
        }
        expect(Tok::RParen, "')' closing " + name);
        return result;
    }

    std::vector<ClassExpression> class_expression_list(std::size_t minimum) {
        std::vector<ClassExpression> out;
        while (peek().kind != Tok::RParen) {
            out.push_back(class_expression());
        }
        if (out.size() < minimum) {
            fail(peek(), "expected at least " + std::to_string(minimum) + " class expressions");
        }
        return out;
    }

    Datatype data_range() {
        const Token& tok = peek();
        if (tok.kind == Tok::FullIri || tok.kind == Tok::PrefixedName) {
            return Datatype{entity().str()};
        }
        if (tok.kind != Tok::Identifier) {
            fail(tok, "expected a data range but found " + describe(tok));
        }
        // Complex data range: keep a whitespace-normalized copy of its tokens.
        std::string text;
        int depth = 0;
        do {
            const Token& t = next();
            if (t.kind == Tok::End) {
                fail(t, "unterminated data range");
            }
            if (t.kind == Tok::RParen) {
                --depth;
            } else if (!text.empty() && text.back() != '(') {
                text.push_back(' ');
            }
            text += t.lexeme;
            if (t.kind == Tok::LParen) {
                ++depth;
            }
        } while (depth > 0);
        return Datatype{std::move(text)};
    }

    std::optional<Axiom> axiom_body(const std::string& kind) {
        if (kind == "Declaration") {
            const Token& tok = peek();
            if (tok.kind != Tok::Identifier) {
                fail(tok, "expected an entity type but found " + describe(tok));
            }
            static const std::pair<std::string_view, EntityKind> kEntities[] = {
                {"Class", EntityKind::Class},
                {"ObjectProperty", EntityKind::ObjectProperty},
                {"DataProperty", EntityKind::DataProperty},
                {"AnnotationProperty", EntityKind::AnnotationProperty},
                {"NamedIndividual", EntityKind::NamedIndividual},
                {"Datatype", EntityKind::Datatype},
            };
            const auto* found = std::find_if(std::begin(kEntities), std::end(kEntities),
                                             [&](const auto& e) { return e.first == tok.lexeme; });
            if (found == std::end(kEntities)) {
                fail(tok, "unknown entity type '" + tok.lexeme + "'");
            }
            next();
            expect(Tok::LParen, "'('");
            Iri iri = entity();
            expect(Tok::RParen, "')'");
            return Declaration{found->second, std::move(iri)};
        }
        if (kind == "SubClassOf") {
            ClassExpression sub = class_expression();
            ClassExpression sup = class_expression();
            return SubClassOf{std::move(sub), std::move(sup)};
        }
        if (kind == "EquivalentClasses") {
            return EquivalentClasses{class_expression_list(2)};
        }
        if (kind == "DisjointClasses") {
            return DisjointClasses{class_expression_list(2)};
        }
        if (kind == "ObjectPropertyDomain" || kind == "ObjectPropertyRange") {
            Iri prop = object_property();
            ClassExpression ce = class_expression();
            if (kind == "ObjectPropertyDomain") {
                return PropertyDomain{std::move(prop), false, std::move(ce)};
            }
            return PropertyRange{std::move(prop), false, std::move(ce)};
        }
        if (kind == "DataPropertyDomain") {
            Iri prop = entity();
            return PropertyDomain{std::move(prop), true, class_expression()};
        }
        if (kind == "DataPropertyRange") {
            Iri prop = entity();
            return PropertyRange{std::move(prop), true, data_range()};
        }
        if (kind == "SubObjectPropertyOf") {
            Iri sub = object_property();
            Iri sup = object_property();
            return SubPropertyOf{std::move(sub), std::move(sup)};
        }
        if (kind == "FunctionalObjectProperty") {
            return PropertyCharacteristic{object_property(), PropertyTrait::Functional, std::nullopt};
        }
        if (kind == "TransitiveObjectProperty") {
            return PropertyCharacteristic{object_property(), PropertyTrait::Transitive, std::nullopt};
        }
        if (kind == "InverseObjectProperties") {
            Iri a = object_property();
            Iri b = object_property();
            return PropertyCharacteristic{std::move(a), PropertyTrait::InverseOf, std::move(b)};
        }
        if (kind == "ClassAssertion") {
            ClassExpression type = class_expression();
            return ClassAssertion{individual(), std::move(type)};
        }
        if (kind == "ObjectPropertyAssertion") {
            Iri prop = object_property();
            Iri subject = individual();
            Iri object = individual();
            return PropertyAssertion{std::move(prop), std::move(subject), std::move(object)};
        }
        if (kind == "AnnotationAssertion") {
            Iri prop = entity();
            if (prop != vocab::rdfs_label()) {
                return std::nullopt;
            }
            if (peek().kind == Tok::BlankNode) {
                return std::nullopt;
            }
            Iri subject = entity();
            const Token& value = peek();
            if (value.kind != Tok::Literal) {
                return std::nullopt;
            }
            next();
            std::string lang;
            if (const auto at = value.lexeme.rfind("\"@"); at != std::string::npos) {
                lang = value.lexeme.substr(at + 2);
            }
            return LabelAnnotation{std::move(subject), value.value, std::move(lang)};
        }
        return std::nullopt;
    }

    void parse_axiom(Ontology& onto) {
        const std::size_t start = pos_;
        const Token head = next();
        try {
            expect(Tok::LParen, "'(' after " + head.lexeme);
            skip_axiom_annotations();
            std::optional<Axiom> axiom = axiom_body(head.lexeme);
            if (!axiom) {
                record_skip(onto, head, start);
                return;
            }
            expect(Tok::RParen, "')' closing " + head.lexeme);
            onto.add(std::move(*axiom));
        } catch (const SyntaxError& e) {
            errors.push_back(e.error);
            resync(start);
        } catch (const Unsupported&) {
            record_skip(onto, head, start);
        }
    }

    void record_skip(Ontology& onto, const Token& head, std::size_t start) {
        resync(start);
        const std::size_t end = previous().end;
        onto.add_skip({head.lexeme, head.line, head.column, std::string(text_.substr(head.offset, end - head.offset))});
    }

    std::string_view text_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    PrefixTable prefixes_;
};

// ---------------------------------------------------------------------------
// Writer

std::string write_iri(const Iri& iri, const PrefixTable* prefixes) {
    if (prefixes != nullptr) {
        if (auto abbrev = prefixes->abbreviate(iri)) {
            return *abbrev;
        }
    }
    return "<" + iri.str() + ">";
}

void write_expression(std::string& out, const ClassExpression& ce, const PrefixTable* prefixes) {
    switch (ce.kind()) {
    case ExprKind::Thing:
    case ExprKind::Nothing:
    case ExprKind::Atomic:
        out += write_iri(ce.iri(), prefixes);
        return;
    case ExprKind::And:
    case ExprKind::Or:
        out += functional_name(ce.kind());
        out += '(';
        for (std::size_t i = 0; i < ce.operands().size(); ++i) {
            if (i > 0) {
                out += ' ';
            }
            write_expression(out, ce.operands()[i], prefixes);
        }
        out += ')';
        return;
    case ExprKind::Not:
        out += "ObjectComplementOf(";
        write_expression(out, ce.operand(), prefixes);
        out += ')';
        return;
    case ExprKind::Exists:
    case ExprKind::ForAll:
        out += functional_name(ce.kind());
        out += '(';
        out += write_iri(ce.role(), prefixes);
        out += ' ';
        write_expression(out, ce.filler(), prefixes);
        out += ')';
        return;
    case ExprKind::MinCard:
    case ExprKind::MaxCard:
    case ExprKind::ExactCard:
        out += functional_name(ce.kind());
        out += '(';
        out += std::to_string(ce.cardinality());
        out += ' ';
        out += write_iri(ce.role(), prefixes);
        out += ' ';
        write_expression(out, ce.filler(), prefixes);
        out += ')';
        return;
    }
}

std::string escape_literal(std::string_view text) {
    std::string out;
    for (const char c : text) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    return out;
}

std::string_view entity_keyword(EntityKind kind) {
    switch (kind) {
    case EntityKind::Class:
        return "Class";
    case EntityKind::ObjectProperty:
        return "ObjectProperty";
    case EntityKind::DataProperty:
        return "DataProperty";
    case EntityKind::AnnotationProperty:
        return "AnnotationProperty";
    case EntityKind::NamedIndividual:
        return "NamedIndividual";
    case EntityKind::Datatype:
        return "Datatype";
    }
    return {};
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string write_axiom(const Axiom& axiom, const PrefixTable& p) {
    std::string out = axiom_kind_name(axiom);
    out += '(';
    auto ce = [&](const ClassExpression& e) {
        std::string s;
        write_expression(s, e, &p);
        return s;
    };
    auto list = [&](const std::vector<ClassExpression>& members) {
        std::string s;
        for (std::size_t i = 0; i < members.size(); ++i) {
            s += (i > 0 ? " " : "") + ce(members[i]);
        }
        // A member list that collapsed to one entry still needs two operands.
        if (members.size() == 1) {
            s += " " + s;
        }
        return s;
    };
    auto iri = [&](const Iri& i) { return write_iri(i, &p); };
    out += std::visit(
        overloaded{
            [&](const SubClassOf& a) { return ce(a.sub) + " " + ce(a.sup); },
            [&](const EquivalentClasses& a) { return list(a.members); },
            [&](const DisjointClasses& a) { return list(a.members); },
            [&](const PropertyDomain& a) { return iri(a.property) + " " + ce(a.domain); },
            [&](const PropertyRange& a) {
                std::string r;
                if (const auto* e = std::get_if<ClassExpression>(&a.range)) {
                    r = ce(*e);
                } else {
                    const auto& name = std::get<Datatype>(a.range).name;
                    r = is_absolute_iri(name) ? iri(Iri(name)) : name;
                }
                return iri(a.property) + " " + r;
            },
            [&](const SubPropertyOf& a) { return iri(a.sub) + " " + iri(a.sup); },
            [&](const ClassAssertion& a) { return ce(a.type) + " " + iri(a.individual); },
            [&](const PropertyCharacteristic& a) {
                return a.inverse ? iri(a.property) + " " + iri(*a.inverse) : iri(a.property);
            },
            [&](const Declaration& a) {
                return std::string(entity_keyword(a.entity)) + "(" + iri(a.iri) + ")";
            },
            [&](const PropertyAssertion& a) {
                return iri(a.property) + " " + iri(a.subject) + " " + iri(a.object);
            },
            [&](const LabelAnnotation& a) {
                std::string s = iri(vocab::rdfs_label()) + " " + iri(a.subject) + " \"" + escape_literal(a.text) + "\"";
                if (!a.language.empty()) {
                    s += "@" + a.language;
                }
                return s;
            },
        },
        axiom);
    out += ')';
    return out;
}

}  // namespace

ParseResult parse_document(std::string_view text) {
    ParseResult result;
    std::vector<Token> tokens = Lexer(text).run(result.errors);
    Parser parser(text, std::move(tokens), PrefixTable::with_standard_prefixes());
    Ontology onto = parser.parse_document();
    result.errors.insert(result.errors.end(), parser.errors.begin(), parser.errors.end());
    std::stable_sort(result.errors.begin(), result.errors.end(), [](const ParseError& a, const ParseError& b) {
        return std::tie(a.line, a.column) < std::tie(b.line, b.column);
    });
    if (result.errors.empty()) {
        result.ontology = std::move(onto);
    }
    return result;
}

std::optional<ClassExpression> parse_class_expression(std::string_view text, const PrefixTable& prefixes,
                                                      std::vector<ParseError>* errors) {
    std::vector<ParseError> local;
    std::vector<Token> tokens = Lexer(text).run(local);
    Parser parser(text, std::move(tokens), prefixes);
    std::optional<ClassExpression> out;
    if (local.empty()) {
        parser.guarded([&] { out = parser.parse_single_expression(); });
    }
    local.insert(local.end(), parser.errors.begin(), parser.errors.end());
    if (!local.empty()) {
        out.reset();
    }
    if (errors != nullptr) {
        *errors = std::move(local);
    }
    return out;
}

std::string to_functional(const ClassExpression& ce, const PrefixTable* prefixes) {
    std::string out;
    write_expression(out, ce, prefixes);
    return out;
}

std::string serialize_document(const Ontology& onto) {
    std::string out;
    for (const auto& [name, ns] : onto.prefixes.mappings()) {
        out += "Prefix(" + name + "=<" + ns + ">)\n";
    }
    out += "Ontology(";
    if (onto.iri) {
        out += "<" + onto.iri->str() + ">";
        if (onto.version_iri) {
            out += " <" + onto.version_iri->str() + ">";
        }
    }
    out += '\n';
    for (const auto& imp : onto.imports) {
        out += "Import(<" + imp.str() + ">)\n";
    }
    for (const auto& annotation : onto.annotations) {
        out += annotation + "\n";
    }
    for (const auto& axiom : onto.axioms()) {
        out += write_axiom(axiom, onto.prefixes) + "\n";
    }
    for (const auto& skip : onto.skipped()) {
        out += skip.text + "\n";
    }
    out += ")\n";
    return out;
}

void write_skip_log(const Ontology& ontology, std::ostream& out) {
    for (const auto& skip : ontology.skipped()) {
        out << "SKIP " << skip.kind << ' ' << skip.line << ':' << skip.column << '\n';
    }
}

std::string display_datatype(const Datatype& datatype) {
    if (!is_absolute_iri(datatype.name)) {
        return datatype.name;
    }
    static const PrefixTable standard = PrefixTable::with_standard_prefixes();
    if (auto abbrev = standard.abbreviate(Iri(datatype.name))) {
        return *abbrev;
    }
    return datatype.name;
}

}  // namespace ontoview
