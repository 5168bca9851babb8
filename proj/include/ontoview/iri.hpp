#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace ontoview {

/// Absolute IRI. Construction validates that a scheme is present.
class Iri {
public:
    Iri() = default;
    explicit Iri(std::string value);

    const std::string& str() const noexcept { return value_; }
    bool empty() const noexcept { return value_.empty(); }

    /// Fragment after '#', else the last path segment, else the whole string.
    std::string_view local_name() const noexcept;

    auto operator<=>(const Iri&) const = default;
    bool operator==(const Iri&) const = default;

private:
    std::string value_;
};

/// True if `text` starts with `scheme ":"` per RFC 3987 and has no whitespace.
bool is_absolute_iri(std::string_view text) noexcept;

namespace vocab {
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

const Iri& owl_thing();
const Iri& owl_nothing();
const Iri& rdfs_label();
}  // namespace vocab

/// Prefix name (including the trailing ':', e.g. "pizza:" or ":") to namespace IRI.
class PrefixTable {
public:
    /// Adds the four standard prefixes (owl, rdf, rdfs, xsd).
    static PrefixTable with_standard_prefixes();

    /// Returns false if `name` is already bound to a different namespace.
    bool add(std::string name, std::string ns);
    std::optional<std::string> lookup(std::string_view name) const;

    /// Expands "pfx:local"; nullopt when the prefix is unbound.
    std::optional<Iri> expand(std::string_view prefixed) const;

    /// Shortest "pfx:local" form whose local part needs no escaping, if any.
    std::optional<std::string> abbreviate(const Iri& iri) const;

    const std::map<std::string, std::string>& mappings() const noexcept { return map_; }

    bool operator==(const PrefixTable&) const = default;

private:
    std::map<std::string, std::string> map_;
};

}  // namespace ontoview

template <>
struct std::hash<ontoview::Iri> {
    std::size_t operator()(const ontoview::Iri& iri) const noexcept {
        return std::hash<std::string>{}(iri.str());
    }
};
