#include "ontoview/iri.hpp"

#include <cctype>
#include <stdexcept>

namespace ontoview {

bool is_absolute_iri(std::string_view text) noexcept {
    if (text.empty() || !std::isalpha(static_cast<unsigned char>(text.front()))) {
        return false;
    }
    std::size_t i = 1;
    while (i < text.size()) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (c == ':') {
            break;
        }
        if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') {
            return false;
        }
        ++i;
    }
    if (i >= text.size()) {
        return false;
    }
    for (const char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '>' || c == '"') {
            return false;
        }
    }
    return true;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
    if (!is_absolute_iri(value_)) {
        throw std::invalid_argument("not an absolute IRI: '" + value_ + "'");
    }
}

std::string_view Iri::local_name() const noexcept {
    const std::string_view v = value_;
    if (const auto hash = v.rfind('#'); hash != std::string_view::npos && hash + 1 < v.size()) {
        return v.substr(hash + 1);
    }
    if (const auto slash = v.rfind('/'); slash != std::string_view::npos && slash + 1 < v.size()) {
        return v.substr(slash + 1);
    }
    if (const auto colon = v.rfind(':'); colon != std::string_view::npos && colon + 1 < v.size()) {
        return v.substr(colon + 1);
    }
    return v;
}

namespace vocab {
const Iri& owl_thing() {
    static const Iri iri(std::string(kOwl) + "Thing");
    return iri;
}
const Iri& owl_nothing() {
    static const Iri iri(std::string(kOwl) + "Nothing");
    return iri;
}
const Iri& rdfs_label() {
    static const Iri iri(std::string(kRdfs) + "label");
    return iri;
}
}  // namespace vocab

PrefixTable PrefixTable::with_standard_prefixes() {
    PrefixTable table;
    table.add("owl:", std::string(vocab::kOwl));
    table.add("rdf:", std::string(vocab::kRdf));
    table.add("rdfs:", std::string(vocab::kRdfs));
    table.add("xsd:", std::string(vocab::kXsd));
    return table;
}

bool PrefixTable::add(std::string name, std::string ns) {
    auto [it, inserted] = map_.try_emplace(std::move(name), ns);
    return inserted || it->second == ns;
}

std::optional<std::string> PrefixTable::lookup(std::string_view name) const {
    if (auto it = map_.find(std::string(name)); it != map_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::optional<Iri> PrefixTable::expand(std::string_view prefixed) const {
    const auto colon = prefixed.find(':');
    if (colon == std::string_view::npos) {
        return std::nullopt;
    }
    auto ns = lookup(prefixed.substr(0, colon + 1));
    if (!ns) {
        return std::nullopt;
    }
    std::string full = *ns;
    full.append(prefixed.substr(colon + 1));
    if (!is_absolute_iri(full)) {
        return std::nullopt;
    }
    return Iri(std::move(full));
}

namespace {
bool simple_local(std::string_view local) {
    if (local.empty()) {
        return false;
    }
    if (!std::isalpha(static_cast<unsigned char>(local.front())) && local.front() != '_') {
        return false;
    }
    for (const char c : local) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
            return false;
        }
    }
    return true;
}
}  // namespace

std::optional<std::string> PrefixTable::abbreviate(const Iri& iri) const {
    std::optional<std::string> best;
    for (const auto& [name, ns] : map_) {
        if (iri.str().size() <= ns.size() || iri.str().compare(0, ns.size(), ns) != 0) {
            continue;
        }
        const std::string_view local = std::string_view(iri.str()).substr(ns.size());
        if (!simple_local(local)) {
            continue;
        }
        std::string candidate = name + std::string(local);
        if (!best || candidate.size() < best->size()) {
            best = std::move(candidate);
        }
    }
    return best;
}

}  // namespace ontoview
