#include "ontoview/document.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace ontoview {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Document::Document(Ontology ontology)
    : ontology_(std::move(ontology)),
      harvested_(harvest_expressions(ontology_)),
      reasoner_([this] {
          const auto start = std::chrono::steady_clock::now();
          Reasoner r(ontology_, harvested_);
          classify_ms_ = ms_since(start);
          return r;
      }()) {
    const auto start = std::chrono::steady_clock::now();
    taxonomy_ = classify(reasoner_);
    classify_ms_ += ms_since(start);
}

OntoGraph Document::build(const DetailWindow& window) const {
    return build_graph(ontology_, taxonomy_, harvested_, window, reasoner_);
}

LoadResult load_document(std::string_view text) {
    LoadResult out;
    const auto start = std::chrono::steady_clock::now();
    auto parsed = parse_document(text);
    out.parse_ms = ms_since(start);
    if (!parsed.ok()) {
        out.errors = std::move(parsed.errors);
        return out;
    }
    try {
        out.document = std::make_shared<const Document>(std::move(*parsed.ontology));
    } catch (const InconsistentOntologyError& e) {
        out.failure = e.what();
    }
    return out;
}

LoadResult load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        LoadResult out;
        out.failure = "cannot open " + path;
        return out;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return load_document(text.str());
}

}  // namespace ontoview
