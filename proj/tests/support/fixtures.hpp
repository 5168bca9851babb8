#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ontoview/functional_syntax.hpp"

namespace ontoview::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
    return std::filesystem::path(ONTOVIEW_FIXTURE_DIR) / name;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) {
        throw std::runtime_error("missing fixture " + name);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline Ontology load_fixture(const std::string& name) {
    auto result = parse_document(read_fixture(name));
    if (!result.ok()) {
        throw std::runtime_error("fixture " + name + " failed to parse: " + to_string(result.errors.front()));
    }
    return std::move(*result.ontology);
}

}  // namespace ontoview::testing
