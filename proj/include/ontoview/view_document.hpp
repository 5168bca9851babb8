#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ontoview/view_state.hpp"

namespace ontoview {

inline constexpr int kViewFormatVersion = 1;

class ViewDocumentError : public std::runtime_error {
public:
    ViewDocumentError(const std::string& message, std::vector<std::string> unknown_ids = {})
        : std::runtime_error(message), unknown_ids(std::move(unknown_ids)) {}
    std::vector<std::string> unknown_ids;
};

/**
 * Versioned JSON view document:
 *   {"format": "ontoview-view", "version": 1, "visible": [ids], "step": 25,
 *    "policy": "auto" | "relevance" | "general-first" | "specific-first",
 *    "zoom": 1, "window": {"upper": expr, "lower": expr},
 *    "positions": {id: [x, y]}, "selection": id | null,
 *    "markers": {id: {"disjoint": b, "properties": b}}, "sliders": {id: percent},
 *    "last_expansion": {"node": id, "direction": d, "revealed": [ids]} | null}
 * Nodes are named by their stable ids; expressions are written with full IRIs.
 */
nlohmann::json save_view(const ViewState& state, const OntoGraph& graph);

/// Detail window of a view document, so the caller can build the matching graph first.
DetailWindow view_window(const nlohmann::json& doc);

/// Throws ViewDocumentError on a wrong format or version, malformed fields, or ids missing from `graph`.
ViewState load_view(const nlohmann::json& doc, const OntoGraph& graph);

}  // namespace ontoview
