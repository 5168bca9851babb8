#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ontoview/document.hpp"
#include "ontoview/view_state.hpp"

namespace ontoview::testing {

struct FuzzReport {
    std::size_t steps = 0;
    std::size_t violations = 0;
    /// The first few violations, for diagnostics.
    std::vector<std::string> messages;
};

/// Invariant violations of `s`: Thing visible, counters exact, dashed edges entailed.
std::vector<std::string> view_violations(const Document& doc, const Explorer& explorer, const ViewState& s);

/// Random expand/collapse/slider/step/policy/summary operations from the initial
/// state, checking the invariants and expand∘collapse identity after every step.
FuzzReport fuzz_view(const Document& doc, const Explorer& explorer, std::uint64_t seed, std::size_t steps);

}  // namespace ontoview::testing
