#pragma once

#include "irmia/model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace irmia {

using StatePair = std::pair<StateId, StateId>;

struct RefinementCounterexample {
    StatePair pair;       // (impl state, spec state)
    int clause = 0;       // 1..6
    std::string action;   // offending action name ("tau" possible, empty for clause 1)
};

struct RefinementVerdict {
    bool holds = false;
    std::vector<StatePair> witness;  // largest relation, sorted; filled when holds
    std::optional<RefinementCounterexample> counterexample;
};

// Returns the first clause (2..6) violated by (p, q) against relation `rel`,
// or 0. `rel` is indexed p * |Q| + q. Clause 1 is checked by the caller.
struct ClauseCheck {
    int clause = 0;
    ActionId action = 0;
};
ClauseCheck check_refinement_clauses(const IrMia& impl, const IrMia& spec, StateId p, StateId q,
                                     const std::vector<char>& rel);

// Throws std::invalid_argument on alphabet mismatch.
RefinementVerdict refines(const IrMia& impl, const IrMia& spec);

}  // namespace irmia
