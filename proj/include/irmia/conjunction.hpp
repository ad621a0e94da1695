#pragma once

#include "irmia/model.hpp"

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace irmia {

// Component index standing for an operand's demonic state.
inline constexpr StateId kDemonic = std::numeric_limits<StateId>::max();

struct ConjunctiveProduct {
    IrMia automaton;
    // Operand states per product state; kDemonic marks the demonic state. The
    // product failure state maps to the operand failure states.
    std::vector<std::pair<StateId, StateId>> components;
};

// Throws std::invalid_argument unless both operands have the same inputs and outputs.
ConjunctiveProduct conjunctive_product(const IrMia& a, const IrMia& b);

struct InconsistentEntry {
    std::string state;
    std::string rule;  // "F1".."F7"
    std::string action;
};

struct InconsistentStates {
    std::vector<StateId> states;  // discovery order
    std::vector<InconsistentEntry> entries;
};
InconsistentStates inconsistent_states(const ConjunctiveProduct& prod, const IrMia& a, const IrMia& b);

struct ConjunctionResult {
    bool defined = false;
    std::optional<IrMia> automaton;
    std::vector<InconsistentEntry> inconsistent;
};

// Optional edges into inconsistent states are dropped; an input left without
// any edge that way becomes a refusal.
ConjunctionResult conjoin(const IrMia& a, const IrMia& b);

}  // namespace irmia
