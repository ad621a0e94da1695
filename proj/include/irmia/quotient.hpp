#pragma once

#include "irmia/model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace irmia {

// Violated requirements for dividing p by d; empty when the pair is admissible.
std::vector<std::string> quotient_pair_check(const IrMia& p, const IrMia& d);

struct PseudoQuotient {
    IrMia automaton;
    std::vector<std::pair<StateId, StateId>> components;
};

// Throws std::invalid_argument when quotient_pair_check reports anything.
PseudoQuotient pseudo_quotient(const IrMia& p, const IrMia& d);

struct ImpossibleEntry {
    std::string state;
    std::string rule;    // "G1", "G2" or "G3"
    std::string action;
};

struct ImpossibleStates {
    std::vector<StateId> states;  // discovery order
    std::vector<ImpossibleEntry> entries;
};
ImpossibleStates impossible_states(const PseudoQuotient& pq, const IrMia& p, const IrMia& d);

struct QuotientResult {
    bool defined = false;
    std::optional<IrMia> automaton;
    std::vector<ImpossibleEntry> impossible;
    std::vector<std::string> precondition_report;
};
QuotientResult quotient(const IrMia& p, const IrMia& d);

}  // namespace irmia
