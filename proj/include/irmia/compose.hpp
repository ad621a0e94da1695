#pragma once

#include "irmia/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace irmia {

enum class CompositionMode { Multicast, Hiding };

struct Composability {
    bool ok = false;
    std::string reason;
};
Composability composable(const IrMia& a, const IrMia& b, CompositionMode mode);

struct Product {
    IrMia automaton;
    // Operand states of every product state; the product failure state maps to
    // the operand failure states.
    std::vector<std::pair<StateId, StateId>> components;
};

// Reachable part of the product plus its failure state. Throws std::invalid_argument
// when the operands are not composable, and InvalidAutomaton when the hiding
// product contains a tau cycle.
Product parallel_product(const IrMia& a, const IrMia& b, CompositionMode mode);

enum class PruneReason { NewError1, NewError2, NewError3, NewError4, ErrorClosure, InputEdgeRemoval, Unreachable };
std::string to_string(PruneReason r);

struct PruneEntry {
    std::string state;
    PruneReason reason;
    std::string action;  // triggering action, empty when not applicable
};

struct IllegalStates {
    std::vector<StateId> states;  // product state ids, discovery order
    std::vector<PruneEntry> entries;
};
IllegalStates illegal_states(const Product& prod, const IrMia& a, const IrMia& b);

struct CompositionResult {
    IrMia automaton;
    bool compatible = true;
    std::vector<PruneEntry> pruning_report;
    CompositionMode mode = CompositionMode::Multicast;
};
// Throws std::invalid_argument when not composable; with hiding, InvalidAutomaton
// when a tau cycle survives pruning.
CompositionResult parallel_compose(const IrMia& a, const IrMia& b, CompositionMode mode);

// Relabels the given outputs to tau. Throws std::invalid_argument for labels that
// are not outputs and InvalidAutomaton when hiding closes a tau cycle.
IrMia hide(const IrMia& a, const std::vector<std::string>& labels);

std::vector<std::string> common_actions(const IrMia& a, const IrMia& b);

}  // namespace irmia
