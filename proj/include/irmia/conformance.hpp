#pragma once

#include "irmia/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace irmia {

using SuspensionTrace = std::vector<std::string>;

// Determinised may-suspension automaton. Macro-state 0 is the initial closure.
struct SuspensionAutomaton {
    std::vector<std::string> symbols;  // sorted action names, then delta, phi
    std::vector<StateSet> macro;
    std::vector<std::vector<std::optional<std::size_t>>> next;  // [macro][symbol]
    std::vector<OutSet> out_may;
    std::vector<OutSet> out_must;
};

SuspensionAutomaton suspension_automaton(const IrMia& a);

// Symbol order used for exploration and tie-breaking.
std::vector<std::string> suspension_symbols(const IrMia& a);

struct ConformanceVerdict {
    bool holds = true;
    SuspensionTrace trace;    // counterexample when !holds
    int condition = 0;        // 1: may-output inclusion, 2: must-output inclusion
    std::string observation;  // offending output name, "delta" or "phi"
};

struct ConformanceOptions {
    bool assume_enabled = false;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// First violated condition for one pair of after-sets, or nullopt. The
// implementation's failure state discharges every mandatory obligation.
struct ObservationMismatch {
    int condition;
    std::string observation;
};
std::optional<ObservationMismatch> compare_observations(const IrMia& impl, const StateSet& mi, const IrMia& spec,
                                                        const StateSet& ms, bool check_must);

ConformanceVerdict irioco(const IrMia& impl, const IrMia& spec, ConformanceOptions opt = {});
ConformanceVerdict ioco_may(const IrMia& impl, const IrMia& spec, ConformanceOptions opt = {});

std::string render_trace(const SuspensionTrace& t);
// "!o" for outputs, plain "delta"/"phi".
std::string render_observation(const std::string& obs);

// Spec augmented with a fresh must-quiescent tau successor at every state whose
// outputs are all optional.
IrMia build_unifying_spec(const IrMia& s);

}  // namespace irmia
