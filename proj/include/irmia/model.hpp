#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace irmia {

using StateId = std::size_t;
using ActionId = std::size_t;
using StateSet = std::vector<StateId>;  // always sorted, no duplicates

enum class Modality { Must, MayOnly };
enum class Gamma { May, Must };

inline const char* kTauName = "tau";
inline const char* kDeltaName = "delta";
inline const char* kPhiName = "phi";

struct ActionAlphabet {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    bool has_input(const std::string& a) const;
    bool has_output(const std::string& a) const;
    bool contains(const std::string& a) const { return has_input(a) || has_output(a); }
    bool same_sets(const ActionAlphabet& other) const;
};

// Unchecked automaton description as it comes from a file or a construction.
// Edge actions are names; "tau" is the internal action.
struct Description {
    struct RawEdge {
        std::string src;
        std::string action;
        std::string dst;
        Modality mod = Modality::Must;
    };
    std::string name = "A";
    ActionAlphabet alphabet;
    std::vector<std::string> states;
    std::string initial;
    std::string failure;
    std::vector<RawEdge> edges;
};

struct Violation {
    std::string rule;  // "clause 1".."clause 5", "convergence", "alphabet", "states", "edge"
    std::string message;
};

std::vector<Violation> validate(const Description& d);

class InvalidAutomaton : public std::runtime_error {
public:
    explicit InvalidAutomaton(std::vector<Violation> v);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

struct Edge {
    StateId src;
    ActionId action;
    StateId dst;
    Modality mod;
};

// Validated, immutable IR-MIA. Actions are numbered inputs first, then
// outputs, then tau as the last id.
class IrMia {
public:
    // Throws InvalidAutomaton listing every violation.
    explicit IrMia(const Description& d);

    const std::string& name() const { return name_; }
    const ActionAlphabet& alphabet() const { return alphabet_; }

    std::size_t num_states() const { return states_.size(); }
    const std::string& state_name(StateId s) const { return states_.at(s); }
    std::optional<StateId> find_state(const std::string& n) const;
    StateId state(const std::string& n) const;  // throws std::out_of_range
    StateId initial() const { return initial_; }
    StateId failure() const { return failure_; }

    std::size_t num_actions() const { return alphabet_.inputs.size() + alphabet_.outputs.size(); }
    ActionId tau() const { return num_actions(); }
    bool is_input(ActionId a) const { return a < alphabet_.inputs.size(); }
    bool is_output(ActionId a) const { return a >= alphabet_.inputs.size() && a < num_actions(); }
    bool is_tau(ActionId a) const { return a == tau(); }
    const std::string& action_name(ActionId a) const;
    std::optional<ActionId> find_action(const std::string& n) const;
    std::vector<ActionId> inputs() const;
    std::vector<ActionId> outputs() const;

    // Edges sorted by (src, action, dst).
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::size_t>& out_edges(StateId s) const { return out_.at(s); }
    const std::vector<std::size_t>& in_edges(StateId s) const { return in_.at(s); }

    static bool admits(Modality m, Gamma g) { return g == Gamma::May || m == Modality::Must; }

    // Strong step targets for action a under modality g.
    StateSet step(StateId s, ActionId a, Gamma g) const;
    bool enables(StateId s, ActionId a, Gamma g) const;
    std::optional<Modality> edge_modality(StateId s, ActionId a, StateId t) const;

    const StateSet& closure(StateId s, Gamma g) const;
    StateSet closure(const StateSet& set, Gamma g) const;
    // s =a=> with tau closures on both ends (a visible).
    StateSet weak_step(StateId s, ActionId a, Gamma g) const;
    // s -a-> then tau closure (used for inputs in refinement).
    StateSet step_then_closure(StateId s, ActionId a, Gamma g) const;

    Description describe() const;

private:
    void check_state(StateId s) const;

    std::string name_;
    ActionAlphabet alphabet_;
    std::vector<std::string> states_;
    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, ActionId> action_index_;
    StateId initial_ = 0;
    StateId failure_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
    std::vector<StateSet> closure_may_;
    std::vector<StateSet> closure_must_;
};

// Observation symbol: an output name, "delta" or "phi".
using OutSet = std::vector<std::string>;

std::vector<std::string> init_set(const IrMia& a, StateId s, Gamma g);
bool quiescent(const IrMia& a, StateId s, Gamma g);
bool failure_pred(const IrMia& a, StateId s, Gamma g);

// A suspension trace symbol is an action name, "delta" or "phi".
StateSet after(const IrMia& a, const StateSet& src, const std::vector<std::string>& trace, Gamma g);
StateSet after_symbol(const IrMia& a, const StateSet& src, const std::string& sym, Gamma g);
// Ordered: outputs in declaration order, then delta, then phi.
OutSet out_set(const IrMia& a, const StateSet& src, Gamma g);

struct Enabledness {
    bool weak_may = false;
    bool strong_may = false;
    bool weak_must = false;
    bool strong_must = false;
};
Enabledness input_enabledness(const IrMia& a);

// Throws std::invalid_argument when a state has a may-tau edge but no must-tau edge.
IrMia demonic_completion(const IrMia& a);

struct IsoResult {
    bool isomorphic = false;
    std::vector<StateId> mapping;  // state of a -> state of b
};
IsoResult isomorphic(const IrMia& a, const IrMia& b);

StateSet set_union(const StateSet& x, const StateSet& y);
std::string fresh_name(const std::string& base, const std::vector<std::string>& taken);

}  // namespace irmia
