#include "irmia/conformance.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace irmia {

std::vector<std::string> suspension_symbols(const IrMia& a) {
    std::vector<std::string> s = a.alphabet().inputs;
    s.insert(s.end(), a.alphabet().outputs.begin(), a.alphabet().outputs.end());
    std::sort(s.begin(), s.end());
    s.push_back(kDeltaName);
    s.push_back(kPhiName);
    return s;
}

SuspensionAutomaton suspension_automaton(const IrMia& a) {
    SuspensionAutomaton sa;
    sa.symbols = suspension_symbols(a);
    std::map<StateSet, std::size_t> index;
    auto intern = [&](StateSet m) {
        auto [it, fresh] = index.emplace(m, sa.macro.size());
        if (fresh) {
            sa.macro.push_back(std::move(m));
            sa.next.emplace_back(sa.symbols.size());
            sa.out_may.push_back(out_set(a, sa.macro.back(), Gamma::May));
            sa.out_must.push_back(out_set(a, sa.macro.back(), Gamma::Must));
        }
        return it->second;
    };
    intern(a.closure(a.initial(), Gamma::May));
    for (std::size_t k = 0; k < sa.macro.size(); ++k) {
        for (std::size_t x = 0; x < sa.symbols.size(); ++x) {
            StateSet t = after_symbol(a, sa.macro[k], sa.symbols[x], Gamma::May);
            if (t.empty()) continue;
            std::size_t id = intern(std::move(t));
            sa.next[k][x] = id;
        }
    }
    return sa;
}

std::optional<ObservationMismatch> compare_observations(const IrMia& impl, const StateSet& mi, const IrMia& spec,
                                                        const StateSet& ms, bool check_must) {
    if (mi.empty() || ms.empty()) return std::nullopt;
    // a missing mandatory output is reported before an extra optional one on the same trace
    if (check_must && !std::binary_search(mi.begin(), mi.end(), impl.failure())) {
        OutSet ri = out_set(impl, mi, Gamma::Must);
        OutSet rs = out_set(spec, ms, Gamma::Must);
        for (const auto& x : rs)
            if (std::find(ri.begin(), ri.end(), x) == ri.end()) return ObservationMismatch{2, x};
    }
    OutSet oi = out_set(impl, mi, Gamma::May);
    OutSet os = out_set(spec, ms, Gamma::May);
    for (const auto& x : oi)
        if (std::find(os.begin(), os.end(), x) == os.end()) return ObservationMismatch{1, x};
    return std::nullopt;
}

namespace {

void check_preconditions(const IrMia& impl, const IrMia& spec, ConformanceOptions opt) {
    if (!impl.alphabet().same_sets(spec.alphabet()))
        throw PreconditionError("implementation and specification must share input and output alphabets");
    if (!opt.assume_enabled && !input_enabledness(impl).weak_may)
        throw PreconditionError("implementation '" + impl.name() + "' is not weak may-input-enabled");
}

ConformanceVerdict explore(const IrMia& impl, const IrMia& spec, bool check_must) {
    std::vector<std::string> symbols = suspension_symbols(spec);
    std::map<std::pair<StateSet, StateSet>, std::size_t> seen;
    struct Node {
        StateSet mi, ms;
        std::size_t parent;
        std::size_t symbol;
    };
    std::vector<Node> nodes;
    auto trace_of = [&](std::size_t k) {
        SuspensionTrace t;
        while (k != 0) {
            t.push_back(symbols[nodes[k].symbol]);
            k = nodes[k].parent;
        }
        std::reverse(t.begin(), t.end());
        return t;
    };
    StateSet mi0 = impl.closure(impl.initial(), Gamma::May);
    StateSet ms0 = spec.closure(spec.initial(), Gamma::May);
    seen[{mi0, ms0}] = 0;
    nodes.push_back({mi0, ms0, 0, 0});
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (auto bad = compare_observations(impl, nodes[k].mi, spec, nodes[k].ms, check_must)) {
            ConformanceVerdict v;
            v.holds = false;
            v.trace = trace_of(k);
            v.condition = bad->condition;
            v.observation = bad->observation;
            return v;
        }
        for (std::size_t x = 0; x < symbols.size(); ++x) {
            StateSet mi = after_symbol(impl, nodes[k].mi, symbols[x], Gamma::May);
            if (mi.empty()) continue;
            StateSet ms = after_symbol(spec, nodes[k].ms, symbols[x], Gamma::May);
            if (ms.empty()) continue;
            auto key = std::make_pair(mi, ms);
            if (seen.count(key)) continue;
            seen.emplace(key, nodes.size());
            nodes.push_back({std::move(mi), std::move(ms), k, x});
        }
    }
    return {};
}

}  // namespace

ConformanceVerdict irioco(const IrMia& impl, const IrMia& spec, ConformanceOptions opt) {
    check_preconditions(impl, spec, opt);
    return explore(impl, spec, true);
}

ConformanceVerdict ioco_may(const IrMia& impl, const IrMia& spec, ConformanceOptions opt) {
    check_preconditions(impl, spec, opt);
    return explore(impl, spec, false);
}

std::string render_trace(const SuspensionTrace& t) {
    std::string r;
    for (std::size_t k = 0; k < t.size(); ++k) r += (k ? "·" : "") + t[k];
    return r;
}

std::string render_observation(const std::string& obs) {
    if (obs == kDeltaName || obs == kPhiName) return obs;
    return "!" + obs;
}

IrMia build_unifying_spec(const IrMia& s) {
    Description d = s.describe();
    for (StateId q = 0; q < s.num_states(); ++q) {
        if (q == s.failure()) continue;
        // only optional outputs, weakly; a mandatory tau would have to be matched by the quiet state
        if (!quiescent(s, q, Gamma::May) || quiescent(s, q, Gamma::Must)) continue;
        bool must_tau = false;
        for (auto k : s.out_edges(q))
            if (s.is_tau(s.edges()[k].action) && s.edges()[k].mod == Modality::Must) must_tau = true;
        if (must_tau) continue;
        std::string quiet = fresh_name(s.state_name(q) + "_quiet", d.states);
        d.states.push_back(quiet);
        d.edges.push_back({s.state_name(q), kTauName, quiet, Modality::MayOnly});
        for (auto k : s.out_edges(q)) {
            const Edge& e = s.edges()[k];
            if (s.is_input(e.action))
                d.edges.push_back({quiet, s.action_name(e.action), s.state_name(e.dst), e.mod});
        }
    }
    return IrMia(d);
}

}  // namespace irmia
