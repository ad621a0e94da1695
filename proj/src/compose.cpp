#include "irmia/compose.hpp"

#include "builder.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace irmia {

using detail::Graph;
using detail::has_name;
using detail::pair_name;

std::vector<std::string> common_actions(const IrMia& a, const IrMia& b) {
    std::vector<std::string> r;
    for (ActionId x = 0; x < a.num_actions(); ++x)
        if (b.alphabet().contains(a.action_name(x))) r.push_back(a.action_name(x));
    return r;
}

Composability composable(const IrMia& a, const IrMia& b, CompositionMode mode) {
    for (const auto& o : a.alphabet().outputs)
        if (b.alphabet().has_output(o)) return {false, "shared output '" + o + "'"};
    if (mode == CompositionMode::Hiding)
        for (const auto& i : a.alphabet().inputs)
            if (b.alphabet().has_input(i)) return {false, "shared input '" + i + "' not allowed with hiding"};
    return {true, ""};
}

std::string to_string(PruneReason r) {
    switch (r) {
        case PruneReason::NewError1: return "new-error-1";
        case PruneReason::NewError2: return "new-error-2";
        case PruneReason::NewError3: return "new-error-3";
        case PruneReason::NewError4: return "new-error-4";
        case PruneReason::ErrorClosure: return "error-closure";
        case PruneReason::InputEdgeRemoval: return "input-edge-removal";
        case PruneReason::Unreachable: return "unreachable";
    }
    return "?";
}

namespace {

ActionAlphabet product_alphabet(const IrMia& a, const IrMia& b, CompositionMode mode) {
    const auto& x = a.alphabet();
    const auto& y = b.alphabet();
    ActionAlphabet r;
    auto is_out = [&](const std::string& n) { return x.has_output(n) || y.has_output(n); };
    auto shared = [&](const std::string& n) { return x.contains(n) && y.contains(n); };
    for (const auto* src : {&x.inputs, &y.inputs})
        for (const auto& i : *src)
            if (!is_out(i) && !has_name(r.inputs, i)) r.inputs.push_back(i);
    for (const auto* src : {&x.outputs, &y.outputs})
        for (const auto& o : *src)
            if (!(mode == CompositionMode::Hiding && shared(o)) && !has_name(r.outputs, o)) r.outputs.push_back(o);
    return r;
}

struct RawProduct {
    Graph g;
    std::vector<std::pair<StateId, StateId>> comps;
    std::size_t failure = 0;
};

// Product graph over reachable pairs. Pairs with an operand failure state are
// kept as sinks so that redirection can find them later.
RawProduct build_product(const IrMia& a, const IrMia& b, CompositionMode mode) {
    RawProduct rp;
    std::map<std::pair<StateId, StateId>, std::size_t> index;
    std::deque<std::pair<StateId, StateId>> queue;
    auto intern = [&](StateId p, StateId q) {
        auto it = index.find({p, q});
        if (it != index.end()) return it->second;
        std::size_t id = rp.g.add_state(pair_name(a.state_name(p), b.state_name(q)));
        index[{p, q}] = id;
        rp.comps.push_back({p, q});
        queue.push_back({p, q});
        return id;
    };
    intern(a.initial(), b.initial());

    // name -> action id in the other operand, if shared
    auto shared_in = [](const IrMia& from, const IrMia& other, ActionId x) -> std::optional<ActionId> {
        if (from.is_tau(x)) return std::nullopt;
        return other.find_action(from.action_name(x));
    };
    std::vector<std::pair<std::size_t, std::pair<std::string, Modality>>> refusals;

    while (!queue.empty()) {
        auto [p, q] = queue.front();
        queue.pop_front();
        std::size_t src = index.at({p, q});
        if (p == a.failure() || q == b.failure()) continue;

        for (auto k : a.out_edges(p)) {
            const Edge& e = a.edges()[k];
            if (shared_in(a, b, e.action)) continue;
            rp.g.add_edge(src, a.action_name(e.action), intern(e.dst, q), e.mod);
        }
        for (auto k : b.out_edges(q)) {
            const Edge& e = b.edges()[k];
            if (shared_in(b, a, e.action)) continue;
            rp.g.add_edge(src, b.action_name(e.action), intern(p, e.dst), e.mod);
        }
        for (auto k : a.out_edges(p)) {
            const Edge& e1 = a.edges()[k];
            auto other = shared_in(a, b, e1.action);
            if (!other) continue;
            const std::string& name = a.action_name(e1.action);
            bool both_inputs = a.is_input(e1.action) && b.is_input(*other);
            for (auto j : b.out_edges(q)) {
                const Edge& e2 = b.edges()[j];
                if (e2.action != *other) continue;
                Modality m = e1.mod == Modality::Must && e2.mod == Modality::Must ? Modality::Must : Modality::MayOnly;
                if (both_inputs && (e1.dst == a.failure() || e2.dst == b.failure())) m = Modality::Must;
                std::string label = mode == CompositionMode::Hiding ? std::string(kTauName) : name;
                rp.g.add_edge(src, label, intern(e1.dst, e2.dst), m);
            }
        }
        // a refusal of a shared input propagates when the other side offers nothing
        auto propagate = [&](const IrMia& x, StateId s, const IrMia& y, StateId t) {
            for (auto k : x.out_edges(s)) {
                const Edge& e = x.edges()[k];
                if (!x.is_input(e.action) || e.dst != x.failure() || e.mod != Modality::Must) continue;
                auto other = y.find_action(x.action_name(e.action));
                if (!other || !y.is_input(*other) || y.enables(t, *other, Gamma::May)) continue;
                refusals.push_back({src, {x.action_name(e.action), Modality::Must}});
            }
        };
        propagate(a, p, b, q);
        propagate(b, q, a, p);
    }
    std::string fail_name = fresh_name("_PHI", rp.g.names());
    rp.failure = rp.g.add_state(fail_name);
    rp.comps.push_back({a.failure(), b.failure()});
    for (const auto& [src, lab] : refusals) rp.g.add_edge(src, lab.first, rp.failure, lab.second);
    return rp;
}

std::string product_name(const IrMia& a, const IrMia& b, CompositionMode mode) {
    return a.name() + (mode == CompositionMode::Hiding ? "|" : "||") + b.name();
}

}  // namespace

Product parallel_product(const IrMia& a, const IrMia& b, CompositionMode mode) {
    auto c = composable(a, b, mode);
    if (!c.ok) throw std::invalid_argument("operands not composable: " + c.reason);
    RawProduct rp = build_product(a, b, mode);
    std::vector<char> keep(rp.g.size(), 1);
    Description d =
        rp.g.to_description(product_name(a, b, mode), product_alphabet(a, b, mode), 0, rp.failure, keep);
    return Product{IrMia(d), rp.comps};
}

IllegalStates illegal_states(const Product& prod, const IrMia& a, const IrMia& b) {
    const IrMia& P = prod.automaton;
    IllegalStates r;
    std::vector<char> in_e(P.num_states(), 0);
    auto is_failure_pair = [&](StateId s) {
        auto [p, q] = prod.components[s];
        return s == P.failure() || p == a.failure() || q == b.failure();
    };
    auto refuses_to_fail = [](const IrMia& x, StateId s, ActionId act) {
        for (auto t : x.step(s, act, Gamma::May))
            if (t == x.failure()) return true;
        return false;
    };
    auto shared = common_actions(a, b);
    for (StateId s = 0; s < P.num_states(); ++s) {
        if (is_failure_pair(s)) continue;
        auto [p, q] = prod.components[s];
        for (const auto& name : shared) {
            ActionId xa = *a.find_action(name), xb = *b.find_action(name);
            std::optional<PruneReason> why;
            if (a.is_output(xa) && a.enables(p, xa, Gamma::May)) {
                if (!b.enables(q, xb, Gamma::Must))
                    why = PruneReason::NewError1;
                else if (refuses_to_fail(b, q, xb))
                    why = PruneReason::NewError3;
            }
            if (!why && b.is_output(xb) && b.enables(q, xb, Gamma::May)) {
                if (!a.enables(p, xa, Gamma::Must))
                    why = PruneReason::NewError2;
                else if (refuses_to_fail(a, p, xa))
                    why = PruneReason::NewError4;
            }
            if (why) {
                in_e[s] = 1;
                r.states.push_back(s);
                r.entries.push_back({P.state_name(s), *why, name});
                break;
            }
        }
    }
    // backward closure over optional output and internal steps
    for (std::size_t k = 0; k < r.states.size(); ++k) {
        StateId t = r.states[k];
        for (auto j : P.in_edges(t)) {
            const Edge& e = P.edges()[j];
            if (P.is_input(e.action) || in_e[e.src] || is_failure_pair(e.src)) continue;
            in_e[e.src] = 1;
            r.states.push_back(e.src);
            std::string act = P.is_tau(e.action) ? std::string(kTauName) : P.action_name(e.action);
            r.entries.push_back({P.state_name(e.src), PruneReason::ErrorClosure, act});
        }
    }
    return r;
}

namespace {

CompositionResult prune(const IrMia& a, const IrMia& b, CompositionMode mode) {
    Product prod = parallel_product(a, b, mode);
    const IrMia& P = prod.automaton;
    IllegalStates ill = illegal_states(prod, a, b);
    CompositionResult res{P, true, ill.entries, mode};
    std::vector<char> in_e(P.num_states(), 0);
    for (auto s : ill.states) in_e[s] = 1;
    ActionAlphabet alpha = P.alphabet();
    std::string name = P.name();

    if (in_e[P.initial()]) {
        Description d;
        d.name = name;
        d.alphabet = alpha;
        d.states = {P.state_name(P.initial()), P.state_name(P.failure())};
        d.initial = d.states[0];
        d.failure = d.states[1];
        res.automaton = IrMia(d);
        res.compatible = false;
        return res;
    }

    // input edges of legal states that may lead into E
    std::vector<std::vector<char>> drop(P.num_states(), std::vector<char>(P.num_actions() + 1, 0));
    for (StateId s = 0; s < P.num_states(); ++s) {
        if (in_e[s]) continue;
        for (auto k : P.out_edges(s)) {
            const Edge& e = P.edges()[k];
            if (P.is_input(e.action) && in_e[e.dst] && !drop[s][e.action]) {
                drop[s][e.action] = 1;
                res.pruning_report.push_back({P.state_name(s), PruneReason::InputEdgeRemoval, P.action_name(e.action)});
            }
        }
    }

    auto is_failure_pair = [&](StateId s) {
        auto [p, q] = prod.components[s];
        return s != P.failure() && (p == a.failure() || q == b.failure());
    };
    Graph g;
    for (StateId s = 0; s < P.num_states(); ++s) g.add_state(P.state_name(s));
    for (const Edge& e : P.edges()) {
        if (in_e[e.src] || in_e[e.dst] || drop[e.src][e.action]) continue;
        StateId dst = is_failure_pair(e.dst) ? P.failure() : e.dst;
        g.add_edge(e.src, P.is_tau(e.action) ? std::string(kTauName) : P.action_name(e.action), dst, e.mod);
    }
    std::vector<char> keep = g.reachable(P.initial());
    keep[P.failure()] = 1;
    for (StateId s = 0; s < P.num_states(); ++s)
        if (!keep[s] && !in_e[s]) res.pruning_report.push_back({P.state_name(s), PruneReason::Unreachable, ""});
    res.automaton = IrMia(g.to_description(name, alpha, P.initial(), P.failure(), keep));
    return res;
}

}  // namespace

CompositionResult parallel_compose(const IrMia& a, const IrMia& b, CompositionMode mode) {
    auto c = composable(a, b, mode);
    if (!c.ok) throw std::invalid_argument("operands not composable: " + c.reason);
    if (mode == CompositionMode::Multicast) return prune(a, b, mode);
    // The hiding product is the multicast product with synchronised labels turned
    // into tau, and pruning treats outputs and tau alike. Pruning first means a tau
    // cycle is only an error if it survives.
    CompositionResult res = prune(a, b, CompositionMode::Multicast);
    Description d = hide(res.automaton, common_actions(a, b)).describe();
    d.name = product_name(a, b, mode);
    res.automaton = IrMia(d);
    res.mode = mode;
    return res;
}

IrMia hide(const IrMia& a, const std::vector<std::string>& labels) {
    for (const auto& l : labels)
        if (!a.alphabet().has_output(l)) throw std::invalid_argument("cannot hide '" + l + "': not an output");
    Description d = a.describe();
    std::vector<std::string> outs;
    for (const auto& o : d.alphabet.outputs)
        if (!has_name(labels, o)) outs.push_back(o);
    d.alphabet.outputs = outs;
    Graph g;
    for (const auto& s : d.states) g.add_state(s);
    for (const auto& e : d.edges) {
        std::string act = has_name(labels, e.action) ? std::string(kTauName) : e.action;
        g.add_edge(g.id(e.src), act, g.id(e.dst), e.mod);
    }
    std::vector<char> keep(g.size(), 1);
    return IrMia(g.to_description(d.name, d.alphabet, g.id(d.initial), g.id(d.failure), keep));
}

}  // namespace irmia
