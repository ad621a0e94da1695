#include "irmia/conjunction.hpp"

#include "builder.hpp"

#include <deque>
#include <map>
#include <stdexcept>

namespace irmia {

using detail::Graph;
using detail::pair_name;

namespace {

// One operand extended by its demonic state, which may-loops on every output
// and has nothing else.
struct Side {
    const IrMia& m;

    StateSet strong(StateId x, ActionId a, Gamma g) const {
        if (x != kDemonic) return m.step(x, a, g);
        if (g == Gamma::May && m.is_output(a)) return {kDemonic};
        return {};
    }
    // x =w^=> for an output w, or the tau closure for w = tau.
    StateSet weak_hat(StateId x, ActionId w) const {
        if (x == kDemonic) return m.is_output(w) || m.is_tau(w) ? StateSet{kDemonic} : StateSet{};
        if (m.is_tau(w)) return m.closure(x, Gamma::May);
        return m.weak_step(x, w, Gamma::May);
    }
    // x -i->may then tau closure, avoiding the failure state.
    StateSet input_then_closure(StateId x, ActionId i) const {
        if (x == kDemonic) return {};
        StateSet r;
        for (auto t : m.step(x, i, Gamma::May))
            if (t != m.failure()) r = set_union(r, m.closure(t, Gamma::May));
        return r;
    }
    bool refuses(StateId x, ActionId i, Gamma g) const {
        if (x == kDemonic) return false;
        for (auto t : m.step(x, i, g))
            if (t == m.failure()) return true;
        return false;
    }
    bool has_proper(const StateSet& s) const {
        for (auto t : s)
            if (t != m.failure()) return true;
        return false;
    }
};

std::vector<ActionId> action_map(const IrMia& from, const IrMia& to) {
    std::vector<ActionId> r(from.num_actions() + 1);
    for (ActionId a = 0; a <= from.num_actions(); ++a)
        r[a] = from.is_tau(a) ? to.tau() : *to.find_action(from.action_name(a));
    return r;
}

}  // namespace

ConjunctiveProduct conjunctive_product(const IrMia& a, const IrMia& b) {
    if (!a.alphabet().same_sets(b.alphabet()))
        throw std::invalid_argument("conjunction requires identical input and output alphabets");
    Side A{a}, B{b};
    auto bmap = action_map(a, b);
    std::string demon_a = fresh_name(a.name() + "_d", a.describe().states);
    std::string demon_b = fresh_name(b.name() + "_d", b.describe().states);
    auto name_of = [&](StateId x, StateId y) {
        return pair_name(x == kDemonic ? demon_a : a.state_name(x), y == kDemonic ? demon_b : b.state_name(y));
    };

    Graph g;
    std::vector<std::pair<StateId, StateId>> comps;
    std::map<std::pair<StateId, StateId>, std::size_t> index;
    std::deque<std::pair<StateId, StateId>> queue;
    auto intern = [&](StateId x, StateId y) {
        auto [it, fresh] = index.emplace(std::make_pair(x, y), g.size());
        if (fresh) {
            g.add_state(name_of(x, y));
            comps.push_back({x, y});
            queue.push_back({x, y});
        }
        return it->second;
    };
    intern(a.initial(), b.initial());
    // refusal edges are collected until the failure state gets its name
    std::vector<std::pair<std::size_t, std::string>> refusals;

    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        std::size_t src = index.at({x, y});
        auto edge = [&](ActionId w, StateId x2, StateId y2, Modality m) {
            std::size_t dst = intern(x2, y2);
            g.add_edge(src, a.is_tau(w) ? std::string(kTauName) : a.action_name(w), dst, m);
        };
        for (ActionId w = 0; w <= a.num_actions(); ++w) {
            ActionId wb = bmap[w];
            if (!a.is_input(w)) {
                StateSet wx = A.weak_hat(x, w), wy = B.weak_hat(y, wb);
                if (!wy.empty())
                    for (auto x2 : A.strong(x, w, Gamma::Must))
                        for (auto y2 : wy) edge(w, x2, y2, Modality::Must);
                if (!wx.empty())
                    for (auto y2 : B.strong(y, wb, Gamma::Must))
                        for (auto x2 : wx) edge(w, x2, y2, Modality::Must);
                for (auto x2 : wx)
                    for (auto y2 : wy)
                        if (!(a.is_tau(w) && x2 == x && y2 == y)) edge(w, x2, y2, Modality::MayOnly);
                continue;
            }
            StateSet ix = A.input_then_closure(x, w), iy = B.input_then_closure(y, wb);
            for (auto x2 : A.strong(x, w, Gamma::Must))
                if (x2 != a.failure())
                    for (auto y2 : iy) edge(w, x2, y2, Modality::Must);
            for (auto y2 : B.strong(y, wb, Gamma::Must))
                if (y2 != b.failure())
                    for (auto x2 : ix) edge(w, x2, y2, Modality::Must);
            for (auto x2 : ix)
                for (auto y2 : iy) edge(w, x2, y2, Modality::MayOnly);
            if (x != kDemonic && B.strong(y, wb, Gamma::May).empty())
                for (auto k : a.out_edges(x)) {
                    const Edge& e = a.edges()[k];
                    if (e.action == w && e.dst != a.failure()) edge(w, e.dst, kDemonic, e.mod);
                }
            if (y != kDemonic && A.strong(x, w, Gamma::May).empty())
                for (auto k : b.out_edges(y)) {
                    const Edge& e = b.edges()[k];
                    if (e.action == wb && e.dst != b.failure()) edge(w, kDemonic, e.dst, e.mod);
                }
            if (A.refuses(x, w, Gamma::May) || B.refuses(y, wb, Gamma::May))
                refusals.push_back({src, a.action_name(w)});
        }
    }
    std::size_t fail = g.add_state(fresh_name("_PHI", g.names()));
    comps.push_back({a.failure(), b.failure()});
    for (const auto& [src, act] : refusals) g.add_edge(src, act, fail, Modality::Must);
    std::vector<char> keep(g.size(), 1);
    Description d = g.to_description(a.name() + "&" + b.name(), a.alphabet(), 0, fail, keep);
    return ConjunctiveProduct{IrMia(d), comps};
}

InconsistentStates inconsistent_states(const ConjunctiveProduct& prod, const IrMia& a, const IrMia& b) {
    const IrMia& P = prod.automaton;
    Side A{a}, B{b};
    auto bmap = action_map(a, b);
    InconsistentStates r;
    std::vector<char> in_f(P.num_states(), 0);
    for (StateId s = 0; s < P.num_states(); ++s) {
        if (s == P.failure()) continue;
        auto [x, y] = prod.components[s];
        std::string rule, act;
        for (ActionId w = 0; w < a.num_actions() && rule.empty(); ++w) {
            ActionId wb = bmap[w];
            StateSet mx = A.strong(x, w, Gamma::Must), my = B.strong(y, wb, Gamma::Must);
            if (a.is_output(w)) {
                if (!mx.empty() && B.weak_hat(y, wb).empty()) rule = "F1";
                else if (!my.empty() && A.weak_hat(x, w).empty()) rule = "F2";
            } else {
                if (A.has_proper(mx) && B.refuses(y, wb, Gamma::Must)) rule = "F3";
                else if (A.refuses(x, w, Gamma::Must) && B.has_proper(my)) rule = "F4";
            }
            if (rule.empty()) {
                if (A.strong(x, w, Gamma::May).size() > 1 && !my.empty()) rule = "F5";
                else if (B.strong(y, wb, Gamma::May).size() > 1 && !mx.empty()) rule = "F6";
            }
            if (!rule.empty()) act = a.action_name(w);
        }
        if (!rule.empty()) {
            in_f[s] = 1;
            r.states.push_back(s);
            r.entries.push_back({P.state_name(s), rule, act});
        }
    }
    for (std::size_t k = 0; k < r.states.size(); ++k) {
        for (auto j : P.in_edges(r.states[k])) {
            const Edge& e = P.edges()[j];
            if (e.mod != Modality::Must || in_f[e.src]) continue;
            in_f[e.src] = 1;
            r.states.push_back(e.src);
            r.entries.push_back({P.state_name(e.src), "F7", P.action_name(e.action)});
        }
    }
    return r;
}

ConjunctionResult conjoin(const IrMia& a, const IrMia& b) {
    ConjunctiveProduct prod = conjunctive_product(a, b);
    const IrMia& P = prod.automaton;
    InconsistentStates f = inconsistent_states(prod, a, b);
    ConjunctionResult res;
    res.inconsistent = f.entries;
    std::vector<char> in_f(P.num_states(), 0);
    for (auto s : f.states) in_f[s] = 1;
    if (in_f[P.initial()]) return res;

    Graph g;
    for (StateId s = 0; s < P.num_states(); ++s) g.add_state(P.state_name(s));
    for (StateId s = 0; s < P.num_states(); ++s) {
        if (in_f[s]) continue;
        std::vector<char> lost(P.num_actions(), 0), kept(P.num_actions(), 0);
        for (auto k : P.out_edges(s)) {
            const Edge& e = P.edges()[k];
            if (in_f[e.dst]) {
                if (P.is_input(e.action)) lost[e.action] = 1;
                continue;
            }
            if (P.is_input(e.action)) kept[e.action] = 1;
            g.add_edge(s, P.action_name(e.action), e.dst, e.mod);
        }
        for (ActionId i = 0; i < P.num_actions(); ++i)
            if (lost[i] && !kept[i]) g.add_edge(s, P.action_name(i), P.failure(), Modality::Must);
    }
    std::vector<char> keep = g.reachable(P.initial());
    keep[P.failure()] = 1;
    res.automaton = IrMia(g.to_description(P.name(), P.alphabet(), P.initial(), P.failure(), keep));
    res.defined = true;
    return res;
}

}  // namespace irmia
