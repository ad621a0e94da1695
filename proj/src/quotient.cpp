#include "irmia/quotient.hpp"

#include "builder.hpp"

#include <deque>
#include <map>
#include <stdexcept>

namespace irmia {

using detail::Graph;
using detail::pair_name;

std::vector<std::string> quotient_pair_check(const IrMia& p, const IrMia& d) {
    std::vector<std::string> r;
    auto tau_free = [&](const IrMia& x, const char* role) {
        for (const Edge& e : x.edges())
            if (x.is_tau(e.action)) {
                r.push_back(std::string(role) + " has a tau edge at '" + x.state_name(e.src) + "'");
                return;
            }
    };
    tau_free(p, "dividend");
    tau_free(d, "divisor");
    for (StateId s = 0; s < d.num_states(); ++s)
        for (ActionId a = 0; a < d.num_actions(); ++a)
            if (d.step(s, a, Gamma::May).size() > 1)
                r.push_back("divisor is not may-deterministic at '" + d.state_name(s) + "' on '" + d.action_name(a) +
                            "'");
    for (ActionId a = 0; a < d.num_actions(); ++a)
        if (!p.alphabet().contains(d.action_name(a)))
            r.push_back("divisor action '" + d.action_name(a) + "' is not an action of the dividend");
    for (const auto& o : d.alphabet().outputs)
        if (!p.alphabet().has_output(o)) r.push_back("divisor output '" + o + "' is not a dividend output");
    if (p.edges().empty()) r.push_back("dividend has no transitions");
    if (d.edges().empty()) r.push_back("divisor has no transitions");
    return r;
}

PseudoQuotient pseudo_quotient(const IrMia& p, const IrMia& d) {
    auto report = quotient_pair_check(p, d);
    if (!report.empty()) throw std::invalid_argument("not a quotient pair: " + report.front());

    ActionAlphabet alpha;
    alpha.inputs = p.alphabet().inputs;
    for (const auto& o : d.alphabet().outputs) alpha.inputs.push_back(o);
    for (const auto& o : p.alphabet().outputs)
        if (!d.alphabet().has_output(o)) alpha.outputs.push_back(o);

    Graph g;
    std::vector<std::pair<StateId, StateId>> comps;
    std::map<std::pair<StateId, StateId>, std::size_t> index;
    std::deque<std::pair<StateId, StateId>> queue;
    auto intern = [&](StateId x, StateId y) {
        auto [it, fresh] = index.emplace(std::make_pair(x, y), g.size());
        if (fresh) {
            g.add_state(pair_name(p.state_name(x), d.state_name(y)));
            comps.push_back({x, y});
            queue.push_back({x, y});
        }
        return it->second;
    };
    intern(p.initial(), d.initial());
    std::size_t fail = intern(p.failure(), d.failure());
    queue.pop_back();

    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        std::size_t src = index.at({x, y});
        for (auto k : p.out_edges(x)) {
            const Edge& e = p.edges()[k];
            const std::string& name = p.action_name(e.action);
            auto da = d.find_action(name);
            if (e.dst == p.failure()) {
                bool d_refuses = false;
                if (da)
                    for (auto t : d.step(y, *da, Gamma::Must)) d_refuses |= t == d.failure();
                if (!d_refuses) g.add_edge(src, name, fail, e.mod);
                continue;
            }
            if (!da) {
                g.add_edge(src, name, intern(e.dst, y), e.mod);
                continue;
            }
            bool out_p_in_d = p.is_output(e.action) && d.is_input(*da);
            bool out_d = d.is_output(*da);
            for (auto j : d.out_edges(y)) {
                const Edge& f = d.edges()[j];
                if (f.action != *da || f.dst == d.failure()) continue;
                bool must = (e.mod == Modality::Must && f.mod == Modality::Must) || out_d;
                bool may = f.mod == Modality::Must || !out_p_in_d;
                if (must)
                    g.add_edge(src, name, intern(e.dst, f.dst), Modality::Must);
                else if (may)
                    g.add_edge(src, name, intern(e.dst, f.dst), Modality::MayOnly);
            }
        }
    }
    std::vector<char> keep(g.size(), 1);
    Description desc = g.to_description(p.name() + "//" + d.name(), alpha, 0, fail, keep);
    return PseudoQuotient{IrMia(desc), comps};
}

ImpossibleStates impossible_states(const PseudoQuotient& pq, const IrMia& p, const IrMia& d) {
    const IrMia& Q = pq.automaton;
    ImpossibleStates r;
    std::vector<char> in_g(Q.num_states(), 0);
    for (StateId s = 0; s < Q.num_states(); ++s) {
        if (s == Q.failure()) continue;
        auto [x, y] = pq.components[s];
        for (auto k : p.out_edges(x)) {
            const Edge& e = p.edges()[k];
            auto da = d.find_action(p.action_name(e.action));
            if (!da || e.mod != Modality::Must) continue;
            std::string rule;
            if (e.dst != p.failure()) {
                StateSet t = d.step(y, *da, Gamma::Must);
                if (t.empty() || t == StateSet{d.failure()}) rule = "G1";
            }
            // never fires for well-formed operands: divisor outputs are dividend outputs, which cannot be refused
            if (e.dst == p.failure() && d.is_output(*da) && d.enables(y, *da, Gamma::May)) rule = "G2";
            if (!rule.empty()) {
                in_g[s] = 1;
                r.states.push_back(s);
                r.entries.push_back({Q.state_name(s), rule, p.action_name(e.action)});
                break;
            }
        }
    }
    for (std::size_t k = 0; k < r.states.size(); ++k) {
        for (auto j : Q.in_edges(r.states[k])) {
            const Edge& e = Q.edges()[j];
            if (e.mod != Modality::Must || in_g[e.src]) continue;
            in_g[e.src] = 1;
            r.states.push_back(e.src);
            r.entries.push_back({Q.state_name(e.src), "G3", Q.action_name(e.action)});
        }
    }
    return r;
}

QuotientResult quotient(const IrMia& p, const IrMia& d) {
    QuotientResult res;
    res.precondition_report = quotient_pair_check(p, d);
    if (!res.precondition_report.empty()) return res;
    PseudoQuotient pq = pseudo_quotient(p, d);
    const IrMia& Q = pq.automaton;
    ImpossibleStates g = impossible_states(pq, p, d);
    res.impossible = g.entries;
    std::vector<char> in_g(Q.num_states(), 0);
    for (auto s : g.states) in_g[s] = 1;
    if (in_g[Q.initial()]) return res;

    Graph out;
    for (StateId s = 0; s < Q.num_states(); ++s) out.add_state(Q.state_name(s));
    for (const Edge& e : Q.edges())
        if (!in_g[e.src] && !in_g[e.dst]) out.add_edge(e.src, Q.action_name(e.action), e.dst, e.mod);
    std::vector<char> keep = out.reachable(Q.initial());
    keep[Q.failure()] = 1;
    res.automaton = IrMia(out.to_description(Q.name(), Q.alphabet(), Q.initial(), Q.failure(), keep));
    res.defined = true;
    return res;
}

}  // namespace irmia
