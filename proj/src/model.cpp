#include "irmia/model.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace irmia {

namespace {

bool reserved(const std::string& n) { return n == kTauName || n == kDeltaName || n == kPhiName; }

bool contains_name(const std::vector<std::string>& v, const std::string& n) {
    return std::find(v.begin(), v.end(), n) != v.end();
}

std::string edge_text(const Description::RawEdge& e) {
    return std::string(e.mod == Modality::Must ? "must " : "may ") + e.src + " " + e.action + " " + e.dst;
}

std::string describe_violations(const std::vector<Violation>& v) {
    std::string s = "invalid automaton:";
    for (const auto& x : v) s += " [" + x.rule + "] " + x.message + ";";
    return s;
}

}  // namespace

bool ActionAlphabet::has_input(const std::string& a) const { return contains_name(inputs, a); }
bool ActionAlphabet::has_output(const std::string& a) const { return contains_name(outputs, a); }

bool ActionAlphabet::same_sets(const ActionAlphabet& other) const {
    auto sorted = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    return sorted(inputs) == sorted(other.inputs) && sorted(outputs) == sorted(other.outputs);
}

InvalidAutomaton::InvalidAutomaton(std::vector<Violation> v)
    : std::runtime_error(describe_violations(v)), violations_(std::move(v)) {}

std::vector<Violation> validate(const Description& d) {
    std::vector<Violation> out;
    auto add = [&](std::string rule, std::string msg) { out.push_back({std::move(rule), std::move(msg)}); };

    std::set<std::string> seen;
    for (const auto* group : {&d.alphabet.inputs, &d.alphabet.outputs}) {
        for (const auto& a : *group) {
            if (a.empty()) add("alphabet", "empty action name");
            else if (reserved(a)) add("alphabet", "reserved name '" + a + "' used as action");
            else if (!seen.insert(a).second) add("alphabet", "action '" + a + "' declared twice or both input and output");
        }
    }

    std::set<std::string> names;
    for (const auto& s : d.states) {
        if (s.empty()) add("states", "empty state name");
        else if (!names.insert(s).second) add("states", "state '" + s + "' declared twice");
    }
    if (!names.count(d.initial)) add("states", "initial state '" + d.initial + "' is not declared");
    if (!names.count(d.failure)) add("states", "failure state '" + d.failure + "' is not declared");

    std::set<std::tuple<std::string, std::string, std::string>> edge_keys;
    // must refusals per (src, input)
    std::set<std::pair<std::string, std::string>> refusals;
    for (const auto& e : d.edges) {
        bool ok = true;
        if (!names.count(e.src)) { add("edge", "unknown source state in '" + edge_text(e) + "'"); ok = false; }
        if (!names.count(e.dst)) { add("edge", "unknown target state in '" + edge_text(e) + "'"); ok = false; }
        bool is_tau = e.action == kTauName;
        if (!is_tau && !d.alphabet.contains(e.action)) {
            add("edge", "action '" + e.action + "' not in alphabet in '" + edge_text(e) + "'");
            ok = false;
        }
        if (!edge_keys.insert({e.src, e.action, e.dst}).second) {
            add("edge", "duplicate edge '" + edge_text(e) + "'");
            ok = false;
        }
        if (!ok) continue;
        bool input = d.alphabet.has_input(e.action);
        std::string clause = e.mod == Modality::Must ? "clause 1" : "clause 2";
        if (e.src == d.failure) add(clause, "edge leaves the failure state: '" + edge_text(e) + "'");
        else if (!input && e.dst == d.failure)
            add(clause, "output or tau edge targets the failure state: '" + edge_text(e) + "'");
        if (input && e.dst == d.failure && e.mod == Modality::MayOnly)
            add("clause 4", "optional input edge into the failure state: '" + edge_text(e) + "'");
        if (input && e.dst == d.failure && e.mod == Modality::Must && e.src != d.failure)
            refusals.insert({e.src, e.action});
    }
    for (const auto& e : d.edges) {
        if (e.dst != d.failure && refusals.count({e.src, e.action}))
            add("clause 5", "input '" + e.action + "' of state '" + e.src +
                                "' is refused and also leads to '" + e.dst + "'");
    }

    // strong convergence: no cycle of may-tau edges
    std::map<std::string, std::vector<std::string>> tau_succ;
    for (const auto& e : d.edges)
        if (e.action == kTauName && names.count(e.src) && names.count(e.dst)) tau_succ[e.src].push_back(e.dst);
    std::map<std::string, int> color;
    std::string cycle_at;
    std::function<bool(const std::string&)> dfs = [&](const std::string& s) {
        color[s] = 1;
        for (const auto& t : tau_succ[s]) {
            if (color[t] == 1) { cycle_at = t; return true; }
            if (color[t] == 0 && dfs(t)) return true;
        }
        color[s] = 2;
        return false;
    };
    for (const auto& s : d.states) {
        if (color[s] == 0 && dfs(s)) {
            add("convergence", "cycle of tau edges through state '" + cycle_at + "'");
            break;
        }
    }
    return out;
}

IrMia::IrMia(const Description& d) {
    auto violations = validate(d);
    if (!violations.empty()) throw InvalidAutomaton(std::move(violations));
    name_ = d.name;
    alphabet_ = d.alphabet;
    states_ = d.states;
    for (StateId i = 0; i < states_.size(); ++i) state_index_[states_[i]] = i;
    ActionId id = 0;
    for (const auto& a : alphabet_.inputs) action_index_[a] = id++;
    for (const auto& a : alphabet_.outputs) action_index_[a] = id++;
    action_index_[kTauName] = id;
    initial_ = state_index_.at(d.initial);
    failure_ = state_index_.at(d.failure);
    for (const auto& e : d.edges)
        edges_.push_back({state_index_.at(e.src), action_index_.at(e.action), state_index_.at(e.dst), e.mod});
    std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.src, x.action, x.dst) < std::tie(y.src, y.action, y.dst);
    });
    out_.assign(states_.size(), {});
    in_.assign(states_.size(), {});
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        out_[edges_[k].src].push_back(k);
        in_[edges_[k].dst].push_back(k);
    }
    closure_may_.resize(states_.size());
    closure_must_.resize(states_.size());
    for (StateId s = 0; s < states_.size(); ++s) {
        for (Gamma g : {Gamma::May, Gamma::Must}) {
            std::vector<bool> seen(states_.size(), false);
            std::vector<StateId> stack{s};
            seen[s] = true;
            while (!stack.empty()) {
                StateId x = stack.back();
                stack.pop_back();
                for (auto k : out_[x]) {
                    const Edge& e = edges_[k];
                    if (e.action == tau() && admits(e.mod, g) && !seen[e.dst]) {
                        seen[e.dst] = true;
                        stack.push_back(e.dst);
                    }
                }
            }
            StateSet c;
            for (StateId t = 0; t < seen.size(); ++t)
                if (seen[t]) c.push_back(t);
            (g == Gamma::May ? closure_may_ : closure_must_)[s] = std::move(c);
        }
    }
}

std::optional<StateId> IrMia::find_state(const std::string& n) const {
    auto it = state_index_.find(n);
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

StateId IrMia::state(const std::string& n) const {
    auto s = find_state(n);
    if (!s) throw std::out_of_range("unknown state '" + n + "'");
    return *s;
}

const std::string& IrMia::action_name(ActionId a) const {
    static const std::string tau_name = kTauName;
    if (a == tau()) return tau_name;
    if (is_input(a)) return alphabet_.inputs.at(a);
    return alphabet_.outputs.at(a - alphabet_.inputs.size());
}

std::optional<ActionId> IrMia::find_action(const std::string& n) const {
    auto it = action_index_.find(n);
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<ActionId> IrMia::inputs() const {
    std::vector<ActionId> v;
    for (ActionId a = 0; a < alphabet_.inputs.size(); ++a) v.push_back(a);
    return v;
}

std::vector<ActionId> IrMia::outputs() const {
    std::vector<ActionId> v;
    for (ActionId a = alphabet_.inputs.size(); a < num_actions(); ++a) v.push_back(a);
    return v;
}

void IrMia::check_state(StateId s) const {
    if (s >= states_.size()) throw std::out_of_range("unknown state id " + std::to_string(s));
}

StateSet IrMia::step(StateId s, ActionId a, Gamma g) const {
    check_state(s);
    StateSet r;
    for (auto k : out_[s]) {
        const Edge& e = edges_[k];
        if (e.action == a && admits(e.mod, g)) r.push_back(e.dst);
    }
    return r;  // sorted since edges are sorted by dst within (src, action)
}

bool IrMia::enables(StateId s, ActionId a, Gamma g) const {
    check_state(s);
    for (auto k : out_[s])
        if (edges_[k].action == a && admits(edges_[k].mod, g)) return true;
    return false;
}

std::optional<Modality> IrMia::edge_modality(StateId s, ActionId a, StateId t) const {
    for (auto k : out_.at(s))
        if (edges_[k].action == a && edges_[k].dst == t) return edges_[k].mod;
    return std::nullopt;
}

const StateSet& IrMia::closure(StateId s, Gamma g) const {
    check_state(s);
    return g == Gamma::May ? closure_may_[s] : closure_must_[s];
}

StateSet IrMia::closure(const StateSet& set, Gamma g) const {
    std::vector<bool> mark(states_.size(), false);
    for (auto s : set)
        for (auto t : closure(s, g)) mark[t] = true;
    StateSet r;
    for (StateId t = 0; t < mark.size(); ++t)
        if (mark[t]) r.push_back(t);
    return r;
}

StateSet IrMia::weak_step(StateId s, ActionId a, Gamma g) const {
    std::vector<bool> mark(states_.size(), false);
    for (auto x : closure(s, g))
        for (auto y : step(x, a, g))
            for (auto z : closure(y, g)) mark[z] = true;
    StateSet r;
    for (StateId t = 0; t < mark.size(); ++t)
        if (mark[t]) r.push_back(t);
    return r;
}

StateSet IrMia::step_then_closure(StateId s, ActionId a, Gamma g) const {
    return closure(step(s, a, g), g);
}

Description IrMia::describe() const {
    Description d;
    d.name = name_;
    d.alphabet = alphabet_;
    d.states = states_;
    d.initial = states_[initial_];
    d.failure = states_[failure_];
    for (const auto& e : edges_) d.edges.push_back({states_[e.src], action_name(e.action), states_[e.dst], e.mod});
    return d;
}

StateSet set_union(const StateSet& x, const StateSet& y) {
    StateSet r;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(r));
    return r;
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& taken) {
    std::string n = base;
    for (int k = 1; contains_name(taken, n); ++k) n = base + "_" + std::to_string(k);
    return n;
}

std::vector<std::string> init_set(const IrMia& a, StateId s, Gamma g) {
    std::vector<std::string> r;
    for (ActionId x = 0; x < a.num_actions(); ++x)
        if (!a.weak_step(s, x, g).empty()) r.push_back(a.action_name(x));
    if (s == a.failure()) r.push_back(kPhiName);
    return r;
}

bool quiescent(const IrMia& a, StateId s, Gamma g) {
    if (s == a.failure()) return false;
    // may-quiescence looks at weak must outputs, must-quiescence at weak may outputs
    Gamma probe = g == Gamma::May ? Gamma::Must : Gamma::May;
    for (auto o : a.outputs())
        if (!a.weak_step(s, o, probe).empty()) return false;
    return true;
}

bool failure_pred(const IrMia& a, StateId s, Gamma g) {
    if (s == a.failure()) return true;
    if (g == Gamma::Must) return false;
    for (auto k : a.in_edges(s)) {
        const Edge& e = a.edges()[k];
        if (a.is_input(e.action) && e.mod == Modality::MayOnly) return true;
    }
    return false;
}

StateSet after_symbol(const IrMia& a, const StateSet& src, const std::string& sym, Gamma g) {
    StateSet start = a.closure(src, g);
    if (sym == kDeltaName || sym == kPhiName) {
        StateSet keep;
        for (auto s : start)
            if (sym == kDeltaName ? quiescent(a, s, g) : failure_pred(a, s, g)) keep.push_back(s);
        return a.closure(keep, g);
    }
    auto act = a.find_action(sym);
    if (!act || a.is_tau(*act)) return {};
    StateSet r;
    for (auto s : start)
        for (auto t : a.step(s, *act, g)) r.push_back(t);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return a.closure(r, g);
}

StateSet after(const IrMia& a, const StateSet& src, const std::vector<std::string>& trace, Gamma g) {
    StateSet cur = a.closure(src, g);
    for (const auto& sym : trace) {
        if (cur.empty()) break;
        cur = after_symbol(a, cur, sym, g);
    }
    return cur;
}

OutSet out_set(const IrMia& a, const StateSet& src, Gamma g) {
    OutSet r;
    for (auto o : a.outputs()) {
        for (auto s : src) {
            if (a.enables(s, o, g)) {
                r.push_back(a.action_name(o));
                break;
            }
        }
    }
    for (auto s : src)
        if (quiescent(a, s, g)) {
            r.push_back(kDeltaName);
            break;
        }
    for (auto s : src)
        if (failure_pred(a, s, g)) {
            r.push_back(kPhiName);
            break;
        }
    return r;
}

Enabledness input_enabledness(const IrMia& a) {
    Enabledness r{true, true, true, true};
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (s == a.failure()) continue;
        for (auto i : a.inputs()) {
            if (!a.enables(s, i, Gamma::May)) r.strong_may = false;
            if (!a.enables(s, i, Gamma::Must)) r.strong_must = false;
            if (a.weak_step(s, i, Gamma::May).empty()) r.weak_may = false;
            if (a.weak_step(s, i, Gamma::Must).empty()) r.weak_must = false;
        }
    }
    return r;
}

IrMia demonic_completion(const IrMia& a) {
    for (StateId s = 0; s < a.num_states(); ++s)
        if (a.enables(s, a.tau(), Gamma::May) && !a.enables(s, a.tau(), Gamma::Must))
            throw std::invalid_argument("demonic completion: state '" + a.state_name(s) +
                                        "' has an optional tau edge but no mandatory one");
    Description d = a.describe();
    std::string chi = fresh_name("q_chi", d.states);
    d.states.push_back(chi);
    std::string omega = fresh_name("q_Omega", d.states);
    d.states.push_back(omega);
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (s == a.failure() || a.enables(s, a.tau(), Gamma::Must)) continue;
        for (auto i : a.inputs())
            if (!a.enables(s, i, Gamma::Must)) d.edges.push_back({a.state_name(s), a.action_name(i), chi, Modality::Must});
    }
    d.edges.push_back({chi, kTauName, omega, Modality::Must});
    for (const auto& i : d.alphabet.inputs) {
        d.edges.push_back({chi, i, chi, Modality::Must});
        d.edges.push_back({omega, i, omega, Modality::Must});
    }
    for (const auto* group : {&d.alphabet.inputs, &d.alphabet.outputs})
        for (const auto& x : *group) d.edges.push_back({omega, x, chi, Modality::MayOnly});
    return IrMia(d);
}

IsoResult isomorphic(const IrMia& a, const IrMia& b) {
    IsoResult res;
    const std::size_t n = a.num_states();
    if (n != b.num_states() || a.edges().size() != b.edges().size()) return res;
    if (!a.alphabet().same_sets(b.alphabet())) return res;

    // action of a -> action of b
    std::vector<ActionId> act(a.num_actions() + 1);
    for (ActionId x = 0; x <= a.num_actions(); ++x) act[x] = *b.find_action(a.action_name(x));

    using Key = std::tuple<StateId, ActionId, StateId>;
    std::map<Key, Modality> b_edges;
    for (const auto& e : b.edges()) b_edges[{e.src, e.action, e.dst}] = e.mod;

    // colour refinement with a shared colour table so colours are comparable
    std::vector<std::size_t> ca(n), cb(n);
    auto base = [](const IrMia& m, StateId s) {
        return static_cast<std::size_t>(s == m.initial()) * 2 + static_cast<std::size_t>(s == m.failure());
    };
    for (StateId s = 0; s < n; ++s) {
        ca[s] = base(a, s);
        cb[s] = base(b, s);
    }
    using Sig = std::pair<std::size_t, std::vector<std::tuple<int, std::size_t, int, std::size_t>>>;
    auto signature = [](const IrMia& m, StateId s, const std::vector<std::size_t>& col,
                        const std::function<std::size_t(ActionId)>& norm) {
        Sig sig{col[s], {}};
        for (auto k : m.out_edges(s)) {
            const Edge& e = m.edges()[k];
            sig.second.emplace_back(0, norm(e.action), e.mod == Modality::Must, col[e.dst]);
        }
        for (auto k : m.in_edges(s)) {
            const Edge& e = m.edges()[k];
            sig.second.emplace_back(1, norm(e.action), e.mod == Modality::Must, col[e.src]);
        }
        std::sort(sig.second.begin(), sig.second.end());
        return sig;
    };
    auto norm_a = [&](ActionId x) { return static_cast<std::size_t>(act[x]); };
    auto norm_b = [](ActionId x) { return static_cast<std::size_t>(x); };
    for (std::size_t round = 0; round <= n; ++round) {
        std::map<Sig, std::size_t> table;
        std::vector<std::size_t> na(n), nb(n);
        for (StateId s = 0; s < n; ++s) na[s] = table.emplace(signature(a, s, ca, norm_a), table.size()).first->second;
        for (StateId s = 0; s < n; ++s) nb[s] = table.emplace(signature(b, s, cb, norm_b), table.size()).first->second;
        std::set<std::size_t> ka(na.begin(), na.end()), kb(nb.begin(), nb.end());
        bool stable = std::set<std::size_t>(ca.begin(), ca.end()).size() == ka.size();
        ca = std::move(na);
        cb = std::move(nb);
        if (stable) break;
    }
    {
        std::vector<std::size_t> sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return res;
    }

    std::vector<StateId> map(n, n), inv(n, n);
    std::function<bool(StateId)> extend = [&](StateId x) -> bool {
        if (x == n) return true;
        for (StateId y = 0; y < n; ++y) {
            if (inv[y] != n || cb[y] != ca[x]) continue;
            map[x] = y;
            inv[y] = x;
            bool ok = true;
            for (auto k : a.out_edges(x)) {
                const Edge& e = a.edges()[k];
                if (map[e.dst] == n) continue;
                auto it = b_edges.find({y, act[e.action], map[e.dst]});
                if (it == b_edges.end() || it->second != e.mod) { ok = false; break; }
            }
            if (ok) {
                for (auto k : a.in_edges(x)) {
                    const Edge& e = a.edges()[k];
                    if (map[e.src] == n) continue;
                    auto it = b_edges.find({map[e.src], act[e.action], y});
                    if (it == b_edges.end() || it->second != e.mod) { ok = false; break; }
                }
            }
            if (ok && extend(x + 1)) return true;
            map[x] = n;
            inv[y] = n;
        }
        return false;
    };
    if (!extend(0)) return res;
    if (map[a.initial()] != b.initial() || map[a.failure()] != b.failure()) return res;
    res.isomorphic = true;
    res.mapping = std::move(map);
    return res;
}

}  // namespace irmia
