#include "irmia/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace irmia {

namespace {

bool coin(std::mt19937_64& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool enabled_as_required(const IrMia& a, StateId s, ActionId i, EnabledFlavor f) {
    switch (f) {
        case EnabledFlavor::None: return true;
        case EnabledFlavor::WeakMay: return !a.weak_step(s, i, Gamma::May).empty();
        case EnabledFlavor::StrongMay: return a.enables(s, i, Gamma::May);
        case EnabledFlavor::WeakMust: return !a.weak_step(s, i, Gamma::Must).empty();
        case EnabledFlavor::StrongMust: return a.enables(s, i, Gamma::Must);
    }
    return true;
}

}  // namespace

IrMia random_irmia(const GeneratorConfig& cfg) {
    for (double p : {cfg.edge_density, cfg.must_prob, cfg.refusal_prob, cfg.tau_prob, cfg.nondet_prob})
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("generator probabilities must lie in [0,1]");
    if (cfg.min_states == 0 || cfg.min_states > cfg.max_states)
        throw std::invalid_argument("generator needs 1 <= min_states <= max_states");
    std::mt19937_64 rng(cfg.seed);
    Description d;
    d.name = "G" + std::to_string(cfg.seed);
    if (cfg.alphabet) {
        d.alphabet = *cfg.alphabet;
    } else {
        for (std::size_t k = 0; k < cfg.num_inputs; ++k) d.alphabet.inputs.push_back("i" + std::to_string(k));
        for (std::size_t k = 0; k < cfg.num_outputs; ++k) d.alphabet.outputs.push_back("o" + std::to_string(k));
    }
    std::size_t n = cfg.min_states + pick(rng, cfg.max_states - cfg.min_states + 1);
    for (std::size_t k = 0; k < n; ++k) d.states.push_back("q" + std::to_string(k));
    d.states.push_back("_PHI");
    d.initial = "q0";
    d.failure = "_PHI";
    auto mod = [&] { return coin(rng, cfg.must_prob) ? Modality::Must : Modality::MayOnly; };
    auto targets = [&] {
        std::vector<std::size_t> t{pick(rng, n)};
        if (coin(rng, cfg.nondet_prob)) {
            std::size_t u = pick(rng, n);
            if (u != t[0]) t.push_back(u);
        }
        return t;
    };
    for (std::size_t s = 0; s < n; ++s) {
        for (const auto& i : d.alphabet.inputs) {
            if (coin(rng, cfg.refusal_prob)) {
                d.edges.push_back({d.states[s], i, d.failure, Modality::Must});
                continue;
            }
            if (!coin(rng, cfg.edge_density)) continue;
            for (auto t : targets()) d.edges.push_back({d.states[s], i, d.states[t], mod()});
        }
        for (const auto& o : d.alphabet.outputs) {
            if (!coin(rng, cfg.edge_density)) continue;
            for (auto t : targets()) d.edges.push_back({d.states[s], o, d.states[t], mod()});
        }
        // tau only forwards in state order, so no cycles
        if (s + 1 < n && coin(rng, cfg.tau_prob))
            d.edges.push_back({d.states[s], kTauName, d.states[s + 1 + pick(rng, n - s - 1)], mod()});
    }
    if (cfg.enabled == EnabledFlavor::None) return IrMia(d);

    IrMia a(d);
    bool must = cfg.enabled == EnabledFlavor::WeakMust || cfg.enabled == EnabledFlavor::StrongMust;
    for (StateId s = 0; s < n; ++s) {
        for (auto i : a.inputs()) {
            if (enabled_as_required(a, s, i, cfg.enabled)) continue;
            // promote an existing optional edge, otherwise add one
            bool fixed = false;
            for (auto& e : d.edges)
                if (must && e.src == d.states[s] && e.action == a.action_name(i) && e.mod == Modality::MayOnly) {
                    e.mod = Modality::Must;
                    fixed = true;
                    break;
                }
            if (!fixed) d.edges.push_back({d.states[s], a.action_name(i), d.states[pick(rng, n)], must ? Modality::Must : mod()});
        }
    }
    return IrMia(d);
}

std::optional<IrMia> mutate(const IrMia& a, Mutation kind, std::mt19937_64& rng) {
    Description d = a.describe();
    std::vector<std::size_t> sites;
    switch (kind) {
        case Mutation::PromoteMay:
            for (std::size_t k = 0; k < d.edges.size(); ++k)
                if (d.edges[k].mod == Modality::MayOnly) sites.push_back(k);
            if (sites.empty()) return std::nullopt;
            d.edges[sites[pick(rng, sites.size())]].mod = Modality::Must;
            return IrMia(d);
        case Mutation::DropMayOutput:
            for (std::size_t k = 0; k < d.edges.size(); ++k)
                if (d.edges[k].mod == Modality::MayOnly && d.alphabet.has_output(d.edges[k].action)) sites.push_back(k);
            if (sites.empty()) return std::nullopt;
            d.edges.erase(d.edges.begin() + static_cast<std::ptrdiff_t>(sites[pick(rng, sites.size())]));
            return IrMia(d);
        case Mutation::RefuseInput: {
            // (state, input) whose edges are all optional
            std::vector<std::pair<StateId, ActionId>> cand;
            for (StateId s = 0; s < a.num_states(); ++s)
                for (auto i : a.inputs())
                    if (a.enables(s, i, Gamma::May) && !a.enables(s, i, Gamma::Must)) cand.push_back({s, i});
            if (cand.empty()) return std::nullopt;
            auto [s, i] = cand[pick(rng, cand.size())];
            const std::string& src = a.state_name(s);
            const std::string& act = a.action_name(i);
            std::erase_if(d.edges, [&](const auto& e) { return e.src == src && e.action == act; });
            d.edges.push_back({src, act, d.failure, Modality::Must});
            return IrMia(d);
        }
        case Mutation::AddInput: {
            std::vector<std::pair<StateId, ActionId>> cand;
            for (StateId s = 0; s < a.num_states(); ++s)
                if (s != a.failure())
                    for (auto i : a.inputs())
                        if (!a.enables(s, i, Gamma::May)) cand.push_back({s, i});
            if (cand.empty()) return std::nullopt;
            auto [s, i] = cand[pick(rng, cand.size())];
            StateId t = pick(rng, a.num_states() - 1);
            if (t >= a.failure()) ++t;
            d.edges.push_back({a.state_name(s), a.action_name(i), a.state_name(t),
                               coin(rng, 0.5) ? Modality::Must : Modality::MayOnly});
            return IrMia(d);
        }
        case Mutation::InsertTau: {
            // an output edge into a state without inputs gets a mandatory tau step appended
            for (std::size_t k = 0; k < d.edges.size(); ++k) {
                const auto& e = d.edges[k];
                if (!d.alphabet.has_output(e.action)) continue;
                StateId t = a.state(e.dst);
                bool has_input = false;
                for (auto i : a.inputs()) has_input |= a.enables(t, i, Gamma::May);
                if (!has_input) sites.push_back(k);
            }
            if (sites.empty()) return std::nullopt;
            auto& e = d.edges[sites[pick(rng, sites.size())]];
            std::string mid = fresh_name(e.src + "_" + e.action, d.states);
            d.states.push_back(mid);
            std::string dst = e.dst;
            e.dst = mid;
            d.edges.push_back({mid, kTauName, dst, Modality::Must});
            return IrMia(d);
        }
    }
    return std::nullopt;
}

IrMia random_refinement(const IrMia& a, std::uint64_t seed, std::size_t steps) {
    std::mt19937_64 rng(seed);
    static constexpr Mutation kinds[] = {Mutation::PromoteMay, Mutation::DropMayOutput, Mutation::RefuseInput,
                                         Mutation::AddInput, Mutation::InsertTau};
    IrMia cur = a;
    for (std::size_t k = 0; k < steps; ++k) {
        Mutation m = kinds[pick(rng, std::size(kinds))];
        if (auto next = mutate(cur, m, rng)) cur = *next;
    }
    if (!refines(cur, a).holds) throw std::logic_error("random_refinement produced a non-refinement");
    return cur;
}

namespace {

// Successors of one state under one suspension symbol, tau-closed on both sides.
StateSet successors(const IrMia& a, StateId s, const std::string& sym, Gamma g) {
    StateSet r;
    const StateSet& pre = a.closure(s, g);
    if (sym == kDeltaName || sym == kPhiName) {
        for (auto t : pre) {
            bool ok = sym == kDeltaName ? quiescent(a, t, g) : failure_pred(a, t, g);
            if (ok) r = set_union(r, a.closure(t, g));
        }
        return r;
    }
    ActionId act = *a.find_action(sym);
    for (auto t : pre)
        for (auto k : a.out_edges(t)) {
            const Edge& e = a.edges()[k];
            if (e.action == act && IrMia::admits(e.mod, g)) r = set_union(r, a.closure(e.dst, g));
        }
    return r;
}

std::vector<std::string> symbols_of(const IrMia& a) {
    std::vector<std::string> s = a.alphabet().inputs;
    s.insert(s.end(), a.alphabet().outputs.begin(), a.alphabet().outputs.end());
    std::sort(s.begin(), s.end());
    s.push_back(kDeltaName);
    s.push_back(kPhiName);
    return s;
}

void expand(const IrMia& a, StateId s, std::size_t depth, Gamma g, const std::vector<std::string>& syms,
            SuspensionTrace& prefix, TraceSet& out) {
    out.insert(prefix);
    if (depth == 0) return;
    for (const auto& x : syms) {
        prefix.push_back(x);
        for (auto t : successors(a, s, x, g)) expand(a, t, depth - 1, g, syms, prefix, out);
        prefix.pop_back();
    }
}

std::vector<std::string> observations(const IrMia& a, const StateSet& set, Gamma g) {
    std::vector<std::string> r;
    for (auto s : set) {
        for (auto k : a.out_edges(s)) {
            const Edge& e = a.edges()[k];
            if (a.is_output(e.action) && IrMia::admits(e.mod, g)) r.push_back(a.action_name(e.action));
        }
        if (quiescent(a, s, g)) r.push_back(kDeltaName);
        if (failure_pred(a, s, g)) r.push_back(kPhiName);
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

}  // namespace

TraceSet enum_straces(const IrMia& a, std::size_t depth, Gamma g) {
    TraceSet out;
    SuspensionTrace prefix;
    auto syms = symbols_of(a);
    // the initial closure contributes its members as start states
    for (auto s : a.closure(a.initial(), g)) expand(a, s, depth, g, syms, prefix, out);
    return out;
}

ConformanceVerdict irioco_bounded(const IrMia& impl, const IrMia& spec, std::size_t depth, ConformanceOptions opt) {
    if (!impl.alphabet().same_sets(spec.alphabet()))
        throw PreconditionError("implementation and specification must share input and output alphabets");
    if (!opt.assume_enabled && !input_enabledness(impl).weak_may)
        throw PreconditionError("implementation '" + impl.name() + "' is not weak may-input-enabled");
    auto syms = symbols_of(spec);
    std::vector<std::string> decl = spec.alphabet().outputs;
    decl.push_back(kDeltaName);
    decl.push_back(kPhiName);
    auto first_in_decl = [&](const std::vector<std::string>& v) {
        for (const auto& x : decl)
            if (std::find(v.begin(), v.end(), x) != v.end()) return x;
        return v.front();
    };
    // one entry per trace; traces are never merged, levels hold traces of equal length in symbol order
    struct Item {
        SuspensionTrace trace;
        StateSet mi, ms;
    };
    std::vector<Item> level{{{}, impl.closure(impl.initial(), Gamma::May), spec.closure(spec.initial(), Gamma::May)}};
    for (std::size_t len = 0; !level.empty(); ++len) {
        for (const auto& it : level) {
            if (!std::binary_search(it.mi.begin(), it.mi.end(), impl.failure())) {
                auto ri = observations(impl, it.mi, Gamma::Must);
                auto rs = observations(spec, it.ms, Gamma::Must);
                std::vector<std::string> missing;
                std::set_difference(rs.begin(), rs.end(), ri.begin(), ri.end(), std::back_inserter(missing));
                if (!missing.empty()) return {false, it.trace, 2, first_in_decl(missing)};
            }
            auto oi = observations(impl, it.mi, Gamma::May);
            auto os = observations(spec, it.ms, Gamma::May);
            std::vector<std::string> extra;
            std::set_difference(oi.begin(), oi.end(), os.begin(), os.end(), std::back_inserter(extra));
            if (!extra.empty()) return {false, it.trace, 1, first_in_decl(extra)};
        }
        if (len == depth) break;
        std::vector<Item> next;
        for (const auto& it : level)
            for (const auto& x : syms) {
                StateSet mi, ms;
                for (auto s : it.mi) mi = set_union(mi, successors(impl, s, x, Gamma::May));
                if (mi.empty()) continue;
                for (auto s : it.ms) ms = set_union(ms, successors(spec, s, x, Gamma::May));
                if (ms.empty()) continue;
                SuspensionTrace t = it.trace;
                t.push_back(x);
                next.push_back({std::move(t), std::move(mi), std::move(ms)});
            }
        level = std::move(next);
    }
    return {};
}

namespace {

bool related(const std::vector<char>& rel, std::size_t nq, StateId p, StateId q) { return rel[p * nq + q] != 0; }

bool pair_ok(const IrMia& P, const IrMia& Q, const std::vector<char>& rel, StateId p, StateId q) {
    const std::size_t nq = Q.num_states();
    auto any = [&](const StateSet& ps, StateId q2) {
        for (auto p2 : ps)
            if (related(rel, nq, p2, q2)) return true;
        return false;
    };
    auto any_q = [&](StateId p2, const StateSet& qs) {
        for (auto q2 : qs)
            if (related(rel, nq, p2, q2)) return true;
        return false;
    };
    auto to_p = [&](ActionId x) { return Q.is_tau(x) ? P.tau() : *P.find_action(Q.action_name(x)); };
    auto to_q = [&](ActionId x) { return P.is_tau(x) ? Q.tau() : *Q.find_action(P.action_name(x)); };
    if (q == Q.failure()) return false;
    for (const Edge& e : Q.edges()) {
        if (e.src != q) continue;
        ActionId x = to_p(e.action);
        if (Q.is_input(e.action)) {
            if (e.mod == Modality::Must && e.dst != Q.failure()) {
                StateSet ps = P.step_then_closure(p, x, Gamma::Must);
                std::erase(ps, P.failure());
                if (!any(ps, e.dst)) return false;
            }
            if (!any(P.step_then_closure(p, x, Gamma::May), e.dst)) return false;
        } else if (e.mod == Modality::Must) {
            StateSet ps = Q.is_tau(e.action) ? P.closure(p, Gamma::Must) : P.weak_step(p, x, Gamma::Must);
            if (!any(ps, e.dst)) return false;
        }
    }
    for (const Edge& e : P.edges()) {
        if (e.src != p) continue;
        ActionId y = to_q(e.action);
        if (P.is_input(e.action)) {
            if (Q.step(q, y, Gamma::May).empty()) continue;
            if (!any_q(e.dst, Q.step_then_closure(q, y, Gamma::May))) return false;
        } else {
            StateSet qs = P.is_tau(e.action) ? Q.closure(q, Gamma::May) : Q.weak_step(q, y, Gamma::May);
            if (!any_q(e.dst, qs)) return false;
        }
    }
    return true;
}

}  // namespace

RefinementVerdict refines_bruteforce(const IrMia& impl, const IrMia& spec) {
    if (!impl.alphabet().same_sets(spec.alphabet()))
        throw std::invalid_argument("refinement requires identical input and output alphabets");
    const std::size_t np = impl.num_states(), nq = spec.num_states();
    if (np * nq > kBruteForceBound) throw std::invalid_argument("operands too large for exhaustive relation search");
    std::vector<std::pair<StateId, StateId>> free;
    for (StateId p = 0; p < np; ++p)
        for (StateId q = 0; q < nq; ++q)
            if (p != impl.failure() && q != spec.failure()) free.push_back({p, q});
    RefinementVerdict v;
    StatePair init{impl.initial(), spec.initial()};
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
        std::vector<char> rel(np * nq, 0);
        for (StateId q = 0; q < nq; ++q) rel[impl.failure() * nq + q] = 1;
        for (std::size_t k = 0; k < free.size(); ++k)
            if (mask >> k & 1) rel[free[k].first * nq + free[k].second] = 1;
        if (!rel[init.first * nq + init.second]) continue;
        bool ok = true;
        for (std::size_t k = 0; k < free.size() && ok; ++k)
            if (mask >> k & 1) ok = pair_ok(impl, spec, rel, free[k].first, free[k].second);
        if (!ok) continue;
        v.holds = true;
        for (StateId p = 0; p < np; ++p)
            for (StateId q = 0; q < nq; ++q)
                if (rel[p * nq + q]) v.witness.push_back({p, q});
        return v;
    }
    return v;
}

}  // namespace irmia
