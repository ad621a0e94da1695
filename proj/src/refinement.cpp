#include "irmia/refinement.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace irmia {

namespace {

std::vector<ActionId> action_map(const IrMia& from, const IrMia& to) {
    std::vector<ActionId> m(from.num_actions() + 1);
    for (ActionId a = 0; a <= from.num_actions(); ++a) m[a] = *to.find_action(from.action_name(a));
    return m;
}

bool in_rel(const IrMia& impl, const IrMia& spec, const std::vector<char>& rel, StateId p, StateId q) {
    if (p == impl.failure()) return true;
    return rel[p * spec.num_states() + q] != 0;
}

// Pairs that could discharge the violated clause; used to walk towards the root cause.
struct Violated {
    int clause = 0;
    ActionId spec_action = 0;
    std::vector<StatePair> candidates;
};

Violated find_violation(const IrMia& impl, const IrMia& spec, const std::vector<ActionId>& to_impl,
                        const std::vector<ActionId>& to_spec, StateId p, StateId q, const std::vector<char>& rel) {
    Violated v;
    auto any_related = [&](const StateSet& ps, StateId q2, bool exclude_failure) {
        for (auto p2 : ps)
            if (!(exclude_failure && p2 == impl.failure()) && in_rel(impl, spec, rel, p2, q2)) return true;
        return false;
    };
    auto any_related_spec = [&](StateId p2, const StateSet& qs) {
        for (auto q2 : qs)
            if (in_rel(impl, spec, rel, p2, q2)) return true;
        return false;
    };
    auto fail = [&](int clause, ActionId a, std::vector<StatePair> cands) {
        v.clause = clause;
        v.spec_action = a;
        v.candidates = std::move(cands);
    };
    auto pairs_of = [](const StateSet& ps, StateId q2) {
        std::vector<StatePair> r;
        for (auto p2 : ps) r.push_back({p2, q2});
        return r;
    };

    // clauses 2 and 3: mandatory spec behaviour must be matched by mandatory impl behaviour
    for (auto k : spec.out_edges(q)) {
        const Edge& e = spec.edges()[k];
        if (e.mod != Modality::Must) continue;
        ActionId ai = to_impl[e.action];
        if (spec.is_input(e.action)) {
            if (e.dst == spec.failure()) continue;
            StateSet ps = impl.step_then_closure(p, ai, Gamma::Must);
            if (!any_related(ps, e.dst, true)) {
                ps.erase(std::remove(ps.begin(), ps.end(), impl.failure()), ps.end());
                fail(2, e.action, pairs_of(ps, e.dst));
                return v;
            }
        } else {
            StateSet ps = spec.is_tau(e.action) ? impl.closure(p, Gamma::Must) : impl.weak_step(p, ai, Gamma::Must);
            if (!any_related(ps, e.dst, false)) {
                fail(3, e.action, pairs_of(ps, e.dst));
                return v;
            }
        }
    }
    // clause 4: optional impl inputs where the spec also offers the input
    for (auto k : impl.out_edges(p)) {
        const Edge& e = impl.edges()[k];
        if (!impl.is_input(e.action)) continue;
        ActionId as = to_spec[e.action];
        if (!spec.enables(q, as, Gamma::May)) continue;
        StateSet qs = spec.step_then_closure(q, as, Gamma::May);
        if (!any_related_spec(e.dst, qs)) {
            std::vector<StatePair> c;
            for (auto q2 : qs) c.push_back({e.dst, q2});
            fail(4, as, c);
            return v;
        }
    }
    // clause 5: every optional spec input must be answered (possibly by a refusal)
    for (auto k : spec.out_edges(q)) {
        const Edge& e = spec.edges()[k];
        if (!spec.is_input(e.action)) continue;
        StateSet ps = impl.step_then_closure(p, to_impl[e.action], Gamma::May);
        if (!any_related(ps, e.dst, false)) {
            fail(5, e.action, pairs_of(ps, e.dst));
            return v;
        }
    }
    // clause 6: impl outputs and tau must be permitted by the spec
    for (auto k : impl.out_edges(p)) {
        const Edge& e = impl.edges()[k];
        if (impl.is_input(e.action)) continue;
        ActionId as = to_spec[e.action];
        StateSet qs = impl.is_tau(e.action) ? spec.closure(q, Gamma::May) : spec.weak_step(q, as, Gamma::May);
        if (!any_related_spec(e.dst, qs)) {
            std::vector<StatePair> c;
            for (auto q2 : qs) c.push_back({e.dst, q2});
            fail(6, as, c);
            return v;
        }
    }
    return v;
}

}  // namespace

ClauseCheck check_refinement_clauses(const IrMia& impl, const IrMia& spec, StateId p, StateId q,
                                     const std::vector<char>& rel) {
    auto to_impl = action_map(spec, impl);
    auto to_spec = action_map(impl, spec);
    Violated v = find_violation(impl, spec, to_impl, to_spec, p, q, rel);
    return {v.clause, v.spec_action};
}

RefinementVerdict refines(const IrMia& impl, const IrMia& spec) {
    if (!impl.alphabet().same_sets(spec.alphabet()))
        throw std::invalid_argument("refinement requires identical input and output alphabets");
    const std::size_t np = impl.num_states(), nq = spec.num_states();
    auto to_impl = action_map(spec, impl);
    auto to_spec = action_map(impl, spec);

    std::vector<char> rel(np * nq, 0);
    for (StateId p = 0; p < np; ++p)
        for (StateId q = 0; q < nq; ++q)
            rel[p * nq + q] = p == impl.failure() || q != spec.failure();

    constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> round_of(np * nq, kNever);
    std::vector<Violated> why(np * nq);
    for (std::size_t round = 0;; ++round) {
        std::vector<std::size_t> pruned;
        for (StateId p = 0; p < np; ++p) {
            if (p == impl.failure()) continue;
            for (StateId q = 0; q < nq; ++q) {
                if (!rel[p * nq + q]) continue;
                Violated v = find_violation(impl, spec, to_impl, to_spec, p, q, rel);
                if (v.clause) {
                    pruned.push_back(p * nq + q);
                    why[p * nq + q] = std::move(v);
                }
            }
        }
        if (pruned.empty()) break;
        for (auto k : pruned) {
            rel[k] = 0;
            round_of[k] = round;
        }
    }

    RefinementVerdict verdict;
    StateId p = impl.initial(), q = spec.initial();
    if (in_rel(impl, spec, rel, p, q)) {
        verdict.holds = true;
        for (StateId x = 0; x < np; ++x)
            for (StateId y = 0; y < nq; ++y)
                if (rel[x * nq + y]) verdict.witness.push_back({x, y});
        return verdict;
    }
    if (q == spec.failure()) {
        verdict.counterexample = RefinementCounterexample{{p, q}, 1, ""};
        return verdict;
    }
    // walk from the initial pair to a pair whose violation is local
    while (round_of[p * nq + q] != 0) {
        const Violated& v = why[p * nq + q];
        // follow the candidate that survived longest: it is the closest match
        StatePair next{p, q};
        bool found = false;
        std::size_t best = 0;
        for (auto [p2, q2] : v.candidates) {
            std::size_t r = round_of[p2 * nq + q2];
            if (p2 == impl.failure() || r == kNever) continue;
            if (!found || r > best) {
                best = r;
                next = {p2, q2};
                found = true;
            }
        }
        if (!found) break;
        p = next.first;
        q = next.second;
    }
    const Violated& v = why[p * nq + q];
    verdict.counterexample = RefinementCounterexample{{p, q}, v.clause, spec.action_name(v.spec_action)};
    return verdict;
}

}  // namespace irmia
