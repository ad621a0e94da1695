#include "generators.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace irmia::testing {

IrMia gen(std::uint64_t seed, const ActionAlphabet& alpha, std::size_t max_states, EnabledFlavor f,
          double must_prob, double refusal_prob, double tau_prob) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.alphabet = alpha;
    cfg.min_states = 1;
    cfg.max_states = max_states;
    cfg.enabled = f;
    cfg.must_prob = must_prob;
    cfg.refusal_prob = refusal_prob;
    cfg.tau_prob = tau_prob;
    return random_irmia(cfg);
}

IrMia strong_must_enable(const IrMia& a) {
    Description d = a.describe();
    for (auto& e : d.edges)
        if (d.alphabet.has_input(e.action)) e.mod = Modality::Must;
    std::string sink;
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (s == a.failure()) continue;
        for (auto i : a.inputs()) {
            if (a.enables(s, i, Gamma::May)) continue;
            if (sink.empty()) {
                sink = fresh_name("sink", d.states);
                d.states.push_back(sink);
            }
            d.edges.push_back({a.state_name(s), a.action_name(i), sink, Modality::Must});
        }
    }
    if (!sink.empty())
        for (const auto& i : d.alphabet.inputs) d.edges.push_back({sink, i, sink, Modality::Must});
    return IrMia(d);
}

IrMia promote_outputs(const IrMia& a, std::mt19937_64& rng, double p) {
    Description d = a.describe();
    std::bernoulli_distribution coin(p);
    for (auto& e : d.edges)
        if (d.alphabet.has_output(e.action) && e.mod == Modality::MayOnly && coin(rng)) e.mod = Modality::Must;
    return IrMia(d);
}

IrMia must_taus(const IrMia& a) {
    Description d = a.describe();
    for (auto& e : d.edges)
        if (e.action == kTauName) e.mod = Modality::Must;
    return IrMia(d);
}

IrMia drop_refusals(const IrMia& a, const std::vector<std::string>& inputs) {
    Description d = a.describe();
    for (auto& e : d.edges)
        if (e.dst == d.failure && std::find(inputs.begin(), inputs.end(), e.action) != inputs.end()) e.dst = e.src;
    return IrMia(d);
}

IrMia drop_taus(const IrMia& a) {
    Description d = a.describe();
    std::erase_if(d.edges, [](const auto& e) { return e.action == kTauName; });
    return IrMia(d);
}

IrMia determinize_edges(const IrMia& a) {
    Description d = a.describe();
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<Description::RawEdge> kept;
    for (const auto& e : d.edges)
        if (seen.insert({e.src, e.action}).second) kept.push_back(e);
    d.edges = std::move(kept);
    return IrMia(d);
}

std::vector<ActionAlphabet> composable_alphabets(std::mt19937_64& rng, std::size_t count, std::size_t pool,
                                                 bool no_shared_inputs) {
    std::vector<ActionAlphabet> r(count);
    std::uniform_int_distribution<std::size_t> owner(0, count);  // count = nobody outputs it
    std::bernoulli_distribution coin(0.5);
    for (std::size_t k = 0; k < pool; ++k) {
        std::string a = "a" + std::to_string(k);
        std::size_t o = owner(rng);
        if (o < count) r[o].outputs.push_back(a);
        std::vector<std::size_t> readers;
        for (std::size_t j = 0; j < count; ++j)
            if (j != o && coin(rng)) readers.push_back(j);
        if (no_shared_inputs && readers.size() > 1)
            readers = {readers[std::uniform_int_distribution<std::size_t>(0, readers.size() - 1)(rng)]};
        for (auto j : readers) r[j].inputs.push_back(a);
    }
    return r;
}

ActionAlphabet small_alphabet(std::size_t inputs, std::size_t outputs) {
    ActionAlphabet a;
    for (std::size_t k = 0; k < inputs; ++k) a.inputs.push_back("i" + std::to_string(k));
    for (std::size_t k = 0; k < outputs; ++k) a.outputs.push_back("o" + std::to_string(k));
    return a;
}

std::vector<std::string> fed_inputs(const ActionAlphabet& a, const ActionAlphabet& b) {
    std::vector<std::string> r;
    for (const auto& i : a.inputs)
        if (b.has_output(i)) r.push_back(i);
    return r;
}

}  // namespace irmia::testing
