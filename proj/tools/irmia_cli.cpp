// Command-line front end for the irmia library.
// Exit codes: 0 holds/defined, 1 does not hold, 2 usage, parse or precondition error.

#include "irmia/compose.hpp"
#include "irmia/conformance.hpp"
#include "irmia/conjunction.hpp"
#include "irmia/iofmt.hpp"
#include "irmia/model.hpp"
#include "irmia/oracle.hpp"
#include "irmia/quotient.hpp"
#include "irmia/refinement.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::json;
using namespace irmia;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

IrMia load(const std::string& path) {
    try {
        return parse(read_text(path));
    } catch (const ParseError& e) {
        throw UsageError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
    } catch (const InvalidAutomaton& e) {
        throw UsageError(path + ": " + e.what());
    }
}

void emit_automaton(const IrMia& a, const std::string& out) {
    if (out.empty())
        std::cout << serialize(a);
    else
        save_file(a, out);
}

void print_json(json j) { std::cout << j.dump(2) << "\n"; }

std::string pair_text(const IrMia& impl, const IrMia& spec, StatePair p) {
    return "(" + impl.state_name(p.first) + "," + spec.state_name(p.second) + ")";
}

int report_conformance(const std::string& command, const ConformanceVerdict& v, bool as_json) {
    if (as_json) {
        json j{{"command", command}, {"verdict", v.holds ? "pass" : "fail"}};
        if (!v.holds)
            j["counterexample"] = {{"condition", v.condition},
                                   {"trace", v.trace},
                                   {"rendered", render_trace(v.trace)},
                                   {"observation", render_observation(v.observation)}};
        print_json(j);
    } else if (v.holds) {
        std::cout << "PASS\n";
    } else {
        std::cout << "FAIL cond=" << v.condition << " trace=" << render_trace(v.trace)
                  << (v.condition == 1 ? " unexpected=" : " missing=") << render_observation(v.observation) << "\n";
    }
    return v.holds ? 0 : 1;
}

int fuzz(std::uint64_t seed, const std::string& check, std::size_t count, bool as_json) {
    json failures = json::array();
    for (std::size_t k = 0; k < count; ++k) {
        std::uint64_t s = seed + k;
        GeneratorConfig cfg;
        cfg.seed = s;
        cfg.min_states = 2;
        cfg.max_states = check == "refines" ? 4 : 6;
        cfg.num_inputs = 1;
        cfg.num_outputs = 2;
        cfg.enabled = check == "irioco" ? EnabledFlavor::WeakMay : EnabledFlavor::None;
        IrMia a = random_irmia(cfg);
        cfg.seed = s ^ 0x9e3779b97f4a7c15ULL;
        cfg.enabled = EnabledFlavor::None;
        if (check == "refines") cfg.max_states = std::max<std::size_t>(2, kBruteForceBound / a.num_states() - 1);
        IrMia b = random_irmia(cfg);
        bool agree;
        if (check == "refines") {
            if (a.num_states() * b.num_states() > kBruteForceBound) continue;
            agree = refines(a, b).holds == refines_bruteforce(a, b).holds;
        } else {
            auto fast = irioco(a, b);
            auto slow = irioco_bounded(a, b, 8);
            agree = fast.holds ? slow.holds
                               : (fast.trace.size() > 8 ? slow.holds
                                                        : !slow.holds && slow.trace == fast.trace &&
                                                              slow.condition == fast.condition);
        }
        if (!agree) {
            failures.push_back(s);
            if (!as_json) std::cout << "DISAGREE seed=" << s << "\n";
        }
    }
    if (as_json)
        print_json({{"command", "fuzz"}, {"verdict", failures.empty() ? "agree" : "disagree"}, {"seed", seed},
                    {"disagreements", failures}});
    else if (failures.empty())
        std::cout << "AGREE " << count << " cases from seed " << seed << "\n";
    return failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IR-MIA refinement, conformance and interface operators"};
    app.require_subcommand(1);
    std::string f1, f2, out, mode = "multicast", check = "irioco", labels;
    bool as_json = false, assume_enabled = false;
    std::uint64_t seed = 1;
    std::size_t count = 100;

    auto add_json = [&](CLI::App* c) { c->add_flag("--json", as_json, "machine-readable output"); };
    auto one = [&](const char* name, const char* help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("file", f1)->required();
        add_json(c);
        return c;
    };
    auto two = [&](const char* name, const char* help, const char* a, const char* b) {
        auto* c = app.add_subcommand(name, help);
        c->add_option(a, f1)->required();
        c->add_option(b, f2)->required();
        add_json(c);
        return c;
    };

    auto* c_validate = one("validate", "check well-formedness");
    auto* c_info = one("info", "enabledness and predicate summary");
    auto* c_refines = two("refines", "modal refinement impl <= spec", "impl", "spec");
    auto* c_irioco = two("irioco", "modal conformance", "impl", "spec");
    c_irioco->add_flag("--assume-enabled", assume_enabled, "silence the input-enabledness warning");
    auto* c_ioco = two("ioco", "conformance on may-transitions only", "impl", "spec");
    c_ioco->add_flag("--assume-enabled", assume_enabled, "silence the input-enabledness warning");
    auto* c_compose = two("compose", "parallel composition", "a", "b");
    c_compose->add_option("--mode", mode, "multicast or hiding")->check(CLI::IsMember({"multicast", "hiding"}));
    c_compose->add_option("-o", out, "output file");
    auto* c_hide = one("hide", "relabel outputs to tau");
    c_hide->add_option("--labels", labels, "comma separated outputs");
    c_hide->add_option("-o", out, "output file");
    auto* c_quotient = two("quotient", "synthesize the missing component", "p", "d");
    c_quotient->add_option("-o", out, "output file");
    auto* c_conjoin = two("conjoin", "conjunction", "a", "b");
    c_conjoin->add_option("-o", out, "output file");
    auto* c_complete = one("complete", "demonic completion");
    c_complete->add_option("-o", out, "output file");
    auto* c_iso = two("iso", "isomorphism check", "a", "b");
    auto* c_dot = one("dot", "Graphviz export");
    c_dot->add_option("-o", out, "output file");
    auto* c_fuzz = app.add_subcommand("fuzz", "cross-check against the brute-force oracles");
    c_fuzz->add_option("--seed", seed)->required();
    c_fuzz->add_option("--check", check)->required()->check(CLI::IsMember({"irioco", "refines"}));
    c_fuzz->add_option("--count", count, "number of generated pairs");
    add_json(c_fuzz);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_validate->parsed()) {
            Description d;
            try {
                d = parse_description(read_text(f1));
            } catch (const ParseError& e) {
                throw UsageError(f1 + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                                 e.what());
            }
            auto v = validate(d);
            if (as_json) {
                json errs = json::array();
                for (const auto& x : v) errs.push_back({{"rule", x.rule}, {"message", x.message}});
                print_json({{"command", "validate"}, {"verdict", v.empty() ? "valid" : "invalid"}, {"violations", errs}});
            } else if (v.empty()) {
                std::cout << "VALID\n";
            } else {
                for (const auto& x : v) std::cout << "INVALID " << x.rule << ": " << x.message << "\n";
            }
            return v.empty() ? 0 : 1;
        }
        if (c_info->parsed()) {
            IrMia a = load(f1);
            auto en = input_enabledness(a);
            std::vector<std::string> qmay, qmust, fmay;
            for (StateId s = 0; s < a.num_states(); ++s) {
                if (quiescent(a, s, Gamma::May)) qmay.push_back(a.state_name(s));
                if (quiescent(a, s, Gamma::Must)) qmust.push_back(a.state_name(s));
                if (failure_pred(a, s, Gamma::May)) fmay.push_back(a.state_name(s));
            }
            json j{{"command", "info"},
                   {"name", a.name()},
                   {"states", a.num_states()},
                   {"edges", a.edges().size()},
                   {"inputs", a.alphabet().inputs},
                   {"outputs", a.alphabet().outputs},
                   {"enabledness",
                    {{"weak_may", en.weak_may},
                     {"strong_may", en.strong_may},
                     {"weak_must", en.weak_must},
                     {"strong_must", en.strong_must}}},
                   {"quiescent_may", qmay},
                   {"quiescent_must", qmust},
                   {"failure_may", fmay}};
            if (as_json) {
                print_json(j);
            } else {
                auto join = [](const std::vector<std::string>& v) {
                    std::string r;
                    for (const auto& x : v) r += (r.empty() ? "" : ", ") + x;
                    return r;
                };
                std::cout << "name: " << a.name() << "\nstates: " << a.num_states() << "\nedges: " << a.edges().size()
                          << "\ninputs: " << join(a.alphabet().inputs) << "\noutputs: " << join(a.alphabet().outputs)
                          << "\nweak may-input-enabled: " << en.weak_may
                          << "\nstrong may-input-enabled: " << en.strong_may
                          << "\nweak must-input-enabled: " << en.weak_must
                          << "\nstrong must-input-enabled: " << en.strong_must << "\nmay-quiescent: " << join(qmay)
                          << "\nmust-quiescent: " << join(qmust) << "\nmay-failure: " << join(fmay) << "\n";
            }
            return 0;
        }
        if (c_refines->parsed()) {
            IrMia i = load(f1), s = load(f2);
            if (!i.alphabet().same_sets(s.alphabet())) throw UsageError("alphabets differ");
            auto v = refines(i, s);
            if (as_json) {
                json j{{"command", "refines"}, {"verdict", v.holds ? "holds" : "fails"}};
                if (v.counterexample)
                    j["counterexample"] = {{"pair", pair_text(i, s, v.counterexample->pair)},
                                           {"clause", v.counterexample->clause},
                                           {"action", v.counterexample->action}};
                print_json(j);
            } else if (v.holds) {
                std::cout << "HOLDS\n";
            } else {
                const auto& c = *v.counterexample;
                std::cout << "FAIL clause=" << c.clause << " pair=" << pair_text(i, s, c.pair)
                          << (c.action.empty() ? "" : " action=" + c.action) << "\n";
            }
            return v.holds ? 0 : 1;
        }
        if (c_irioco->parsed() || c_ioco->parsed()) {
            IrMia i = load(f1), s = load(f2);
            if (!i.alphabet().same_sets(s.alphabet()))
                throw UsageError("implementation and specification must share input and output alphabets");
            // toy implementations are often not input-enabled; say so and check anyway
            if (!assume_enabled && !input_enabledness(i).weak_may)
                std::cerr << "warning: '" << i.name() << "' is not weak may-input-enabled; checking anyway\n";
            ConformanceOptions opt{true};
            try {
                if (c_irioco->parsed()) return report_conformance("irioco", irioco(i, s, opt), as_json);
                return report_conformance("ioco", ioco_may(i, s, opt), as_json);
            } catch (const PreconditionError& e) {
                throw UsageError(e.what());
            }
        }
        if (c_compose->parsed()) {
            IrMia a = load(f1), b = load(f2);
            auto m = mode == "hiding" ? CompositionMode::Hiding : CompositionMode::Multicast;
            auto c = composable(a, b, m);
            if (!c.ok) throw UsageError("not composable: " + c.reason);
            auto r = parallel_compose(a, b, m);
            json report = json::array();
            for (const auto& e : r.pruning_report)
                report.push_back({{"state", e.state}, {"reason", to_string(e.reason)}, {"action", e.action}});
            if (as_json) {
                json j{{"command", "compose"},
                       {"verdict", r.compatible ? "compatible" : "incompatible"},
                       {"pruning_report", report}};
                if (out.empty()) j["automaton"] = serialize(r.automaton);
                else save_file(r.automaton, out);
                print_json(j);
            } else {
                std::cout << (r.compatible ? "COMPATIBLE" : "INCOMPATIBLE") << "\n";
                for (const auto& e : r.pruning_report)
                    std::cout << "pruned " << e.state << " " << to_string(e.reason)
                              << (e.action.empty() ? "" : " " + e.action) << "\n";
                emit_automaton(r.automaton, out);
            }
            return r.compatible ? 0 : 1;
        }
        if (c_hide->parsed()) {
            IrMia a = load(f1);
            std::vector<std::string> ls;
            std::stringstream ss(labels);
            for (std::string t; std::getline(ss, t, ',');)
                if (!t.empty()) ls.push_back(t);
            IrMia h = [&] {
                try {
                    return hide(a, ls);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                } catch (const InvalidAutomaton& e) {
                    throw UsageError(e.what());
                }
            }();
            emit_automaton(h, out);
            return 0;
        }
        if (c_quotient->parsed()) {
            IrMia p = load(f1), d = load(f2);
            auto r = quotient(p, d);
            if (!r.precondition_report.empty()) {
                for (const auto& x : r.precondition_report) std::cerr << "precondition: " << x << "\n";
                if (as_json)
                    print_json({{"command", "quotient"}, {"verdict", "error"}, {"preconditions", r.precondition_report}});
                return 2;
            }
            json g = json::array();
            for (const auto& e : r.impossible) g.push_back({{"state", e.state}, {"rule", e.rule}, {"action", e.action}});
            if (as_json) {
                json j{{"command", "quotient"}, {"verdict", r.defined ? "defined" : "undefined"}, {"pruning_report", g}};
                if (r.defined) {
                    if (out.empty()) j["automaton"] = serialize(*r.automaton);
                    else save_file(*r.automaton, out);
                }
                print_json(j);
            } else {
                std::cout << (r.defined ? "DEFINED" : "UNDEFINED") << "\n";
                for (const auto& e : r.impossible) std::cout << "impossible " << e.state << " " << e.rule << " " << e.action << "\n";
                if (r.defined) emit_automaton(*r.automaton, out);
            }
            return r.defined ? 0 : 1;
        }
        if (c_conjoin->parsed()) {
            IrMia a = load(f1), b = load(f2);
            if (!a.alphabet().same_sets(b.alphabet())) throw UsageError("alphabets differ");
            auto r = conjoin(a, b);
            json f = json::array();
            for (const auto& e : r.inconsistent) f.push_back({{"state", e.state}, {"rule", e.rule}, {"action", e.action}});
            if (as_json) {
                json j{{"command", "conjoin"}, {"verdict", r.defined ? "defined" : "undefined"}, {"pruning_report", f}};
                if (r.defined) {
                    if (out.empty()) j["automaton"] = serialize(*r.automaton);
                    else save_file(*r.automaton, out);
                }
                print_json(j);
            } else {
                std::cout << (r.defined ? "DEFINED" : "UNDEFINED") << "\n";
                for (const auto& e : r.inconsistent)
                    std::cout << "inconsistent " << e.state << " " << e.rule << " " << e.action << "\n";
                if (r.defined) emit_automaton(*r.automaton, out);
            }
            return r.defined ? 0 : 1;
        }
        if (c_complete->parsed()) {
            IrMia a = load(f1);
            try {
                emit_automaton(demonic_completion(a), out);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            return 0;
        }
        if (c_iso->parsed()) {
            IrMia a = load(f1), b = load(f2);
            bool iso = isomorphic(a, b).isomorphic;
            if (as_json)
                print_json({{"command", "iso"}, {"verdict", iso ? "isomorphic" : "not-isomorphic"}});
            else
                std::cout << (iso ? "ISOMORPHIC" : "NOT ISOMORPHIC") << "\n";
            return iso ? 0 : 1;
        }
        if (c_dot->parsed()) {
            IrMia a = load(f1);
            if (out.empty()) {
                std::cout << to_dot(a);
            } else {
                std::ofstream o(out, std::ios::binary);
                if (!o) throw UsageError("cannot write '" + out + "'");
                o << to_dot(a);
            }
            return 0;
        }
        if (c_fuzz->parsed()) return fuzz(seed, check, count, as_json);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
