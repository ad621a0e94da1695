#pragma once

#include "irmia/conformance.hpp"
#include "irmia/model.hpp"
#include "irmia/refinement.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace irmia {

enum class EnabledFlavor { None, WeakMay, StrongMay, WeakMust, StrongMust };

struct GeneratorConfig {
    std::size_t min_states = 2;  // without the failure state
    std::size_t max_states = 5;
    // Used when alphabet is empty: actions i0.. and o0..
    std::size_t num_inputs = 2;
    std::size_t num_outputs = 2;
    std::optional<ActionAlphabet> alphabet;
    double edge_density = 0.4;  // chance per (state, action) of having an edge
    double must_prob = 0.5;
    double refusal_prob = 0.1;  // chance per (state, input) of a refusal
    double tau_prob = 0.1;
    double nondet_prob = 0.1;   // chance of a second target
    EnabledFlavor enabled = EnabledFlavor::None;
    std::uint64_t seed = 1;
};

// Throws std::invalid_argument for inconsistent configs.
IrMia random_irmia(const GeneratorConfig& cfg);

enum class Mutation { PromoteMay, DropMayOutput, RefuseInput, AddInput, InsertTau };

// Applies one mutation of the given kind at a random applicable site; nullopt if none applies.
std::optional<IrMia> mutate(const IrMia& a, Mutation kind, std::mt19937_64& rng);

// A chain of `steps` refinement-preserving mutations. Throws std::logic_error
// if the result does not refine the input.
IrMia random_refinement(const IrMia& a, std::uint64_t seed, std::size_t steps = 3);

using TraceSet = std::set<SuspensionTrace>;

// Suspension traces of length <= depth, by expanding single states.
TraceSet enum_straces(const IrMia& a, std::size_t depth, Gamma g);

// Both conformance conditions on every trace up to depth, recomputing after-sets per trace.
ConformanceVerdict irioco_bounded(const IrMia& impl, const IrMia& spec, std::size_t depth,
                                  ConformanceOptions opt = {});

inline constexpr std::size_t kBruteForceBound = 20;

// Searches all candidate relations. Throws std::invalid_argument when
// |impl|*|spec| exceeds kBruteForceBound.
RefinementVerdict refines_bruteforce(const IrMia& impl, const IrMia& spec);

}  // namespace irmia
