#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pnsynth/lts.hpp"
#include "pnsynth/petri_net.hpp"
#include "pnsynth/region.hpp"

namespace pnsynth {

struct SynthesisOptions {
    bool use_cache = true;
    bool parallel = true;  // OpenMP kernels and component-level parallelism
    bool verify = false;
    std::size_t max_states = kDefaultMaxStates;
};

struct SynthesisReport {
    enum class Outcome { Solved, Unsolvable, Rejected };
    Outcome outcome = Outcome::Rejected;
    std::optional<PetriNet> net;
    std::optional<SeparationProblem> witness;  // ids relative to the system it was found in
    std::string witness_text;                  // e.g. "ESSP(s3, a)", or a product mismatch
    std::string rejected_check;
    std::size_t regions_used = 0;
    std::size_t problems_reused = 0;
    std::size_t problems_solved = 0;  // LP runs that produced a new region
    double elapsed_ms = 0;
    bool verified = false;
    std::string method;                 // how the result was obtained
    std::vector<Marking> markings;      // marking per input state, when computed

    bool solved() const { return outcome == Outcome::Solved; }
};

std::string to_string(SynthesisReport::Outcome o);

// Name of the first failing check or nullopt. Checks, in order:
// total-reachability, forward-determinism, backward-determinism, useless-labels.
std::optional<std::string> presynthesis(const Lts& lts);

SynthesisReport synthesize(const Lts& lts, const SynthesisOptions& opts = {});

// Solution whose marking at s (resp. each listed state) is not dominated.
SynthesisReport synthesize_adequate(const Lts& lts, const std::string& s, const SynthesisOptions& opts = {});
SynthesisReport synthesize_adequate_at(const Lts& lts, const std::vector<StateId>& states,
                                       const SynthesisOptions& opts = {});

bool verify(const PetriNet& net, const Lts& lts, std::size_t max_states = kDefaultMaxStates);

// Marking of every state of lts in net's reachability graph, if isomorphic.
std::optional<std::vector<Marking>> markings_by_state(const PetriNet& net, const Lts& lts,
                                                      std::size_t max_states = kDefaultMaxStates);

}  // namespace pnsynth
