#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pnsynth/lts.hpp"

namespace pnsynth {

using Tokens = std::int64_t;
using Marking = std::vector<Tokens>;  // indexed by place id
using PlaceId = std::uint32_t;
using TransId = std::uint32_t;

inline constexpr std::size_t kDefaultMaxStates = 1'000'000;

// Weighted place/transition net. Places and transitions keep their
// declaration order; flow is stored densely per transition.
class PetriNet {
public:
    PlaceId add_place(const std::string& name, Tokens initial = 0);
    TransId add_transition(const std::string& name);
    void set_pre(PlaceId p, TransId t, Tokens w);   // F(p,t)
    void set_post(TransId t, PlaceId p, Tokens w);  // F(t,p)

    std::size_t num_places() const { return places_.size(); }
    std::size_t num_transitions() const { return transitions_.size(); }
    const std::string& place_name(PlaceId p) const { return places_[p]; }
    const std::string& transition_name(TransId t) const { return transitions_[t]; }
    const std::vector<std::string>& place_names() const { return places_; }
    const std::vector<std::string>& transition_names() const { return transitions_; }
    std::optional<PlaceId> find_place(const std::string& n) const;
    std::optional<TransId> find_transition(const std::string& n) const;
    TransId transition(const std::string& n) const;  // throws UnknownTransition

    Tokens pre(PlaceId p, TransId t) const { return pre_[t][p]; }
    Tokens post(TransId t, PlaceId p) const { return post_[t][p]; }
    const Marking& initial_marking() const { return m0_; }
    void set_initial(PlaceId p, Tokens k) { m0_[p] = k; }

private:
    std::vector<std::string> places_, transitions_;
    std::unordered_map<std::string, std::uint32_t> place_idx_, trans_idx_;
    Marking m0_;
    std::vector<std::vector<Tokens>> pre_, post_;  // [t][p]
};

using IncidenceMatrix = std::vector<std::vector<Tokens>>;  // [p][t]

IncidenceMatrix incidence(const PetriNet& net);

bool enabled(const PetriNet& net, const Marking& m, const std::string& t);
bool enabled(const PetriNet& net, const Marking& m, TransId t);
Marking fire(const PetriNet& net, const Marking& m, const std::string& t);
Marking fire(const PetriNet& net, const Marking& m, TransId t);

struct ReachabilityGraph {
    Lts lts;                       // states "m0","m1",..., labels = transitions
    std::vector<Marking> markings;  // by state id
};

ReachabilityGraph explore(const PetriNet& net, std::size_t max_states = kDefaultMaxStates);
Lts reachability_graph(const PetriNet& net, std::size_t max_states = kDefaultMaxStates);

PetriNet disjoint_sum(const PetriNet& a, const PetriNet& b);

// Side-condition composition around marking m of a. `reachable_markings`
// is an optional certificate (all reachable markings of a); without it a's
// reachability graph is computed.
PetriNet articulate_pn(const PetriNet& a, const Marking& m, const PetriNet& b,
                       const std::vector<Marking>* reachable_markings = nullptr);

PetriNet add_complement_places(const PetriNet& net, const ReachabilityGraph& rg);
PetriNet add_complement_places(const PetriNet& net, const Lts& rg);

// m strictly below some element of others
bool is_dominated(const Marking& m, const std::vector<Marking>& others);
Tokens k_bound(const PetriNet& net, std::size_t max_states = kDefaultMaxStates);

// net without the named transition (and its arcs)
PetriNet remove_transition(const PetriNet& net, const std::string& t);

}  // namespace pnsynth
