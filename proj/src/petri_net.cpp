#include "pnsynth/petri_net.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "pnsynth/error.hpp"

namespace pnsynth {

PlaceId PetriNet::add_place(const std::string& name, Tokens initial) {
    if (initial < 0) throw InputError("negative initial marking on " + name);
    if (place_idx_.count(name) || trans_idx_.count(name)) throw InputError("duplicate net node " + name);
    PlaceId p = static_cast<PlaceId>(places_.size());
    place_idx_.emplace(name, p);
    places_.push_back(name);
    m0_.push_back(initial);
    for (auto& row : pre_) row.push_back(0);
    for (auto& row : post_) row.push_back(0);
    return p;
}

TransId PetriNet::add_transition(const std::string& name) {
    if (place_idx_.count(name) || trans_idx_.count(name)) throw InputError("duplicate net node " + name);
    TransId t = static_cast<TransId>(transitions_.size());
    trans_idx_.emplace(name, t);
    transitions_.push_back(name);
    pre_.emplace_back(places_.size(), 0);
    post_.emplace_back(places_.size(), 0);
    return t;
}

void PetriNet::set_pre(PlaceId p, TransId t, Tokens w) {
    if (w < 0) throw InputError("negative weight");
    pre_.at(t).at(p) = w;
}

void PetriNet::set_post(TransId t, PlaceId p, Tokens w) {
    if (w < 0) throw InputError("negative weight");
    post_.at(t).at(p) = w;
}

std::optional<PlaceId> PetriNet::find_place(const std::string& n) const {
    auto it = place_idx_.find(n);
    if (it == place_idx_.end()) return std::nullopt;
    return it->second;
}

std::optional<TransId> PetriNet::find_transition(const std::string& n) const {
    auto it = trans_idx_.find(n);
    if (it == trans_idx_.end()) return std::nullopt;
    return it->second;
}

TransId PetriNet::transition(const std::string& n) const {
    if (auto t = find_transition(n)) return *t;
    throw UnknownTransition("unknown transition " + n);
}

IncidenceMatrix incidence(const PetriNet& net) {
    IncidenceMatrix c(net.num_places(), std::vector<Tokens>(net.num_transitions(), 0));
    for (PlaceId p = 0; p < net.num_places(); ++p)
        for (TransId t = 0; t < net.num_transitions(); ++t) c[p][t] = net.post(t, p) - net.pre(p, t);
    return c;
}

bool enabled(const PetriNet& net, const Marking& m, TransId t) {
    if (t >= net.num_transitions()) throw UnknownTransition("transition id out of range");
    for (PlaceId p = 0; p < net.num_places(); ++p)
        if (m[p] < net.pre(p, t)) return false;
    return true;
}

bool enabled(const PetriNet& net, const Marking& m, const std::string& t) {
    return enabled(net, m, net.transition(t));
}

Marking fire(const PetriNet& net, const Marking& m, TransId t) {
    if (!enabled(net, m, t)) throw NotEnabled("transition " + net.transition_name(t) + " not enabled");
    Marking r(m);
    for (PlaceId p = 0; p < net.num_places(); ++p) r[p] += net.post(t, p) - net.pre(p, t);
    return r;
}

Marking fire(const PetriNet& net, const Marking& m, const std::string& t) { return fire(net, m, net.transition(t)); }

static bool strictly_below(const Marking& x, const Marking& y) {
    bool diff = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > y[i]) return false;
        if (x[i] < y[i]) diff = true;
    }
    return diff;
}

ReachabilityGraph explore(const PetriNet& net, std::size_t max_states) {
    std::map<Marking, StateId> seen;
    std::vector<Marking> marks{net.initial_marking()};
    std::vector<StateId> parent{0};
    std::vector<Arc> arcs;
    seen.emplace(net.initial_marking(), 0);
    for (StateId s = 0; s < marks.size(); ++s) {
        for (TransId t = 0; t < net.num_transitions(); ++t) {
            if (!enabled(net, marks[s], t)) continue;
            Marking next = fire(net, marks[s], t);
            auto it = seen.find(next);
            if (it == seen.end()) {
                // a marking strictly covering an ancestor can be pumped forever
                for (StateId anc = s;; anc = parent[anc]) {
                    if (strictly_below(marks[anc], next))
                        throw Unbounded("unbounded: marking after " + net.transition_name(t) +
                                        " from m" + std::to_string(s) + " covers m" + std::to_string(anc));
                    if (anc == 0) break;
                }
                if (marks.size() >= max_states)
                    throw StateCapExceeded("more than " + std::to_string(max_states) + " reachable markings");
                StateId id = static_cast<StateId>(marks.size());
                it = seen.emplace(std::move(next), id).first;
                marks.push_back(it->first);
                parent.push_back(s);
            }
            arcs.push_back({s, t, it->second});
        }
    }
    std::vector<std::string> names;
    names.reserve(marks.size());
    for (std::size_t i = 0; i < marks.size(); ++i) names.push_back("m" + std::to_string(i));
    return {Lts(std::move(names), net.transition_names(), 0, std::move(arcs)), std::move(marks)};
}

Lts reachability_graph(const PetriNet& net, std::size_t max_states) { return explore(net, max_states).lts; }

// copies b's places into r (renaming on clash) and returns the new ids
static std::vector<PlaceId> copy_places(PetriNet& r, const PetriNet& b, std::set<std::string>& taken) {
    std::vector<PlaceId> ids;
    for (PlaceId p = 0; p < b.num_places(); ++p) {
        auto n = fresh_name(b.place_name(p), taken);
        taken.insert(n);
        ids.push_back(r.add_place(n, b.initial_marking()[p]));
    }
    return ids;
}

static PetriNet union_nets(const PetriNet& a, const PetriNet& b, std::vector<PlaceId>& bplaces,
                           std::vector<TransId>& btrans) {
    for (auto& t : b.transition_names())
        if (a.find_transition(t)) throw TransitionOverlap("transition " + t + " occurs in both nets");
    PetriNet r;
    std::set<std::string> taken(a.transition_names().begin(), a.transition_names().end());
    taken.insert(b.transition_names().begin(), b.transition_names().end());
    for (PlaceId p = 0; p < a.num_places(); ++p) {
        taken.insert(a.place_name(p));
        r.add_place(a.place_name(p), a.initial_marking()[p]);
    }
    bplaces = copy_places(r, b, taken);
    for (auto& t : a.transition_names()) r.add_transition(t);
    btrans.clear();
    for (auto& t : b.transition_names()) btrans.push_back(r.add_transition(t));
    for (TransId t = 0; t < a.num_transitions(); ++t)
        for (PlaceId p = 0; p < a.num_places(); ++p) {
            r.set_pre(p, t, a.pre(p, t));
            r.set_post(t, p, a.post(t, p));
        }
    for (TransId t = 0; t < b.num_transitions(); ++t)
        for (PlaceId p = 0; p < b.num_places(); ++p) {
            r.set_pre(bplaces[p], btrans[t], b.pre(p, t));
            r.set_post(btrans[t], bplaces[p], b.post(t, p));
        }
    return r;
}

PetriNet disjoint_sum(const PetriNet& a, const PetriNet& b) {
    std::vector<PlaceId> bp;
    std::vector<TransId> bt;
    return union_nets(a, b, bp, bt);
}

PetriNet articulate_pn(const PetriNet& a, const Marking& m, const PetriNet& b,
                       const std::vector<Marking>* reachable_markings) {
    if (m.size() != a.num_places()) throw InputError("marking does not match the net");
    std::vector<Marking> computed;
    if (!reachable_markings) {
        computed = explore(a).markings;
        reachable_markings = &computed;
    }
    if (std::find(reachable_markings->begin(), reachable_markings->end(), m) == reachable_markings->end())
        throw Unreachable("articulation marking is not reachable");
    if (is_dominated(m, *reachable_markings)) throw NotAdequate("articulation marking is dominated");

    std::vector<PlaceId> bp;
    std::vector<TransId> bt;
    PetriNet r = union_nets(a, b, bp, bt);
    const Marking& m0b = b.initial_marking();
    for (TransId t1 = 0; t1 < a.num_transitions(); ++t1) {
        if (!enabled(a, m, t1)) continue;
        for (PlaceId p2 = 0; p2 < b.num_places(); ++p2)
            if (m0b[p2] > 0) {
                r.set_pre(bp[p2], t1, m0b[p2]);
                r.set_post(t1, bp[p2], m0b[p2]);
            }
    }
    for (TransId t2 = 0; t2 < b.num_transitions(); ++t2) {
        if (!enabled(b, m0b, t2)) continue;
        for (PlaceId p1 = 0; p1 < a.num_places(); ++p1)
            if (m[p1] > 0) {
                r.set_pre(p1, bt[t2], m[p1]);
                r.set_post(bt[t2], p1, m[p1]);
            }
    }
    return r;
}

PetriNet add_complement_places(const PetriNet& net, const ReachabilityGraph& rg) {
    PetriNet r = net;
    std::set<std::string> taken(net.place_names().begin(), net.place_names().end());
    taken.insert(net.transition_names().begin(), net.transition_names().end());
    for (PlaceId p = 0; p < net.num_places(); ++p) {
        Tokens k = 0, maxin = 0;
        for (auto& m : rg.markings) k = std::max(k, m[p]);
        for (TransId t = 0; t < net.num_transitions(); ++t) maxin = std::max(maxin, net.post(t, p));
        auto name = fresh_name(net.place_name(p) + "_c", taken);
        taken.insert(name);
        PlaceId q = r.add_place(name, k - net.initial_marking()[p] + maxin);
        for (TransId t = 0; t < net.num_transitions(); ++t) {
            r.set_post(t, q, net.pre(p, t));
            r.set_pre(q, t, net.post(t, p));
        }
    }
    return r;
}

PetriNet add_complement_places(const PetriNet& net, const Lts&) {
    // the markings are not stored in a bare graph; recompute them
    return add_complement_places(net, explore(net));
}

bool is_dominated(const Marking& m, const std::vector<Marking>& others) {
    return std::any_of(others.begin(), others.end(), [&](const Marking& o) { return strictly_below(m, o); });
}

Tokens k_bound(const PetriNet& net, std::size_t max_states) {
    Tokens k = 0;
    for (auto& m : explore(net, max_states).markings)
        for (auto v : m) k = std::max(k, v);
    return k;
}

PetriNet remove_transition(const PetriNet& net, const std::string& name) {
    TransId drop = net.transition(name);
    PetriNet r;
    for (PlaceId p = 0; p < net.num_places(); ++p) r.add_place(net.place_name(p), net.initial_marking()[p]);
    for (TransId t = 0; t < net.num_transitions(); ++t) {
        if (t == drop) continue;
        TransId u = r.add_transition(net.transition_name(t));
        for (PlaceId p = 0; p < net.num_places(); ++p) {
            r.set_pre(p, u, net.pre(p, t));
            r.set_post(u, p, net.post(t, p));
        }
    }
    return r;
}

}  // namespace pnsynth
