#include "pnsynth/synthesis.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "pnsynth/error.hpp"

namespace pnsynth {

std::string to_string(SynthesisReport::Outcome o) {
    switch (o) {
        case SynthesisReport::Outcome::Solved: return "Solved";
        case SynthesisReport::Outcome::Unsolvable: return "Unsolvable";
        case SynthesisReport::Outcome::Rejected: return "Rejected";
    }
    return "?";
}

std::optional<std::string> presynthesis(const Lts& lts) {
    if (!is_totally_reachable(lts)) return "total-reachability";
    if (!is_forward_deterministic(lts)) return "forward-determinism";
    if (!is_backward_deterministic(lts)) return "backward-determinism";
    if (useful_labels(lts).size() != lts.num_labels()) return "useless-labels";
    return std::nullopt;
}

static double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

SynthesisReport synthesize(const Lts& lts, const SynthesisOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    SynthesisReport rep;
    rep.method = "mono";
    if (auto bad = presynthesis(lts)) {
        rep.outcome = SynthesisReport::Outcome::Rejected;
        rep.rejected_check = *bad;
        rep.elapsed_ms = ms_since(t0);
        return rep;
    }
    RegionSolver solver(lts, opts.parallel);
    std::vector<Region> regions;
    auto handle = [&](const SeparationProblem& p) {
        if (opts.use_cache) {
            auto k = opts.parallel ? find_solving_parallel(regions, p) : find_solving_serial(regions, p);
            if (k < regions.size()) {
                ++rep.problems_reused;
                return true;
            }
        }
        auto r = solver.solve(p);
        if (!r) {
            rep.outcome = SynthesisReport::Outcome::Unsolvable;
            rep.witness = p;
            rep.witness_text = describe(lts, p);
            return false;
        }
        ++rep.problems_solved;
        if (std::find(regions.begin(), regions.end(), *r) == regions.end()) regions.push_back(std::move(*r));
        return true;
    };
    for (auto& p : enumerate_essp(lts))
        if (!handle(p)) {
            rep.elapsed_ms = ms_since(t0);
            return rep;
        }
    for (auto& p : enumerate_ssp(lts))
        if (!handle(p)) {
            rep.elapsed_ms = ms_since(t0);
            return rep;
        }
    rep.outcome = SynthesisReport::Outcome::Solved;
    rep.net = net_from_regions(lts, regions);
    rep.regions_used = regions.size();
    rep.elapsed_ms = ms_since(t0);
    if (opts.verify) rep.verified = verify(*rep.net, lts, opts.max_states);
    return rep;
}

std::optional<std::vector<Marking>> markings_by_state(const PetriNet& net, const Lts& lts, std::size_t max_states) {
    auto rg = explore(net, max_states);
    auto iso = are_isomorphic(lts, rg.lts);
    if (!iso) return std::nullopt;
    std::vector<Marking> r(lts.num_states());
    for (StateId s = 0; s < lts.num_states(); ++s) r[s] = rg.markings[(*iso)[s]];
    return r;
}

bool verify(const PetriNet& net, const Lts& lts, std::size_t max_states) {
    // a non-deterministic or partly unreachable target cannot be a reachability graph
    if (!is_deterministic(lts) || !is_totally_reachable(lts)) return false;
    return are_isomorphic(reachability_graph(net, max_states), lts).has_value();
}

static bool adequate_everywhere(const std::vector<Marking>& ms, const std::vector<StateId>& states) {
    for (auto s : states)
        if (is_dominated(ms[s], ms)) return false;
    return true;
}

SynthesisReport synthesize_adequate_at(const Lts& lts, const std::vector<StateId>& states,
                                       const SynthesisOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    for (auto s : states)
        if (s >= lts.num_states()) throw UnknownState("adequacy requested at an unknown state");
    SynthesisOptions inner = opts;
    inner.verify = false;

    auto finish = [&](SynthesisReport rep, std::vector<Marking> ms) {
        rep.markings = std::move(ms);
        rep.elapsed_ms = ms_since(t0);
        if (opts.verify) rep.verified = verify(*rep.net, lts, opts.max_states);
        return rep;
    };

    if (states.empty()) {
        auto rep = synthesize(lts, inner);
        if (!rep.solved()) return rep;
        auto ms = markings_by_state(*rep.net, lts, opts.max_states);
        if (!ms) throw Error("synthesized net does not reproduce its input");
        return finish(std::move(rep), std::move(*ms));
    }

    // a fresh loop at each state forces its marking to be non-dominated
    std::vector<std::pair<StateId, std::string>> loops;
    std::set<std::string> taken(lts.label_names().begin(), lts.label_names().end());
    for (std::size_t k = 0, n = 0; k < states.size(); ++n) {
        std::string u = "__u" + std::to_string(n);
        if (taken.count(u)) continue;
        loops.emplace_back(states[k++], u);
    }
    auto ext = with_loops(lts, loops);
    auto rep = synthesize(ext, inner);
    if (rep.solved()) {
        PetriNet net = *rep.net;
        for (auto& [s, u] : loops) net = remove_transition(net, u);
        auto ms = markings_by_state(net, lts, opts.max_states);
        if (ms && adequate_everywhere(*ms, states)) {
            rep.net = std::move(net);
            rep.method = "u-loop";
            return finish(std::move(rep), std::move(*ms));
        }
    }
    // complement places make every pair of reachable markings incomparable
    auto plain = synthesize(lts, inner);
    if (!plain.solved()) {
        plain.elapsed_ms = ms_since(t0);
        return plain;
    }
    auto rg = explore(*plain.net, opts.max_states);
    plain.net = add_complement_places(*plain.net, rg);
    plain.method = "complement";
    auto ms = markings_by_state(*plain.net, lts, opts.max_states);
    if (!ms) throw Error("complement places changed the behaviour");
    return finish(std::move(plain), std::move(*ms));
}

SynthesisReport synthesize_adequate(const Lts& lts, const std::string& s, const SynthesisOptions& opts) {
    return synthesize_adequate_at(lts, {lts.state(s)}, opts);
}

}  // namespace pnsynth
