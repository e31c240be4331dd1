#include "pnsynth/tree.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <map>
#include <set>

#include "pnsynth/error.hpp"
#include "pnsynth/factorization.hpp"

namespace pnsynth {

DecompositionTree leaf(const Lts& lts) {
    DecompositionTree t;
    t.lts = lts;
    return t;
}

DecompositionTree product_tree(const Lts& lts, const Factorization& f) {
    if (f.factors.size() <= 1) return leaf(lts);
    DecompositionTree t;
    t.kind = DecompositionTree::Kind::Product;
    t.lts = lts;
    for (auto& x : f.factors) t.children.push_back(leaf(x));
    t.projection = f.projection;
    return t;
}

DecompositionTree articulation_node(const Lts& whole, DecompositionTree left, const std::string& joint,
                                    DecompositionTree right) {
    DecompositionTree t;
    t.kind = DecompositionTree::Kind::Articulation;
    t.lts = whole;
    t.state = joint;
    t.children.push_back(std::move(left));
    t.children.push_back(std::move(right));
    return t;
}

static std::size_t product_size(const std::vector<Lts>& parts) {
    std::size_t n = 1;
    for (auto& p : parts) n *= p.num_states();
    return n;
}

Lts evaluate(const DecompositionTree& t) {
    using K = DecompositionTree::Kind;
    switch (t.kind) {
        case K::Leaf: return t.lts;
        case K::Product: {
            // rebuild on the node's own state names so enclosing joints still resolve
            std::vector<Lts> parts;
            for (auto& c : t.children) parts.push_back(evaluate(c));
            std::map<std::vector<StateId>, StateId> at;
            std::vector<std::vector<StateId>> tuple(t.lts.num_states());
            for (StateId s = 0; s < t.lts.num_states(); ++s) {
                for (std::size_t k = 0; k < parts.size(); ++k)
                    tuple[s].push_back(parts[k].state(t.children[k].lts.state_name(t.projection[s][k])));
                at.emplace(tuple[s], s);
            }
            std::vector<Lts::NamedArc> arcs;
            for (StateId s = 0; s < t.lts.num_states(); ++s)
                for (std::size_t k = 0; k < parts.size(); ++k)
                    for (auto& a : parts[k].out(tuple[s][k])) {
                        auto next = tuple[s];
                        next[k] = a.dst;
                        auto it = at.find(next);
                        if (it == at.end()) throw UnsupportedInput("product node does not cover its factors");
                        arcs.push_back({t.lts.state_name(s), parts[k].label_name(a.label), t.lts.state_name(it->second)});
                    }
            if (at.size() != product_size(parts)) throw UnsupportedInput("product node does not cover its factors");
            return Lts(t.lts.state_names(), t.lts.label_names(), t.lts.state_name(t.lts.initial()), arcs);
        }
        case K::Articulation: return articulate_lts(evaluate(t.children[0]), t.state, evaluate(t.children[1]));
        case K::Ambiguous: {
            Lts core = evaluate(t.children[0]);
            std::vector<std::pair<StateId, std::string>> loops;
            for (auto& l : t.everywhere)
                for (StateId s = 0; s < core.num_states(); ++s) loops.emplace_back(s, l);
            for (auto& l : t.at_state) loops.emplace_back(core.state(t.state), l);
            return with_loops(core, loops);
        }
    }
    return t.lts;
}

static std::string block(const LabelSet& labels) {
    std::string s = "{";
    bool first = true;
    for (auto& l : labels) {
        if (!first) s += ",";
        s += l;
        first = false;
    }
    return s + "}";
}

std::string to_string(const DecompositionTree& t) {
    using K = DecompositionTree::Kind;
    switch (t.kind) {
        case K::Leaf: return block(t.lts.label_set());
        case K::Product: {
            std::string s = "(";
            for (std::size_t k = 0; k < t.children.size(); ++k) s += (k ? " * " : "") + to_string(t.children[k]);
            return s + ")";
        }
        case K::Articulation:
            return "(" + to_string(t.children[0]) + " <" + t.state + "> " + to_string(t.children[1]) + ")";
        case K::Ambiguous:
            return "((" + to_string(t.children[0]) + " * " + block(t.everywhere) + ") <" + t.state + "> " +
                   block(t.at_state) + ")";
    }
    return "?";
}

std::size_t leaf_count(const DecompositionTree& t) {
    if (t.kind == DecompositionTree::Kind::Leaf) return 1;
    std::size_t n = 0;
    for (auto& c : t.children) n += leaf_count(c);
    return n;
}

namespace {

Marking concat(const Marking& a, const Marking& b) {
    Marking m(a);
    m.insert(m.end(), b.begin(), b.end());
    return m;
}

SynthesisReport run(const DecompositionTree& t, std::vector<StateId> req, const SynthesisOptions& opts);

// synthesizes the children, possibly side by side
std::vector<SynthesisReport> run_children(const DecompositionTree& t, const std::vector<std::vector<StateId>>& reqs,
                                          const SynthesisOptions& opts) {
    const long n = static_cast<long>(t.children.size());
    std::vector<SynthesisReport> out(t.children.size());
    std::vector<std::exception_ptr> errs(t.children.size());
#pragma omp parallel for schedule(dynamic) if (opts.parallel && n > 1)
    for (long k = 0; k < n; ++k) {
        try {
            out[k] = run(t.children[k], reqs[k], opts);
        } catch (...) {
            errs[k] = std::current_exception();
        }
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

// first failing child report, or nullptr
const SynthesisReport* failure(const std::vector<SynthesisReport>& parts) {
    for (auto& p : parts)
        if (!p.solved()) return &p;
    return nullptr;
}

void add_counts(SynthesisReport& into, const std::vector<SynthesisReport>& parts) {
    for (auto& p : parts) {
        into.regions_used += p.regions_used;
        into.problems_reused += p.problems_reused;
        into.problems_solved += p.problems_solved;
    }
}

SynthesisReport run(const DecompositionTree& t, std::vector<StateId> req, const SynthesisOptions& opts) {
    using K = DecompositionTree::Kind;
    std::sort(req.begin(), req.end());
    req.erase(std::unique(req.begin(), req.end()), req.end());
    SynthesisOptions inner = opts;
    inner.verify = false;

    if (t.kind == K::Leaf) return synthesize_adequate_at(t.lts, req, inner);

    SynthesisReport rep;
    rep.outcome = SynthesisReport::Outcome::Solved;
    if (t.kind == K::Product) {
        std::vector<std::vector<StateId>> reqs(t.children.size());
        for (auto s : req)
            for (std::size_t k = 0; k < t.children.size(); ++k) reqs[k].push_back(t.projection[s][k]);
        auto parts = run_children(t, reqs, inner);
        if (auto f = failure(parts)) return *f;
        add_counts(rep, parts);
        PetriNet net = *parts[0].net;
        for (std::size_t k = 1; k < parts.size(); ++k) net = disjoint_sum(net, *parts[k].net);
        rep.net = std::move(net);
        for (StateId s = 0; s < t.lts.num_states(); ++s) {
            Marking m;
            for (std::size_t k = 0; k < parts.size(); ++k) m = concat(m, parts[k].markings[t.projection[s][k]]);
            rep.markings.push_back(std::move(m));
        }
        return rep;
    }

    if (t.kind == K::Articulation) {
        const Lts& left = t.children[0].lts;
        const Lts& right = t.children[1].lts;
        const StateId j = left.state(t.state);
        std::vector<std::vector<StateId>> reqs(2);
        reqs[0].push_back(j);
        for (auto s : req) {
            const auto& name = t.lts.state_name(s);
            if (auto x = left.find_state(name)) reqs[0].push_back(*x);
            if (auto y = right.find_state(name)) reqs[1].push_back(*y);
        }
        auto parts = run_children(t, reqs, inner);
        if (auto f = failure(parts)) return *f;
        add_counts(rep, parts);
        const auto& ml = parts[0].markings;
        const auto& mr = parts[1].markings;
        rep.net = articulate_pn(*parts[0].net, ml[j], *parts[1].net, &ml);
        for (StateId s = 0; s < t.lts.num_states(); ++s) {
            const auto& name = t.lts.state_name(s);
            if (auto x = left.find_state(name))
                rep.markings.push_back(concat(ml[*x], mr[right.initial()]));
            else
                rep.markings.push_back(concat(ml[j], mr[right.state(name)]));
        }
        return rep;
    }

    // core, then one transition per loop label: side conditions on the
    // marking of `state` for labels looping there only, isolated otherwise
    const StateId s1 = t.lts.state(t.state);
    req.push_back(t.children[0].lts.state(t.state));
    auto core = run(t.children[0], req, inner);
    if (!core.solved()) return core;
    PetriNet net = *core.net;
    const Marking& at = core.markings[t.children[0].lts.state(t.lts.state_name(s1))];
    for (auto& l : t.at_state) {
        TransId x = net.add_transition(l);
        for (PlaceId p = 0; p < net.num_places(); ++p)
            if (at[p] > 0) {
                net.set_pre(p, x, at[p]);
                net.set_post(x, p, at[p]);
            }
    }
    for (auto& l : t.everywhere) net.add_transition(l);
    core.net = std::move(net);
    return core;
}

}  // namespace

SynthesisReport synthesize_tree(const DecompositionTree& t, const SynthesisOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    auto rep = run(t, {}, opts);
    rep.method = "tree";
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (rep.solved() && opts.verify) rep.verified = verify(*rep.net, t.lts, opts.max_states);
    return rep;
}

}  // namespace pnsynth
