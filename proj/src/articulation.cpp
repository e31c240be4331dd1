#include "pnsynth/articulation.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <tuple>
#include <set>

#include "pnsynth/error.hpp"

namespace pnsynth {

namespace {

std::vector<StateId> intersect(const std::vector<StateId>& a, const std::vector<StateId>& b) {
    std::vector<StateId> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

LabelPartition singletons(const Lts& lts) {
    LabelPartition p;
    for (auto& l : lts.label_names()) p.push_back({l});
    return p;
}

using Expr = ArticulationExpression;
using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr component(const LabelSet& labels, const std::string& root) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Component;
    e->labels = labels;
    e->state = root;
    return e;
}

ExprPtr joint(ExprPtr left, const std::string& s, ExprPtr right) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Joint;
    e->state = s;
    e->left = std::move(left);
    e->right = std::move(right);
    return e;
}

}  // namespace

LabelPartition refine_merge_only(const Lts& lts, LabelPartition start) {
    LabelPartition blocks = start.empty() ? singletons(lts) : canonical(std::move(start));
    for (;;) {
        std::vector<std::vector<StateId>> adj;
        for (auto& b : blocks) adj.push_back(adjacency(lts, b));
        bool merged = false;
        for (std::size_t i = 0; i < blocks.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < blocks.size() && !merged; ++j)
                if (intersect(adj[i], adj[j]).size() > 1) {
                    blocks[i].insert(blocks[j].begin(), blocks[j].end());
                    blocks.erase(blocks.begin() + static_cast<long>(j));
                    merged = true;
                }
        if (!merged) return canonical(std::move(blocks));
    }
}

ArticulationGraph build_graph(const Lts& lts, const LabelPartition& partition) {
    ArticulationGraph g;
    g.classes = partition;
    std::vector<std::vector<StateId>> adj;
    for (auto& b : partition) adj.push_back(adjacency(lts, b));
    std::set<StateId> nodes;
    std::set<std::pair<StateId, std::size_t>> edges;
    for (std::size_t i = 0; i < partition.size(); ++i)
        for (std::size_t j = i + 1; j < partition.size(); ++j) {
            auto common = intersect(adj[i], adj[j]);
            if (common.size() != 1) continue;
            nodes.insert(common[0]);
            edges.emplace(common[0], i);
            edges.emplace(common[0], j);
        }
    g.state_nodes.assign(nodes.begin(), nodes.end());
    g.edges.assign(edges.begin(), edges.end());

    // a forest has |E| = |V| - #components
    const std::size_t k = partition.size();
    std::vector<std::vector<std::size_t>> nb(k + g.state_nodes.size());
    auto sidx = [&](StateId s) {
        return k + static_cast<std::size_t>(std::lower_bound(g.state_nodes.begin(), g.state_nodes.end(), s) -
                                            g.state_nodes.begin());
    };
    for (auto& [s, c] : g.edges) {
        nb[sidx(s)].push_back(c);
        nb[c].push_back(sidx(s));
    }
    std::vector<bool> seen(nb.size(), false);
    std::size_t comps = 0;
    for (std::size_t v = 0; v < nb.size(); ++v) {
        if (seen[v]) continue;
        ++comps;
        std::vector<std::size_t> stack{v};
        seen[v] = true;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto y : nb[x])
                if (!seen[y]) {
                    seen[y] = true;
                    stack.push_back(y);
                }
        }
    }
    g.connected = comps <= 1;
    g.acyclic = g.edges.size() + comps == nb.size();
    return g;
}

std::vector<std::size_t> find_cycle(const ArticulationGraph& g) {
    const std::size_t k = g.classes.size();
    std::vector<std::vector<std::size_t>> nb(k + g.state_nodes.size());
    auto sidx = [&](StateId s) {
        return k + static_cast<std::size_t>(std::lower_bound(g.state_nodes.begin(), g.state_nodes.end(), s) -
                                            g.state_nodes.begin());
    };
    for (auto& [s, c] : g.edges) {
        nb[sidx(s)].push_back(c);
        nb[c].push_back(sidx(s));
    }
    // an edge lies on a cycle iff its endpoints stay connected without it
    for (auto& [s, c] : g.edges) {
        const std::size_t from = c, to = sidx(s);
        std::vector<long> parent(nb.size(), -1);
        std::deque<std::size_t> q{from};
        parent[from] = static_cast<long>(from);
        while (!q.empty() && parent[to] < 0) {
            auto x = q.front();
            q.pop_front();
            for (auto y : nb[x]) {
                if ((x == from && y == to) || (x == to && y == from)) continue;
                if (parent[y] < 0) {
                    parent[y] = static_cast<long>(x);
                    q.push_back(y);
                }
            }
        }
        if (parent[to] < 0) continue;
        std::vector<std::size_t> cls;
        for (std::size_t x = to;; x = static_cast<std::size_t>(parent[x])) {
            if (x < k) cls.push_back(x);
            if (x == from) break;
        }
        std::sort(cls.begin(), cls.end());
        return cls;
    }
    return {};
}

LabelPartition fuse_cycles(const Lts& lts, const ArticulationGraph& graph) {
    ArticulationGraph g = graph;
    for (;;) {
        auto cyc = find_cycle(g);
        if (cyc.empty()) return g.classes;
        LabelPartition next;
        LabelSet merged;
        for (std::size_t i = 0; i < g.classes.size(); ++i) {
            if (std::binary_search(cyc.begin(), cyc.end(), i))
                merged.insert(g.classes[i].begin(), g.classes[i].end());
            else
                next.push_back(g.classes[i]);
        }
        next.push_back(std::move(merged));
        g = build_graph(lts, refine_merge_only(lts, std::move(next)));
    }
}

LabelPartition refine_partition(const Lts& lts, LabelPartition start) {
    return fuse_cycles(lts, build_graph(lts, refine_merge_only(lts, std::move(start))));
}

Lts evaluate(const Lts& lts, const ArticulationExpression& e) {
    if (e.kind == Expr::Kind::Component) return restrict_from(lts, lts.state(e.state), e.labels, Mode::Directed);
    return articulate_lts(evaluate(lts, *e.left), e.state, evaluate(lts, *e.right));
}

std::string to_string(const ArticulationExpression& e) {
    if (e.kind == Expr::Kind::Component) {
        std::string s = "{";
        bool first = true;
        for (auto& l : e.labels) {
            s += (first ? "" : ",") + l;
            first = false;
        }
        return s + "}@" + e.state;
    }
    return "(" + to_string(*e.left) + " <" + e.state + "> " + to_string(*e.right) + ")";
}

std::size_t component_count(const ArticulationExpression& e) {
    if (e.kind == Expr::Kind::Component) return 1;
    return component_count(*e.left) + component_count(*e.right);
}

std::optional<ArticulationExpression> articul_expression(const Lts& lts) {
    auto part = refine_partition(lts);
    if (part.size() <= 1) return std::nullopt;
    auto g = build_graph(lts, part);
    if (!g.connected || !g.acyclic) return std::nullopt;

    std::vector<std::vector<StateId>> cls_states(part.size());
    std::map<StateId, std::vector<std::size_t>> state_cls;
    for (auto& [s, c] : g.edges) {
        cls_states[c].push_back(s);
        state_cls[s].push_back(c);
    }

    struct Built {
        ExprPtr expr;
        std::string min_label;
    };
    // class c hung below state `root`
    auto build = [&](auto&& self, std::size_t c, StateId root) -> Built {
        Built b{component(part[c], lts.state_name(root)), *part[c].begin()};
        std::vector<std::tuple<std::string, StateId, ExprPtr>> kids;
        for (auto s : cls_states[c]) {
            if (s == root) continue;
            for (auto d : state_cls[s]) {
                if (d == c) continue;
                auto sub = self(self, d, s);
                kids.emplace_back(sub.min_label, s, sub.expr);
            }
        }
        std::sort(kids.begin(), kids.end(), [](auto& x, auto& y) { return std::get<0>(x) < std::get<0>(y); });
        for (auto& [ml, s, e] : kids) {
            b.expr = joint(b.expr, lts.state_name(s), e);
            b.min_label = std::min(b.min_label, ml);
        }
        return b;
    };

    const StateId iota = lts.initial();
    ExprPtr top;
    if (state_cls.count(iota)) {
        std::vector<Built> star;
        for (auto c : state_cls[iota]) star.push_back(build(build, c, iota));
        std::sort(star.begin(), star.end(), [](auto& x, auto& y) { return x.min_label < y.min_label; });
        top = star[0].expr;
        for (std::size_t k = 1; k < star.size(); ++k) top = joint(top, lts.state_name(iota), star[k].expr);
    } else {
        std::size_t first = part.size();
        for (std::size_t c = 0; c < part.size() && first == part.size(); ++c) {
            auto adj = adjacency(lts, part[c]);
            if (std::binary_search(adj.begin(), adj.end(), iota)) first = c;
        }
        if (first == part.size()) return std::nullopt;
        top = build(build, first, iota).expr;
    }
    // the expression must rebuild the input
    auto back = evaluate(lts, *top);
    if (back.num_states() != lts.num_states() || !are_isomorphic(back, lts)) return std::nullopt;
    return *top;
}

DecompositionTree articulation_tree(const Lts& lts, const ArticulationExpression& e) {
    if (e.kind == Expr::Kind::Component) return leaf(evaluate(lts, e));
    return articulation_node(evaluate(lts, e), articulation_tree(lts, *e.left), e.state,
                             articulation_tree(lts, *e.right));
}

bool is_sequence_joint(const Lts& left, const std::string& s, const Lts& right) {
    const StateId j = left.state(s);
    const bool dead_end = left.out(j).empty();
    auto all = left.label_set();
    auto from_init = reachable(left, left.initial(), all, Mode::Directed);
    bool home = true;
    for (auto x : from_init) {
        auto r = reachable(left, x, all, Mode::Directed);
        if (!std::binary_search(r.begin(), r.end(), j)) {
            home = false;
            break;
        }
    }
    if (dead_end && home) return true;
    // does some path of length >= 1 lead from the right initial state back to it?
    const StateId r0 = right.initial();
    std::vector<bool> seen(right.num_states(), false);
    std::vector<StateId> stack;
    for (auto& a : right.out(r0)) stack.push_back(a.dst);
    while (!stack.empty()) {
        StateId x = stack.back();
        stack.pop_back();
        if (x == r0) return false;
        if (seen[x]) continue;
        seen[x] = true;
        for (auto& a : right.out(x)) stack.push_back(a.dst);
    }
    return true;
}

SynthesisReport synthesize_articulated(const Lts& lts, const SynthesisOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    if (auto bad = presynthesis(lts)) {
        SynthesisReport rep;
        rep.rejected_check = *bad;
        return rep;
    }
    auto expr = articul_expression(lts);
    if (!expr) {
        auto rep = synthesize(lts, opts);
        rep.method = "mono (no articulation)";
        return rep;
    }
    auto rep = synthesize_tree(articulation_tree(lts, *expr), opts);
    rep.method = "artic";
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace pnsynth
