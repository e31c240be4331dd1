#include "pnsynth/factorization.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "pnsynth/error.hpp"
#include "pnsynth/tree.hpp"

namespace pnsynth {

LabelPartition canonical(LabelPartition p) {
    p.erase(std::remove_if(p.begin(), p.end(), [](const LabelSet& b) { return b.empty(); }), p.end());
    std::sort(p.begin(), p.end(), [](const LabelSet& a, const LabelSet& b) { return *a.begin() < *b.begin(); });
    return p;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> up;
    std::size_t classes;
    explicit UnionFind(std::size_t n) : up(n), classes(n) { std::iota(up.begin(), up.end(), 0); }
    std::size_t find(std::size_t x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        up[std::max(a, b)] = std::min(a, b);
        --classes;
    }
};

struct Edge {
    LabelId label;
    bool reverse;
    StateId to;
};

std::optional<StateId> step(const Lts& lts, StateId s, LabelId l, bool reverse) {
    return reverse ? lts.pred(s, l) : lts.succ(s, l);
}

// calls bad(a, b) for every label pair failing a diamond at state s
template <class F>
void check_state(const Lts& lts, StateId s, F&& bad) {
    std::vector<Edge> inc;
    for (auto& a : lts.out(s)) inc.push_back({a.label, false, a.dst});
    for (auto& a : lts.in(s)) inc.push_back({a.label, true, a.src});
    for (std::size_t i = 0; i < inc.size(); ++i)
        for (std::size_t j = 0; j < inc.size(); ++j) {
            auto& u = inc[i];
            auto& v = inc[j];
            if (u.label >= v.label) continue;  // each unordered pair once, a != b
            auto x = step(lts, u.to, v.label, v.reverse);
            auto y = step(lts, v.to, u.label, u.reverse);
            if (!x || !y || *x != *y) bad(u.label, v.label);
        }
}

}  // namespace

std::set<LabelPair> gdiam_violations(const Lts& lts) {
    std::set<LabelPair> r;
    for (StateId s = 0; s < lts.num_states(); ++s)
        check_state(lts, s, [&](LabelId a, LabelId b) { r.emplace(lts.label_name(a), lts.label_name(b)); });
    return r;
}

LabelPartition label_classes(const Lts& lts) {
    UnionFind uf(lts.num_labels());
    for (StateId s = 0; s < lts.num_states() && uf.classes > 1; ++s)
        check_state(lts, s, [&](LabelId a, LabelId b) { uf.unite(a, b); });
    std::vector<LabelSet> blocks(lts.num_labels());
    for (LabelId l = 0; l < lts.num_labels(); ++l) blocks[uf.find(l)].insert(lts.label_name(l));
    return canonical(std::move(blocks));
}

Factorization factorize(const Lts& lts) {
    auto classes = label_classes(lts);
    Factorization f;
    if (classes.size() <= 1) {
        f.factors.push_back(lts);
        for (StateId s = 0; s < lts.num_states(); ++s) f.projection.push_back({s});
        return f;
    }
    std::size_t size = 1;
    for (auto& c : classes) {
        f.factors.push_back(restrict(lts, c, Mode::Directed));
        size *= f.factors.back().num_states();
    }
    if (size != lts.num_states())
        throw NotAProduct("product of the " + std::to_string(classes.size()) + " label classes has " +
                          std::to_string(size) + " states, input has " + std::to_string(lts.num_states()));
    Lts folded = f.factors[0];
    for (std::size_t k = 1; k < f.factors.size(); ++k) folded = product(folded, f.factors[k]);
    auto iso = are_isomorphic(lts, folded);
    if (!iso) throw NotAProduct("label classes do not recombine into the input (isomorphism mismatch)");
    // folded state index is mixed radix over the factor sizes
    f.projection.assign(lts.num_states(), std::vector<StateId>(f.factors.size()));
    for (StateId s = 0; s < lts.num_states(); ++s) {
        std::size_t idx = (*iso)[s];
        for (std::size_t k = f.factors.size(); k-- > 0;) {
            std::size_t n = f.factors[k].num_states();
            f.projection[s][k] = static_cast<StateId>(idx % n);
            idx /= n;
        }
    }
    return f;
}

std::vector<Lts> factor(const Lts& lts) { return factorize(lts).factors; }

SynthesisReport synthesize_factorized(const Lts& lts, const SynthesisOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    SynthesisReport rep;
    if (auto bad = presynthesis(lts)) {
        rep.rejected_check = *bad;
        return rep;
    }
    DecompositionTree tree;
    try {
        tree = product_tree(lts, factorize(lts));
    } catch (const NotAProduct& e) {
        rep.outcome = SynthesisReport::Outcome::Unsolvable;
        rep.witness_text = e.what();
        rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    }
    rep = synthesize_tree(tree, opts);
    rep.method = "factor";
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace pnsynth
