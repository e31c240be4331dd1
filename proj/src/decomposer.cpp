#include "pnsynth/decomposer.hpp"

#include <chrono>

#include "pnsynth/articulation.hpp"
#include "pnsynth/error.hpp"
#include "pnsynth/factorization.hpp"

namespace pnsynth {

std::optional<AmbiguousForm> ambiguous_form(const Lts& lts) {
    const std::size_t n = lts.num_states();
    std::vector<std::size_t> loops(lts.num_labels(), 0), others(lts.num_labels(), 0);
    std::vector<StateId> where(lts.num_labels(), 0);
    for (auto& a : lts.arcs()) {
        if (a.src == a.dst) {
            ++loops[a.label];
            where[a.label] = a.src;
        } else {
            ++others[a.label];
        }
    }
    AmbiguousForm f;
    std::optional<StateId> s1;
    for (LabelId l = 0; l < lts.num_labels(); ++l) {
        if (others[l] || !loops[l]) continue;
        if (loops[l] == n) {
            f.everywhere.insert(lts.label_name(l));
        } else if (loops[l] == 1 && (!s1 || *s1 == where[l])) {
            s1 = where[l];
            f.at_state.insert(lts.label_name(l));
        }
    }
    if (n == 1) {
        // every loop label loops everywhere
        if (f.everywhere.empty()) return std::nullopt;
        s1 = lts.initial();
    } else if (f.everywhere.empty() || f.at_state.empty()) {
        return std::nullopt;
    }
    LabelSet drop = f.everywhere;
    drop.insert(f.at_state.begin(), f.at_state.end());
    f.core = without_labels(lts, drop);
    f.state = lts.state_name(*s1);
    return f;
}

static bool has_loop(const Lts& lts) {
    for (auto& a : lts.arcs())
        if (a.src == a.dst) return true;
    return false;
}

static DecompositionTree rec(const Lts& lts, const DecomposeOptions& opts, std::size_t depth) {
    if (depth > lts.num_labels() + 1 || lts.num_labels() <= 1) return leaf(lts);

    if (opts.detect_ambiguous && has_loop(lts)) {
        auto f = ambiguous_form(lts);
        if (f && !f->at_state.empty()) {
            DecompositionTree t;
            t.kind = DecompositionTree::Kind::Ambiguous;
            t.lts = lts;
            t.state = f->state;
            t.everywhere = f->everywhere;
            t.at_state = f->at_state;
            t.children.push_back(rec(f->core, opts, depth + 1));
            return t;
        }
    }

    auto try_product = [&]() -> std::optional<DecompositionTree> {
        auto f = factorize(lts);
        if (f.factors.size() <= 1) return std::nullopt;
        auto t = product_tree(lts, f);
        for (auto& c : t.children) c = rec(c.lts, opts, depth + 1);
        return t;
    };
    auto try_articulation = [&]() -> std::optional<DecompositionTree> {
        auto e = articul_expression(lts);
        if (!e) return std::nullopt;
        // only the top joint; each side is decomposed afresh
        Lts left = evaluate(lts, *e->left);
        Lts right = evaluate(lts, *e->right);
        return articulation_node(lts, rec(left, opts, depth + 1), e->state, rec(right, opts, depth + 1));
    };

    if (opts.prefer_articulation) {
        if (auto t = try_articulation()) return *t;
        if (auto t = try_product()) return *t;
    } else {
        if (auto t = try_product()) return *t;
        if (auto t = try_articulation()) return *t;
    }
    return leaf(lts);
}

DecompositionTree decompose(const Lts& lts, const DecomposeOptions& opts) { return rec(lts, opts, 0); }

SynthesisReport synthesize_mixed(const Lts& lts, const SynthesisOptions& opts, const DecomposeOptions& dopts) {
    auto t0 = std::chrono::steady_clock::now();
    SynthesisReport rep;
    if (auto bad = presynthesis(lts)) {
        rep.rejected_check = *bad;
        return rep;
    }
    DecompositionTree tree;
    try {
        tree = decompose(lts, dopts);
    } catch (const NotAProduct& e) {
        rep.outcome = SynthesisReport::Outcome::Unsolvable;
        rep.witness_text = e.what();
        rep.method = "mixed";
        rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    }
    rep = synthesize_tree(tree, opts);
    rep.method = "mixed";
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace pnsynth
