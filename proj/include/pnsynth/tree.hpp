#pragma once

#include <string>
#include <vector>

#include "pnsynth/lts.hpp"
#include "pnsynth/synthesis.hpp"

namespace pnsynth {

struct Factorization;

// Expression tree over sub-systems. Every node keeps the system it stands
// for; sub-systems keep the original state names.
struct DecompositionTree {
    enum class Kind { Leaf, Product, Articulation, Ambiguous };
    Kind kind = Kind::Leaf;
    Lts lts;
    std::vector<DecompositionTree> children;  // Product: factors; Articulation: left, right; Ambiguous: core
    std::string state;                        // Articulation joint / Ambiguous loop state
    std::vector<std::vector<StateId>> projection;  // Product: node state -> child states
    LabelSet everywhere, at_state;                  // Ambiguous: labels looping at every state / at `state` only
};

DecompositionTree leaf(const Lts& lts);
DecompositionTree product_tree(const Lts& lts, const Factorization& f);
DecompositionTree articulation_node(const Lts& whole, DecompositionTree left, const std::string& joint,
                                    DecompositionTree right);

// Rebuilds a system from the tree with product / articulate_lts.
Lts evaluate(const DecompositionTree& t);
std::string to_string(const DecompositionTree& t);
std::size_t leaf_count(const DecompositionTree& t);

// Synthesizes leaves (adequate where an enclosing joint needs it) and
// recombines bottom-up with disjoint sums and side conditions.
SynthesisReport synthesize_tree(const DecompositionTree& t, const SynthesisOptions& opts = {});

}  // namespace pnsynth
