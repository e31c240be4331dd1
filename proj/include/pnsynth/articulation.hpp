#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pnsynth/factorization.hpp"
#include "pnsynth/lts.hpp"
#include "pnsynth/synthesis.hpp"
#include "pnsynth/tree.hpp"

namespace pnsynth {

struct ArticulationGraph {
    LabelPartition classes;
    std::vector<StateId> state_nodes;                     // sorted
    std::vector<std::pair<StateId, std::size_t>> edges;   // (state, class index), sorted
    bool connected = true;
    bool acyclic = true;
};

// Only the merge rule: blocks whose adjacency sets share two or more states.
LabelPartition refine_merge_only(const Lts& lts, LabelPartition start = {});
// Merge rule and cycle fusion, repeated until both are stable.
LabelPartition refine_partition(const Lts& lts, LabelPartition start = {});

ArticulationGraph build_graph(const Lts& lts, const LabelPartition& partition);
// class indices on some cycle of the graph, empty if acyclic
std::vector<std::size_t> find_cycle(const ArticulationGraph& g);
LabelPartition fuse_cycles(const Lts& lts, const ArticulationGraph& graph);

struct ArticulationExpression {
    enum class Kind { Component, Joint };
    Kind kind = Kind::Component;
    LabelSet labels;  // Component
    std::string state;  // Component: root; Joint: articulation state
    std::shared_ptr<const ArticulationExpression> left, right;
};

std::optional<ArticulationExpression> articul_expression(const Lts& lts);
Lts evaluate(const Lts& lts, const ArticulationExpression& e);
std::string to_string(const ArticulationExpression& e);
std::size_t component_count(const ArticulationExpression& e);

// Binary tree of articulations whose leaves are the expression's components.
DecompositionTree articulation_tree(const Lts& lts, const ArticulationExpression& e);

bool is_sequence_joint(const Lts& left, const std::string& s, const Lts& right);

SynthesisReport synthesize_articulated(const Lts& lts, const SynthesisOptions& opts = {});

}  // namespace pnsynth
