#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pnsynth/articulation.hpp"
#include "pnsynth/bench.hpp"

using namespace pnsynth;
using oracle::fixture;

namespace {

const LabelPartition kBigfix{{"a", "b"}, {"c", "d", "e"}, {"f"}, {"g", "h"}, {"i", "j"}, {"k"}};

std::set<std::string> state_nodes(const Lts& l, const ArticulationGraph& g) {
    auto v = l.names_of(g.state_nodes);
    return {v.begin(), v.end()};
}

std::size_t side_conditions(const PetriNet& n) {
    std::size_t k = 0;
    for (PlaceId p = 0; p < n.num_places(); ++p)
        for (TransId t = 0; t < n.num_transitions(); ++t)
            if (n.pre(p, t) > 0 && n.pre(p, t) == n.post(t, p)) ++k;
    return k;
}

void check_structure(const Lts& l, const LabelPartition& part) {
    for (std::size_t i = 0; i < part.size(); ++i)
        for (std::size_t j = i + 1; j < part.size(); ++j) {
            auto a = adjacency(l, part[i]), b = adjacency(l, part[j]);
            std::vector<StateId> both;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
            EXPECT_LE(both.size(), 1u);
        }
    auto g = build_graph(l, part);
    EXPECT_TRUE(g.connected);
    EXPECT_TRUE(g.acyclic);
    for (auto s : g.state_nodes)
        EXPECT_GE(std::count_if(g.edges.begin(), g.edges.end(), [&](auto& e) { return e.first == s; }), 2);
}

}  // namespace

TEST(Refine, Examples) {
    EXPECT_EQ(refine_partition(fixture("BIGFIX")), kBigfix);
    EXPECT_EQ(refine_partition(fixture("GRID6")), (LabelPartition{{"a", "b"}}));
    EXPECT_EQ(refine_partition(fixture("AABB")), (LabelPartition{{"a"}, {"b"}}));
}

TEST(Refine, MergeRuleAloneLeavesTheTriangle) {
    EXPECT_EQ(refine_merge_only(fixture("BIGFIX")),
              (LabelPartition{{"a", "b"}, {"c"}, {"d"}, {"e"}, {"f"}, {"g", "h"}, {"i", "j"}, {"k"}}));
}

TEST(Refine, StructuralClaims) {
    for (auto name : {"BIGFIX", "AABB", "CYCLES4", "SEQDIAMOND", "TS21", "GRID6"}) {
        auto l = fixture(name);
        check_structure(l, refine_partition(l));
    }
}

TEST(Graph, Bigfix) {
    auto l = fixture("BIGFIX");
    auto g = build_graph(l, kBigfix);
    EXPECT_EQ(g.classes.size(), 6u);
    EXPECT_EQ(state_nodes(l, g), (std::set<std::string>{"s1", "s2", "s3", "s7"}));
    EXPECT_EQ(g.edges.size(), 9u);
    EXPECT_TRUE(g.acyclic);
    EXPECT_TRUE(g.connected);
    EXPECT_TRUE(find_cycle(g).empty());
}

TEST(Graph, SingleBlockAndPath) {
    auto g = build_graph(fixture("GRID6"), {{"a", "b"}});
    EXPECT_EQ(g.classes.size(), 1u);
    EXPECT_TRUE(g.state_nodes.empty());
    auto l = fixture("AABB");
    auto p = build_graph(l, {{"a"}, {"b"}});
    EXPECT_EQ(state_nodes(l, p), (std::set<std::string>{"s2"}));
    EXPECT_EQ(p.edges.size(), 2u);
}

TEST(Cycles, TriangleCollapses) {
    auto l = fixture("BIGFIX");
    auto g = build_graph(l, refine_merge_only(l));
    EXPECT_FALSE(g.acyclic);
    auto cyc = find_cycle(g);
    LabelSet on;
    for (auto i : cyc) on.insert(g.classes[i].begin(), g.classes[i].end());
    EXPECT_EQ(on, (LabelSet{"c", "d", "e"}));
    EXPECT_EQ(fuse_cycles(l, g), kBigfix);
}

TEST(Cycles, AcyclicAndSingleUnchanged) {
    auto l = fixture("BIGFIX");
    EXPECT_EQ(fuse_cycles(l, build_graph(l, kBigfix)), kBigfix);
    auto g = fixture("GRID6");
    EXPECT_EQ(fuse_cycles(g, build_graph(g, {{"a", "b"}})), (LabelPartition{{"a", "b"}}));
}

TEST(Expression, Bigfix) {
    auto l = fixture("BIGFIX");
    auto e = articul_expression(l);
    ASSERT_TRUE(e);
    EXPECT_EQ(to_string(*e), "({a,b}@i <s1> ((({c,d,e}@s1 <s3> {f}@s3) <s2> {g,h}@s2) <s2> ({i,j}@s2 <s7> {k}@s7)))");
    EXPECT_EQ(component_count(*e), 6u);
    EXPECT_TRUE(oracle::isomorphic(evaluate(l, *e), l));
}

TEST(Expression, AabbAndGrid) {
    auto e = articul_expression(fixture("AABB"));
    ASSERT_TRUE(e);
    EXPECT_EQ(e->kind, ArticulationExpression::Kind::Joint);
    EXPECT_EQ(e->state, "s2");
    EXPECT_EQ(e->left->labels, (LabelSet{"a"}));
    EXPECT_EQ(e->left->state, "i");
    EXPECT_EQ(e->right->labels, (LabelSet{"b"}));
    EXPECT_EQ(e->right->state, "s2");
    EXPECT_FALSE(articul_expression(fixture("GRID6")).has_value());
}

TEST(Expression, RoundTripOnFamilies) {
    for (auto fam : {Family::Star, Family::Daisy, Family::Caterpillar}) {
        FamilySpec spec{fam, fixture("CYCLES4"), 4, {}};
        auto l = generate(spec);
        auto e = articul_expression(l);
        ASSERT_TRUE(e);
        EXPECT_GE(component_count(*e), 4u);
        EXPECT_TRUE(oracle::isomorphic(evaluate(l, *e), l));
    }
}

TEST(SynthesizeArticulated, Examples) {
    auto c = fixture("CYCLES4");
    auto r = synthesize_articulated(c);
    ASSERT_TRUE(r.solved());
    EXPECT_TRUE(verify(*r.net, c));
    EXPECT_GE(side_conditions(*r.net), 2u);
    for (auto name : {"AABB", "BIGFIX"}) {
        auto l = fixture(name);
        auto x = synthesize_articulated(l);
        ASSERT_TRUE(x.solved()) << name;
        EXPECT_TRUE(verify(*x.net, l)) << name;
    }
}

TEST(SynthesizeArticulated, BoundIsMaxOfComponents) {
    auto l = fixture("BIGFIX");
    auto r = synthesize_articulated(l);
    ASSERT_TRUE(r.solved());
    auto e = articul_expression(l);
    ASSERT_TRUE(e);
    std::vector<Lts> leaves;
    std::function<void(const DecompositionTree&)> walk = [&](const DecompositionTree& t) {
        if (t.kind == DecompositionTree::Kind::Leaf) leaves.push_back(t.lts);
        for (auto& c : t.children) walk(c);
    };
    walk(articulation_tree(l, *e));
    EXPECT_EQ(leaves.size(), 6u);
    Tokens lo = 0;
    for (auto& x : leaves) lo = std::max(lo, k_bound(*synthesize(x).net));
    // adequate forcing may add complement places but never more tokens than the joint needs
    EXPECT_GE(k_bound(*r.net), lo);
}

TEST(SequenceJoint, Examples) {
    auto sd = fixture("SEQDIAMOND");
    auto start = restrict(sd, {"start"}, Mode::Directed);
    auto rest = restrict_from(sd, sd.state("s1"), {"a", "b", "end"}, Mode::Directed);
    EXPECT_TRUE(is_sequence_joint(start, "s1", rest));
    EXPECT_FALSE(is_sequence_joint(fixture("ABC2"), "s", fixture("DEF2")));
    Lts f({"i", "t"}, {}, "i", {{"i", "f", "t"}});
    EXPECT_TRUE(is_sequence_joint(fixture("ABC2"), "s", f));
}
