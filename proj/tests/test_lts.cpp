#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pnsynth/error.hpp"
#include "pnsynth/lts.hpp"

using namespace pnsynth;
using oracle::fixture;

namespace {

std::set<std::string> names(const Lts& l, const std::vector<StateId>& ids) {
    auto v = l.names_of(ids);
    return {v.begin(), v.end()};
}

Lts one_state(std::vector<std::string> loops = {}) {
    std::vector<Lts::NamedArc> arcs;
    for (auto& l : loops) arcs.emplace_back("i", l, "i");
    return Lts({"i"}, loops, "i", arcs);
}

}  // namespace

TEST(Determinism, Grid6IsDeterministic) { EXPECT_TRUE(is_deterministic(fixture("GRID6"))); }

TEST(Determinism, LeftCounterexampleIsNotBackwardDeterministic) {
    auto l = fixture("fig7_left");
    EXPECT_TRUE(is_forward_deterministic(l));
    EXPECT_FALSE(is_backward_deterministic(l));
    EXPECT_FALSE(is_deterministic(l));
}

TEST(Determinism, SingleStateIsDeterministic) { EXPECT_TRUE(is_deterministic(Lts())); }

TEST(Reachability, TotallyReachable) {
    EXPECT_TRUE(is_totally_reachable(fixture("TS21")));
    EXPECT_TRUE(is_totally_reachable(fixture("CHAIN_BB")));
    Lts iso({"i", "x"}, {"a"}, "i", {{"i", "a", "i"}});
    EXPECT_FALSE(is_totally_reachable(iso));
}

TEST(Reachability, DirectedRestrictedSets) {
    auto g = fixture("GRID6");
    EXPECT_EQ(names(g, reachable(g, g.initial(), {"a"}, Mode::Directed)), (std::set<std::string>{"0_i", "1_i"}));
    EXPECT_EQ(names(g, reachable(g, g.state("1_s1"), {}, Mode::Directed)), (std::set<std::string>{"1_s1"}));
    auto b = fixture("BIGFIX");
    EXPECT_EQ(names(b, reachable(b, b.initial(), {"a", "b"}, Mode::Directed)), (std::set<std::string>{"i", "s1"}));
}

TEST(Reachability, GeneralModeFollowsReverseArcs) {
    auto g = fixture("GRID6");
    auto r = reachable(g, g.state("1_s2"), {"a"}, Mode::General);
    EXPECT_EQ(names(g, r), (std::set<std::string>{"0_s2", "1_s2"}));
    EXPECT_EQ(reachable(g, g.state("1_s2"), {"a"}, Mode::Directed).size(), 1u);
}

TEST(Restrict, GridOntoChainA) {
    auto r = restrict(fixture("GRID6"), {"a"}, Mode::Directed);
    EXPECT_TRUE(oracle::isomorphic(r, fixture("CHAIN_A")));
}

TEST(Restrict, AllLabelsIsIdentity) {
    auto t = fixture("TS21");
    EXPECT_TRUE(are_isomorphic(restrict(t, t.label_set(), Mode::Directed), t).has_value());
}

TEST(Restrict, BigfixTriangleFromInitialIsASingleState) {
    // the c-arc leaves s1, which {c,d,e} cannot reach from i
    auto r = restrict(fixture("BIGFIX"), {"c", "d", "e"}, Mode::Directed);
    EXPECT_EQ(r.num_states(), 1u);
    EXPECT_EQ(r.num_arcs(), 0u);
    EXPECT_EQ(r.state_name(r.initial()), "i");
}

TEST(Parikh, Examples) {
    EXPECT_EQ(parikh({{"a"}, {"b"}, {"a", true}}), (ParikhVector{{"a", 0}, {"b", 1}}));
    EXPECT_TRUE(parikh({}).empty());
    EXPECT_EQ(parikh({{"a"}, {"a"}, {"b", true}}), (ParikhVector{{"a", 2}, {"b", -1}}));
}

TEST(Parikh, WordThenReversedInverseCancels) {
    std::mt19937 rng(7);
    for (int k = 0; k < 50; ++k) {
        GeneralWord w;
        std::uniform_int_distribution<int> len(0, 8), lab(0, 3), dir(0, 1);
        for (int i = len(rng); i > 0; --i) w.push_back({std::string(1, char('a' + lab(rng))), dir(rng) == 1});
        GeneralWord ww = w;
        for (auto it = w.rbegin(); it != w.rend(); ++it) ww.push_back({it->label, !it->reverse});
        for (auto& [l, c] : parikh(ww)) EXPECT_EQ(c, 0) << l;
    }
}

TEST(Product, ChainsGiveGrid) {
    auto p = product(fixture("CHAIN_A"), fixture("CHAIN_BB"));
    EXPECT_EQ(p.num_states(), 6u);
    EXPECT_EQ(p.num_arcs(), 7u);
    EXPECT_TRUE(oracle::isomorphic(p, fixture("GRID6")));
}

TEST(Product, NeutralAndSymmetric) {
    auto t = fixture("CYCLES4");
    EXPECT_TRUE(oracle::isomorphic(product(t, Lts()), t));
    auto a = fixture("ABC2"), b = fixture("DEF2");
    EXPECT_TRUE(oracle::isomorphic(product(a, b), product(b, a)));
}

TEST(Product, OverlapThrows) { EXPECT_THROW(product(fixture("ABC2"), fixture("ABC2")), LabelOverlap); }

TEST(Product, SizeLawsAndProjections) {
    std::mt19937 rng(11);
    for (int k = 0; k < 20; ++k) {
        auto [na, a] = oracle::random_bounded(rng, 12, "x");
        auto [nb, b] = oracle::random_bounded(rng, 12, "y");
        a = oracle::strip_useless(a);
        b = oracle::strip_useless(b);
        auto p = product(a, b);
        EXPECT_EQ(p.num_states(), a.num_states() * b.num_states());
        EXPECT_EQ(p.num_arcs(), a.num_arcs() * b.num_states() + b.num_arcs() * a.num_states());
        EXPECT_TRUE(are_isomorphic(restrict(p, a.label_set(), Mode::Directed), a).has_value());
        EXPECT_TRUE(are_isomorphic(restrict(p, b.label_set(), Mode::Directed), b).has_value());
    }
}

TEST(Articulate, FigureNineShapes) {
    auto a = fixture("ABC2"), b = fixture("DEF2");
    auto at_s = articulate_lts(a, "s", b);
    EXPECT_EQ(at_s.num_states(), 3u);
    EXPECT_EQ(at_s.num_arcs(), 6u);
    Lts ts3({"i", "s", "t"}, {}, "i",
            {{"i", "a", "s"}, {"i", "c", "s"}, {"s", "b", "i"}, {"s", "d", "t"}, {"s", "f", "t"}, {"t", "e", "s"}});
    EXPECT_TRUE(oracle::isomorphic(at_s, ts3));
    Lts ts4({"i", "s", "t"}, {}, "i",
            {{"i", "a", "s"}, {"i", "c", "s"}, {"s", "b", "i"}, {"i", "d", "t"}, {"i", "f", "t"}, {"t", "e", "i"}});
    EXPECT_TRUE(oracle::isomorphic(articulate_lts(a, "i", b), ts4));
}

TEST(Articulate, RightNeutralAndErrors) {
    auto t = fixture("CYCLES4");
    EXPECT_TRUE(oracle::isomorphic(articulate_lts(t, "s", Lts()), t));
    EXPECT_THROW(articulate_lts(t, "nowhere", Lts({"i", "x"}, {}, "i", {{"i", "z", "x"}})), UnknownState);
    EXPECT_THROW(articulate_lts(fixture("ABC2"), "s", fixture("ABC2")), LabelOverlap);
}

TEST(Articulate, ClashingNamesGetSuffix) {
    auto r = articulate_lts(fixture("ABC2"), "s", fixture("DEF2"));
    // DEF2's s clashes with ABC2's s
    EXPECT_TRUE(r.find_state("s_1").has_value());
}

TEST(Articulate, AssociativeAndCommutativeAtInitial) {
    auto a = fixture("ABC2"), b = fixture("DEF2");
    Lts gh({"i", "s"}, {}, "i", {{"i", "g", "s"}, {"s", "h", "i"}});
    // joints inside b and inside a: both parenthesizations
    auto left = articulate_lts(articulate_lts(a, "s", b), "s_1", gh);
    auto right = articulate_lts(a, "s", articulate_lts(b, "s", gh));
    EXPECT_TRUE(oracle::isomorphic(left, right));
    // two components on the same state
    auto x = articulate_lts(articulate_lts(a, "s", b), "s", gh);
    auto y = articulate_lts(articulate_lts(a, "s", gh), "s", b);
    EXPECT_TRUE(oracle::isomorphic(x, y));
    EXPECT_TRUE(oracle::isomorphic(articulate_lts(a, "i", b), articulate_lts(b, "i", a)));
}

TEST(Adjacency, Examples) {
    auto b = fixture("BIGFIX");
    EXPECT_EQ(names(b, adjacency(b, {"a", "b"})), (std::set<std::string>{"i", "s1"}));
    EXPECT_EQ(names(b, adjacency(b, {"i", "j"})), (std::set<std::string>{"s2", "s7"}));
    EXPECT_EQ(names(b, adjacency(b, {})), (std::set<std::string>{"i"}));
}

TEST(Isomorphism, Examples) {
    auto g = fixture("GRID6");
    auto p = product(fixture("CHAIN_A"), fixture("CHAIN_BB"));
    auto z = are_isomorphic(p, g);
    ASSERT_TRUE(z.has_value());
    for (auto& x : p.arcs()) EXPECT_TRUE(g.has_arc((*z)[x.src], g.label(p.label_name(x.label)), (*z)[x.dst]));
    EXPECT_FALSE(are_isomorphic(fixture("CHAIN_A"), fixture("CHAIN_BB")).has_value());
    auto id = are_isomorphic(g, g);
    ASSERT_TRUE(id);
    for (StateId s = 0; s < g.num_states(); ++s) EXPECT_EQ((*id)[s], s);
}

TEST(Isomorphism, UnsupportedInputs) {
    EXPECT_THROW(are_isomorphic(fixture("fig7_right"), fixture("fig7_right")), UnsupportedInput);
    Lts iso({"i", "x"}, {"a"}, "i", {{"i", "a", "i"}});
    EXPECT_THROW(are_isomorphic(iso, iso), UnsupportedInput);
}

TEST(Isomorphism, AgreesWithBacktrackingOracle) {
    std::mt19937 rng(3);
    for (int k = 0; k < 40; ++k) {
        auto [n1, a] = oracle::random_bounded(rng, 16);
        auto [n2, b] = oracle::random_bounded(rng, 16);
        EXPECT_EQ(are_isomorphic(a, b).has_value(), oracle::isomorphic(a, b));
        EXPECT_EQ(are_isomorphic(b, a).has_value(), are_isomorphic(a, b).has_value());
    }
}

TEST(Isomorphism, SymmetricAndTransitive) {
    auto a = product(fixture("CHAIN_A"), fixture("CHAIN_BB"));
    auto b = fixture("GRID6");
    auto c = product(fixture("CHAIN_BB"), fixture("CHAIN_A"));
    auto ab = are_isomorphic(a, b), ba = are_isomorphic(b, a), bc = are_isomorphic(b, c), ac = are_isomorphic(a, c);
    ASSERT_TRUE(ab && ba && bc && ac);
    for (StateId s = 0; s < a.num_states(); ++s) {
        EXPECT_EQ((*ba)[(*ab)[s]], s);
        EXPECT_EQ((*bc)[(*ab)[s]], (*ac)[s]);
    }
}

TEST(UsefulLabels, Examples) {
    EXPECT_EQ(useful_labels(fixture("GRID6")), (LabelSet{"a", "b"}));
    Lts z({"i", "s"}, {"a", "z"}, "i", {{"i", "a", "s"}});
    EXPECT_EQ(useful_labels(z), (LabelSet{"a"}));
    EXPECT_TRUE(useful_labels(Lts({"i"}, {"q"}, "i", {})).empty());
    EXPECT_TRUE(useful_labels(one_state()).empty());
}

TEST(FreshName, LowestUnusedSuffix) {
    EXPECT_EQ(fresh_name("s", {"a"}), "s");
    EXPECT_EQ(fresh_name("s", {"s", "s_2"}), "s_1");
    EXPECT_EQ(fresh_name("s", {"s", "s_1"}), "s_2");
}
