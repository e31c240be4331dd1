#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pnsynth/error.hpp"
#include "pnsynth/region.hpp"
#include "pnsynth/synthesis.hpp"

using namespace pnsynth;
using oracle::fixture;

namespace {

bool solves(const SynthesisReport& r, const Lts& l) {
    return r.solved() && oracle::isomorphic(reachability_graph(*r.net), l);
}

std::vector<Marking> others(const std::vector<Marking>& all, std::size_t skip) {
    std::vector<Marking> o;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (i != skip) o.push_back(all[i]);
    return o;
}

}  // namespace

TEST(Presynthesis, Checks) {
    EXPECT_FALSE(presynthesis(fixture("TS21")).has_value());
    EXPECT_EQ(presynthesis(fixture("fig7_left")), "backward-determinism");
    EXPECT_EQ(presynthesis(fixture("fig7_right")), "forward-determinism");
    Lts iso({"i", "x"}, {"a"}, "i", {{"i", "a", "i"}});
    EXPECT_EQ(presynthesis(iso), "total-reachability");
    Lts useless({"i", "s"}, {"a", "z"}, "i", {{"i", "a", "s"}});
    EXPECT_EQ(presynthesis(useless), "useless-labels");
}

TEST(Synthesize, Ts21) {
    auto l = fixture("TS21");
    auto r = synthesize(l);
    ASSERT_TRUE(r.solved());
    EXPECT_TRUE(are_isomorphic(reachability_graph(*r.net), l).has_value());
    EXPECT_TRUE(verify(*r.net, l));
    EXPECT_GT(r.problems_reused, 0u);
}

TEST(Synthesize, Grid6) { EXPECT_TRUE(solves(synthesize(fixture("GRID6")), fixture("GRID6"))); }

TEST(Synthesize, RejectsBeforeSolving) {
    auto r = synthesize(fixture("fig7_left"));
    EXPECT_EQ(r.outcome, SynthesisReport::Outcome::Rejected);
    EXPECT_EQ(r.rejected_check, "backward-determinism");
}

TEST(Synthesize, UnsolvableWitnessIsGenuine) {
    auto l = fixture("UNSOLV2");
    auto r = synthesize(l);
    ASSERT_EQ(r.outcome, SynthesisReport::Outcome::Unsolvable);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness_text, "ESSP(s1, b)");
    EXPECT_FALSE(solve_separation(l, base_constraints(l), *r.witness).has_value());
}

TEST(Synthesize, CacheDoesNotChangeOutcome) {
    for (auto name : {"TS21", "GRID6", "BIGFIX", "CYCLES4", "UNSOLV2", "SEQDIAMOND"}) {
        auto l = fixture(name);
        SynthesisOptions off;
        off.use_cache = false;
        auto a = synthesize(l), b = synthesize(l, off);
        EXPECT_EQ(a.outcome, b.outcome) << name;
        if (b.solved()) EXPECT_TRUE(verify(*b.net, l)) << name;
        EXPECT_EQ(b.problems_reused, 0u);
    }
}

TEST(Synthesize, SerialAndParallelAgree) {
    auto l = fixture("TS21");
    SynthesisOptions s;
    s.parallel = false;
    auto a = synthesize(l, s), b = synthesize(l);
    ASSERT_TRUE(a.solved() && b.solved());
    EXPECT_EQ(emit_pn(*a.net), emit_pn(*b.net));
}

TEST(Adequate, ChainPrefixAtS2) {
    auto prefix = restrict(fixture("AABB"), {"a"}, Mode::Directed);
    ASSERT_EQ(prefix.num_states(), 3u);
    auto r = synthesize_adequate(prefix, "s2");
    ASSERT_TRUE(r.solved());
    EXPECT_TRUE(verify(*r.net, prefix));
    auto rg = explore(*r.net);
    auto ms = markings_by_state(*r.net, prefix);
    ASSERT_TRUE(ms);
    auto s2 = prefix.state("s2");
    EXPECT_FALSE(is_dominated((*ms)[s2], others(*ms, s2)));
    // no fresh transition survives
    EXPECT_EQ(r.net->num_transitions(), 1u);
}

TEST(Adequate, ReversibleInput) {
    auto l = restrict(fixture("CYCLES4"), {"a", "b"}, Mode::Directed);
    ASSERT_TRUE(is_reversible(l));
    for (auto& s : l.state_names()) {
        auto r = synthesize_adequate(l, s);
        ASSERT_TRUE(r.solved());
        auto ms = markings_by_state(*r.net, l);
        ASSERT_TRUE(ms);
        EXPECT_FALSE(is_dominated((*ms)[l.state(s)], others(*ms, l.state(s))));
    }
}

TEST(Adequate, SingleState) {
    auto r = synthesize_adequate(Lts(), "i");
    ASSERT_TRUE(r.solved());
    EXPECT_TRUE(verify(*r.net, Lts()));
    EXPECT_THROW(synthesize_adequate(Lts(), "nope"), UnknownState);
}

TEST(Adequate, EveryStateOfRandomGraphs) {
    std::mt19937 rng(31);
    for (int k = 0; k < 15; ++k) {
        auto [n, g] = oracle::random_bounded(rng, 16);
        g = oracle::strip_useless(g);
        for (StateId s = 0; s < g.num_states(); ++s) {
            auto r = synthesize_adequate_at(g, {s});
            ASSERT_TRUE(r.solved());
            auto ms = markings_by_state(*r.net, g);
            ASSERT_TRUE(ms);
            EXPECT_FALSE(is_dominated((*ms)[s], others(*ms, s)));
        }
    }
}

TEST(Verify, Examples) {
    auto n21 = oracle::net_fixture("NET21");
    EXPECT_TRUE(verify(n21, fixture("TS21")));
    EXPECT_FALSE(verify(n21, fixture("GRID6")));
}

TEST(Verify, RandomNetsRoundTrip) {
    std::mt19937 rng(37);
    for (int k = 0; k < 40; ++k) {
        auto [n, g] = oracle::random_bounded(rng, 32);
        g = oracle::strip_useless(g);
        auto r = synthesize(g);
        ASSERT_TRUE(r.solved());
        EXPECT_TRUE(verify(*r.net, g));
        EXPECT_TRUE(oracle::isomorphic(reachability_graph(*r.net), g));
    }
}
