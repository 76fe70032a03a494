#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "renet/renet.hpp"

using namespace renet;

namespace {

const std::string corpus = RENET_CORPUS_DIR;

Bundle running_example() { return load_bundle(read_file(corpus + "/running_example.json")); }

ReconfigurableNet corpus_net() { return ReconfigurableNet::from_bundle(running_example()); }

StepOptions corpus_options() { return step_options(running_example().settings); }

std::vector<std::string> labels(const std::vector<Successor>& s) {
    std::vector<std::string> out;
    for (const auto& x : s) out.push_back(to_string(x.label));
    return out;
}

using EdgeKey = std::tuple<std::string, std::string, std::string>;

std::set<EdgeKey> edge_keys(const ReachabilityGraph& g) {
    std::set<EdgeKey> out;
    for (const auto& e : g.edges) out.emplace(g.nodes[e.source].key, to_string(e.label), g.nodes[e.target].key);
    return out;
}

std::set<std::string> node_keys(const ReachabilityGraph& g) {
    std::set<std::string> out;
    for (const auto& n : g.nodes) out.insert(n.key);
    return out;
}

bool has_fork(const DecoratedNet& n) {
    for (const auto& [t, tr] : n.transitions)
        if (tr.post.total() >= 2 || tr.pre.total() >= 2) return true;
    return false;
}

} // namespace

TEST(Successors, EmptyWhenNothingApplies) {
    ReconfigurableNet rn{NetBuilder().place("p").transition("t", {{"p", 1}}, {}).build(), {}};
    EXPECT_TRUE(successors(rn, {}).empty());
}

TEST(Successors, CorpusStartNet) {
    auto s = successors(corpus_net(), corpus_options());
    EXPECT_EQ(labels(s), (std::vector<std::string>{"fire(t1)", "apply(sequential_ext_s,0)"}));
    EXPECT_EQ(s[0].net.marking, (Multiset{{"p1", 1}}));
}

TEST(Successors, PriorityModes) {
    ReconfigurableNet rn{NetBuilder().place("p", 1).place("q", 1).transition("a", {{"p", 1}}, {}).transition("b", {{"q", 1}}, {}).build(),
                         {}};
    StepOptions o;
    o.firing.mode = PriorityMode::maximum;
    EXPECT_TRUE(successors(rn, o).empty());
    o.firing.mode = PriorityMode::maximal;
    EXPECT_EQ(labels(successors(rn, o)), (std::vector<std::string>{"fire(a)", "fire(b)"}));
}

TEST(Successors, ParallelStepsBehindFlag) {
    ReconfigurableNet rn{NetBuilder().place("p", 2).place("q", 1).transition("a", {{"p", 1}}, {}).transition("b", {{"q", 1}}, {}).build(),
                         {}};
    StepOptions o;
    o.firing.mode = PriorityMode::maximal;
    EXPECT_EQ(successors(rn, o).size(), 2u);
    o.parallel = true;
    EXPECT_EQ(labels(successors(rn, o)),
              (std::vector<std::string>{"fire(a)", "fire(b)", "fire_parallel(a=1,b=1)", "fire_parallel(a=2)"}));
    for (const auto& s : successors(rn, o))
        if (auto p = std::get_if<FireParallelStep>(&s.label)) {
            Count total = 0;
            for (const auto& [t, k] : p->vector) total += k;
            EXPECT_LE(total, 2u);
        }
}

TEST(Explore, DepthZeroIsRootOnly) {
    ExploreOptions o;
    o.depth = 0;
    o.step = corpus_options();
    auto g = explore(corpus_net(), o);
    ASSERT_EQ(g.nodes.size(), 1u);
    EXPECT_TRUE(g.edges.empty());
    EXPECT_TRUE(g.truncated_depth);
    EXPECT_FALSE(g.truncated_nodes);
}

TEST(Explore, LabelsArePartOfTheState) {
    auto loop = [](Renew r) {
        return ReconfigurableNet{
            NetBuilder().place("p", 1).transition("t", "t", {{"p", 1}}, {{"p", 1}}, LabelValue(0), r).build(), {}};
    };
    ExploreOptions o;
    o.depth = 5;
    auto same = explore(loop(Renew::identity), o);
    EXPECT_EQ(same.nodes.size(), 1u);
    EXPECT_EQ(same.edges.size(), 1u); // the self-loop
    EXPECT_FALSE(same.truncated_depth);
    // one new label per firing: nodes at distance 0..5
    auto inc = explore(loop(Renew::inc), o);
    EXPECT_EQ(inc.nodes.size(), 6u);
    EXPECT_TRUE(inc.truncated_depth);
    // boolean negation cycles back after two firings
    EXPECT_EQ(explore(loop(Renew::logical_not), o).nodes.size(), 1u);
}

TEST(Explore, RunningExampleShapeAfterTwoSteps) {
    ExploreOptions o;
    o.depth = 2;
    o.step = corpus_options();
    auto g = explore(corpus_net(), o);
    const DecoratedNet& root = g.nodes[0].net;
    bool found = false;
    for (const auto& n : g.nodes) {
        if (n.net.places.size() != root.places.size() + 1) continue;
        if (n.net.transitions.size() != root.transitions.size() + 1) continue;
        if (n.net.marking["start"] == 0 && n.net.marking.total() == 1) found = true;
    }
    EXPECT_TRUE(found);
}

TEST(Explore, EdgesReplayAndKeysAreSound) {
    ExploreOptions o;
    o.depth = 4;
    o.max_nodes = 120;
    o.step = corpus_options();
    ReconfigurableNet rn = corpus_net();
    auto g = explore(rn, o);
    ASSERT_GT(g.nodes.size(), 20u);
    EXPECT_LE(g.nodes.size(), o.max_nodes);
    for (const auto& e : g.edges) {
        DecoratedNet again = replay(g.nodes[e.source].net, rn.rules, e.label, o.step, e.source);
        EXPECT_TRUE(find_isomorphism(share(again), share(g.nodes[e.target].net)).has_value()) << to_string(e.label);
    }
    // distinct keys really are non-isomorphic nets
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        for (std::size_t j = i + 1; j < g.nodes.size(); ++j)
            EXPECT_FALSE(find_isomorphism(share(g.nodes[i].net), share(g.nodes[j].net)).has_value()) << i << "," << j;
}

TEST(Explore, RaisingBoundsKeepsEverything) {
    ReconfigurableNet rn = corpus_net();
    ExploreOptions lo;
    lo.step = corpus_options();
    for (std::size_t d = 0; d < 4; ++d)
        for (std::size_t budget : {5u, 20u, 60u}) {
            lo.depth = d;
            lo.max_nodes = budget;
            ExploreOptions hi = lo;
            hi.depth = d + 1;
            hi.max_nodes = budget * 2;
            auto a = explore(rn, lo), b = explore(rn, hi);
            auto an = node_keys(a), bn = node_keys(b);
            EXPECT_TRUE(std::includes(bn.begin(), bn.end(), an.begin(), an.end())) << d << "/" << budget;
            auto ae = edge_keys(a), be = edge_keys(b);
            EXPECT_TRUE(std::includes(be.begin(), be.end(), ae.begin(), ae.end())) << d << "/" << budget;
        }
}

TEST(Explore, NodeBudgetBinds) {
    ExploreOptions o;
    o.depth = 10;
    o.max_nodes = 7;
    o.step = corpus_options();
    auto g = explore(corpus_net(), o);
    EXPECT_EQ(g.nodes.size(), 7u);
    EXPECT_TRUE(g.truncated_nodes);
    for (const auto& e : g.edges) EXPECT_LT(e.target, g.nodes.size());
}

TEST(Explore, ExactIdentitySplitsIsomorphicNodes) {
    ExploreOptions o;
    o.depth = 3;
    o.step = corpus_options();
    auto iso = explore(corpus_net(), o);
    o.identity = NodeIdentity::exact;
    auto exact = explore(corpus_net(), o);
    EXPECT_GE(exact.nodes.size(), iso.nodes.size());
}

TEST(Explore, StartNetNotReachedAfterSequentialExtension) {
    ExploreOptions o;
    o.depth = 100;
    o.max_nodes = 500;
    o.step = corpus_options();
    auto g = explore(corpus_net(), o);
    EXPECT_EQ(g.nodes.size(), 500u);
    // everything reachable inside the graph from the target of an extension step
    std::vector<std::vector<std::size_t>> out(g.nodes.size());
    std::vector<std::size_t> stack;
    for (const auto& e : g.edges) {
        out[e.source].push_back(e.target);
        if (auto a = std::get_if<ApplyStep>(&e.label); a && a->rule == "sequential_ext_s") stack.push_back(e.target);
    }
    ASSERT_FALSE(stack.empty());
    std::vector<bool> seen(g.nodes.size(), false);
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        if (seen[v]) continue;
        seen[v] = true;
        for (std::size_t w : out[v]) stack.push_back(w);
    }
    EXPECT_FALSE(seen[0]);
    // nor any other node isomorphic to the start net
    for (std::size_t i = 1; i < g.nodes.size(); ++i)
        EXPECT_TRUE(!seen[i] || !net_isomorphic(g.nodes[i].net, g.nodes[0].net)) << i;
}

TEST(Explore, ExportIsDeterministic) {
    ExploreOptions o;
    o.depth = 3;
    o.step = corpus_options();
    auto a = explore(corpus_net(), o), b = explore(corpus_net(), o);
    EXPECT_EQ(dump(graph_to_json(a)), dump(graph_to_json(b)));
    EXPECT_EQ(graph_to_dot(a), graph_to_dot(b));
    Json j = graph_to_json(a);
    EXPECT_EQ(j["nodes"].size(), a.nodes.size());
    EXPECT_EQ(j["edges"].size(), a.edges.size());
    EXPECT_EQ(j["nodes"][0]["summary"]["places"], 2);
    EXPECT_EQ(graph_to_dot(a).rfind("digraph", 0), 0u);
}

TEST(Simulate, ZeroStepsIsTheRoot) {
    auto t = simulate(corpus_net(), 0, 5, corpus_options());
    EXPECT_TRUE(t.steps.empty());
    EXPECT_FALSE(t.halted_early);
    EXPECT_EQ(t.final_net, corpus_net().net);
}

TEST(Simulate, SameSeedSameTrace) {
    for (std::uint64_t seed : {0ull, 1ull, 42ull, 123456789ull}) {
        auto a = simulate(corpus_net(), 25, seed, corpus_options());
        auto b = simulate(corpus_net(), 25, seed, corpus_options());
        EXPECT_EQ(dump(trace_to_json(a)), dump(trace_to_json(b)));
    }
}

TEST(Simulate, HaltsEarlyWhenStuck) {
    ReconfigurableNet rn{NetBuilder().place("p", 2).transition("t", {{"p", 1}}, {}).build(), {}};
    auto t = simulate(rn, 10, 1, {});
    EXPECT_EQ(t.steps.size(), 2u);
    EXPECT_TRUE(t.halted_early);
    EXPECT_EQ(t.final_net.marking.total(), 0u);
}

TEST(Simulate, TracesReplayAndForksComeFromParallelExtension) {
    ReconfigurableNet rn = corpus_net();
    const StepOptions o = corpus_options();
    std::size_t with_parallel = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto t = simulate(rn, 10, seed, o);
        DecoratedNet n = rn.net;
        bool parallel_seen = false;
        for (std::size_t i = 0; i < t.steps.size(); ++i) {
            n = replay(n, rn.rules, t.steps[i], o, i);
            if (auto a = std::get_if<ApplyStep>(&t.steps[i]); a && a->rule == "parallel_ext") {
                parallel_seen = true;
                EXPECT_TRUE(has_fork(n)) << seed;
            }
        }
        EXPECT_EQ(n, t.final_net) << seed;
        EXPECT_TRUE(!has_fork(t.final_net) || parallel_seen) << seed;
        with_parallel += parallel_seen;
    }
    EXPECT_GT(with_parallel, 0u);
}
