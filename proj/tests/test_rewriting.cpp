#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "renet/canonical.hpp"
#include "renet/firing.hpp"
#include "renet/io.hpp"
#include "renet/rule_gen.hpp"
#include "renet/transform.hpp"

using namespace renet;

namespace {

const std::string corpus = RENET_CORPUS_DIR;

Rule corpus_rule(const std::string& name) { return load_rule(read_file(corpus + "/rules/" + name + ".json")); }
DecoratedNet start_net() { return load_net(read_file(corpus + "/start_net.json")); }

bool has_condition(const std::vector<MorphismViolation>& v, MorphismCondition c) {
    return std::any_of(v.begin(), v.end(), [&](const MorphismViolation& x) { return x.condition == c; });
}

// Rename every element through the given permutations, checking equality
// with the other net. Independent of the library's search.
bool isomorphic_brute(const DecoratedNet& a, const DecoratedNet& b) {
    auto ap = a.place_ids(), bp = b.place_ids();
    auto at = a.transition_ids(), bt = b.transition_ids();
    if (ap.size() != bp.size() || at.size() != bt.size()) return false;
    std::vector<std::size_t> pp(ap.size()), tp(at.size());
    std::iota(pp.begin(), pp.end(), 0);
    do {
        std::map<PlaceId, PlaceId> fp;
        for (std::size_t i = 0; i < ap.size(); ++i) fp[ap[i]] = bp[pp[i]];
        bool places_ok = true;
        for (const auto& p : ap) {
            const Place &x = a.places.at(p), &y = b.places.at(fp[p]);
            places_ok &= x.name == y.name && x.cap == y.cap && a.marking[p] == b.marking[fp[p]];
        }
        if (!places_ok) continue;
        std::iota(tp.begin(), tp.end(), 0);
        do {
            DecoratedNet r;
            for (const auto& p : ap) {
                r.places[fp[p]] = a.places.at(p);
                r.marking.set(fp[p], a.marking[p]);
            }
            std::map<TransitionId, TransitionId> ft;
            for (std::size_t i = 0; i < at.size(); ++i) ft[at[i]] = bt[tp[i]];
            auto rp = [&](const PlaceId& p) { return fp.at(p); };
            for (const auto& t : at) {
                Transition tr = a.transitions.at(t);
                tr.pre = tr.pre.mapped(rp);
                tr.post = tr.post.mapped(rp);
                std::set<PlaceId> inh;
                for (const auto& p : tr.inhibitors) inh.insert(fp[p]);
                tr.inhibitors = inh;
                r.transitions[ft[t]] = tr;
            }
            for (const auto& [x, y] : a.priority) r.priority.emplace(ft[x], ft[y]);
            if (r == b) return true;
        } while (std::next_permutation(tp.begin(), tp.end()));
    } while (std::next_permutation(pp.begin(), pp.end()));
    return false;
}

DecoratedNet shuffled_ids(const DecoratedNet& n, Rng& rng) {
    auto ps = n.place_ids();
    auto ts = n.transition_ids();
    std::vector<std::size_t> pp(ps.size()), tp(ts.size());
    std::iota(pp.begin(), pp.end(), 0);
    std::iota(tp.begin(), tp.end(), 0);
    std::shuffle(pp.begin(), pp.end(), rng);
    std::shuffle(tp.begin(), tp.end(), rng);
    std::map<PlaceId, PlaceId> fp;
    for (std::size_t i = 0; i < ps.size(); ++i) fp[ps[i]] = "x" + std::to_string(pp[i]);
    DecoratedNet r;
    for (const auto& p : ps) {
        r.places[fp[p]] = n.places.at(p);
        r.marking.set(fp[p], n.marking[p]);
    }
    std::map<TransitionId, TransitionId> ft;
    for (std::size_t i = 0; i < ts.size(); ++i) ft[ts[i]] = "y" + std::to_string(tp[i]);
    auto rp = [&](const PlaceId& p) { return fp.at(p); };
    for (const auto& t : ts) {
        Transition tr = n.transitions.at(t);
        tr.pre = tr.pre.mapped(rp);
        tr.post = tr.post.mapped(rp);
        std::set<PlaceId> inh;
        for (const auto& p : tr.inhibitors) inh.insert(fp[p]);
        tr.inhibitors = inh;
        r.transitions[ft[t]] = tr;
    }
    for (const auto& [x, y] : n.priority) r.priority.emplace(ft[x], ft[y]);
    return r;
}

} // namespace

// ---------------------------------------------------------------- morphisms

TEST(Morphism, ValidExample) {
    auto a = share(NetBuilder().place("a", "p", 1).transition("t", "t", {{"a", 1}}, {{"a", 1}}).build());
    auto b = share(NetBuilder()
                       .place("x", "p", 2)
                       .place("y", "p")
                       .transition("u", "t", {{"x", 1}}, {{"x", 1}})
                       .build());
    NetMorphism f{a, b, {{"a", "x"}}, {{"t", "u"}}};
    EXPECT_TRUE(check_morphism(f).empty());
    EXPECT_FALSE(is_strict(f)); // 1 token vs 2
}

TEST(Morphism, ViolationsAreNamed) {
    auto a = share(NetBuilder().place("a", "p", 1).transition("t", "t", {{"a", 1}}, {}).build());
    auto capped = share(
        NetBuilder().place("x", "p", 1, Capacity::of(3)).transition("u", "t", {{"x", 1}}, {}).build());
    auto v = check_morphism({a, capped, {{"a", "x"}}, {{"t", "u"}}});
    EXPECT_TRUE(has_condition(v, MorphismCondition::capacity));
    EXPECT_EQ(v.size(), 1u);

    auto empty_host = share(NetBuilder().place("x", "p", 0).transition("u", "t", {{"x", 1}}, {}).build());
    v = check_morphism({a, empty_host, {{"a", "x"}}, {{"t", "u"}}});
    EXPECT_TRUE(has_condition(v, MorphismCondition::marking));
    EXPECT_EQ(v.size(), 1u);

    auto renamed = share(NetBuilder().place("x", "r", 1).transition("u", "t", {{"x", 1}}, {}).build());
    EXPECT_TRUE(has_condition(check_morphism({a, renamed, {{"a", "x"}}, {{"t", "u"}}}), MorphismCondition::place_names));

    auto heavier = share(NetBuilder().place("x", "p", 1).transition("u", "t", {{"x", 2}}, {}).build());
    EXPECT_TRUE(has_condition(check_morphism({a, heavier, {{"a", "x"}}, {{"t", "u"}}}), MorphismCondition::arcs));

    auto labelled =
        share(NetBuilder().place("x", "p", 1).transition("u", "t", {{"x", 1}}, {}, LabelValue(3)).build());
    EXPECT_TRUE(
        has_condition(check_morphism({a, labelled, {{"a", "x"}}, {{"t", "u"}}}), MorphismCondition::transition_data));

    auto inhibited = share(NetBuilder()
                               .place("x", "p", 1)
                               .place("z", "p")
                               .transition("u", "t", {{"x", 1}}, {}, {}, Renew::identity, {"z"})
                               .build());
    EXPECT_TRUE(
        has_condition(check_morphism({a, inhibited, {{"a", "x"}}, {{"t", "u"}}}), MorphismCondition::inhibitors));

    EXPECT_TRUE(has_condition(check_morphism({a, renamed, {}, {{"t", "u"}}}), MorphismCondition::total));
}

TEST(Morphism, PriorityMustBePreserved) {
    auto a = share(NetBuilder().transition("s", {}, {}).transition("t", {}, {}).priority("s", "t").build());
    auto flat = share(NetBuilder().transition("s", {}, {}).transition("t", {}, {}).build());
    auto v = check_morphism({a, flat, {}, {{"s", "s"}, {"t", "t"}}});
    EXPECT_TRUE(has_condition(v, MorphismCondition::priority));
    EXPECT_TRUE(check_morphism({flat, a, {}, {{"s", "s"}, {"t", "t"}}}).empty());
    EXPECT_FALSE(is_strict({flat, a, {}, {{"s", "s"}, {"t", "t"}}})); // does not reflect the order
}

TEST(Morphism, StrictExamples) {
    auto chain2 = share(NetBuilder().transition("a", "t", {}, {}).transition("b", "t", {}, {}).priority("a", "b").build());
    auto chain3 = share(NetBuilder()
                            .transition("a", "t", {}, {})
                            .transition("c", "t", {}, {})
                            .transition("b", "t", {}, {})
                            .priority("a", "c")
                            .priority("c", "b")
                            .build());
    NetMorphism skip{chain2, chain3, {}, {{"a", "a"}, {"b", "b"}}};
    EXPECT_TRUE(is_valid_morphism(skip));
    EXPECT_FALSE(is_strict(skip)); // c lies between the images and is missed

    NetMorphism lower{chain2, chain3, {}, {{"a", "a"}, {"b", "c"}}};
    EXPECT_TRUE(is_strict(lower));

    auto two = share(NetBuilder().transition("a", "t", {}, {}).transition("b", "t", {}, {}).build());
    auto one = share(NetBuilder().transition("u", "t", {}, {}).build());
    NetMorphism fold{two, one, {}, {{"a", "u"}, {"b", "u"}}};
    EXPECT_TRUE(is_valid_morphism(fold));
    EXPECT_FALSE(fold.injective());
    EXPECT_FALSE(is_strict(fold));

    EXPECT_TRUE(is_strict(identity_morphism(chain3)));
}

TEST(Morphism, CompositionAndIdentity) {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        auto rr = random_rule(rng, "r", {4, 4});
        auto lm = compose(rr.match, rr.rule.l);
        EXPECT_TRUE(is_valid_morphism(lm));
        EXPECT_EQ(compose(identity_morphism(rr.match.target), rr.match), rr.match);
        EXPECT_EQ(compose(rr.match, identity_morphism(rr.rule.L)), rr.match);
    }
}

// ----------------------------------------------------------------- matching

TEST(Match, CorpusStartNet) {
    NetPtr n = share(start_net());
    auto ms = find_matches(corpus_rule("sequential_ext_s"), n);
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_EQ(ms[0].places.at("s"), "start");
    EXPECT_EQ(ms[0].places.at("a"), "p1");
    EXPECT_EQ(ms[0].transitions.at("t"), "t1");
    // the generic extension needs two places named p
    EXPECT_TRUE(find_matches(corpus_rule("sequential_ext"), n).empty());
}

TEST(Match, PolicyAllAdmitsFolding) {
    auto L = share(NetBuilder().place("a", "p").place("b", "p").build());
    auto N = share(NetBuilder().place("x", "p").build());
    EXPECT_TRUE(find_morphisms(L, N, MatchPolicy::injective).empty());
    auto all = find_morphisms(L, N, MatchPolicy::all);
    ASSERT_EQ(all.size(), 1u);
    EXPECT_FALSE(all[0].injective());
}

TEST(Match, AgreesWithBruteForce) {
    Rng rng(3);
    std::size_t total = 0;
    for (int round = 0; round < 120; ++round) {
        NetGenOptions o{4, 3, 2, 2};
        auto rr = random_rule(rng, "r", o);
        const NetPtr& L = rr.rule.L;
        const NetPtr& N = rr.match.target;
        auto lp = L->place_ids(), lt = L->transition_ids();
        auto np = N->place_ids(), nt = N->transition_ids();
        for (MatchPolicy pol : {MatchPolicy::injective, MatchPolicy::all}) {
            std::vector<NetMorphism> brute;
            std::vector<std::size_t> ip(lp.size(), 0), it(lt.size(), 0);
            const std::size_t combos_p = lp.empty() ? 1 : static_cast<std::size_t>(std::pow(np.size(), lp.size()));
            const std::size_t combos_t = lt.empty() ? 1 : static_cast<std::size_t>(std::pow(nt.size(), lt.size()));
            for (std::size_t cp = 0; cp < combos_p; ++cp)
                for (std::size_t ct = 0; ct < combos_t; ++ct) {
                    NetMorphism f{L, N, {}, {}};
                    std::size_t x = cp;
                    for (const auto& p : lp) {
                        f.places[p] = np[x % np.size()];
                        x /= np.size();
                    }
                    x = ct;
                    for (const auto& t : lt) {
                        f.transitions[t] = nt[x % nt.size()];
                        x /= nt.size();
                    }
                    if (pol == MatchPolicy::injective && !f.injective()) continue;
                    if (check_morphism(f).empty()) brute.push_back(f);
                }
            auto found = find_morphisms(L, N, pol);
            ASSERT_EQ(found.size(), brute.size()) << "round " << round;
            for (const auto& f : brute) EXPECT_NE(std::find(found.begin(), found.end(), f), found.end());
            total += found.size();
        }
        // the inclusion is always among the injective matches
        auto inj = find_morphisms(L, N);
        EXPECT_NE(std::find(inj.begin(), inj.end(), rr.match), inj.end());
    }
    EXPECT_GT(total, 120u);
}

TEST(Match, OrderIsDeterministic) {
    auto L = share(NetBuilder().place("a", "p").build());
    auto N = share(NetBuilder().place("z", "p").place("m", "p").place("b", "p").build());
    auto ms = find_morphisms(L, N);
    ASSERT_EQ(ms.size(), 3u);
    EXPECT_EQ(ms[0].places.at("a"), "b");
    EXPECT_EQ(ms[1].places.at("a"), "m");
    EXPECT_EQ(ms[2].places.at("a"), "z");
}

// ------------------------------------------------------------------- gluing

namespace {

// deletes place b and transition t: a -t-> b
Rule delete_target_rule() {
    auto L = NetBuilder().place("a", "p").place("b", "p").transition("t", "t", {{"a", 1}}, {{"b", 1}}).build();
    auto K = NetBuilder().place("a", "p").build();
    return make_rule("del", L, K, K, {{"a", "a"}}, {}, {{"a", "a"}}, {});
}

} // namespace

TEST(Gluing, Dangling) {
    Rule rule = delete_target_rule();
    auto N = share(NetBuilder()
                       .place("x", "p")
                       .place("y", "p")
                       .transition("t", "t", {{"x", 1}}, {{"y", 1}})
                       .transition("back", "back", {{"y", 1}}, {{"x", 1}})
                       .build());
    auto ms = find_matches(rule, N);
    ASSERT_EQ(ms.size(), 1u);
    auto rep = check_gluing(rule, ms[0]);
    EXPECT_TRUE(rep.has(GluingKind::dangling));
    EXPECT_FALSE(rep.has(GluingKind::token));
    EXPECT_THROW(pushout_complement(rule, ms[0]), GluingViolated);
    EXPECT_THROW(apply(rule, ms[0]), GluingViolated);
}

TEST(Gluing, DanglingInhibitor) {
    Rule rule = delete_target_rule();
    auto N = share(NetBuilder()
                       .place("x", "p")
                       .place("y", "p")
                       .transition("t", "t", {{"x", 1}}, {{"y", 1}})
                       .transition("w", "w", {}, {}, {}, Renew::identity, {"y"})
                       .build());
    EXPECT_TRUE(check_gluing(rule, find_matches(rule, N).at(0)).has(GluingKind::dangling));
}

TEST(Gluing, TokenExactness) {
    Rule rule = delete_target_rule();
    auto N = share(NetBuilder().place("x", "p").place("y", "p", 2).transition("t", "t", {{"x", 1}}, {{"y", 1}}).build());
    auto rep = check_gluing(rule, find_matches(rule, N).at(0));
    EXPECT_TRUE(rep.has(GluingKind::token));
    EXPECT_EQ(rep.violations.size(), 1u);
}

TEST(Gluing, Identification) {
    auto L = NetBuilder().place("a", "p").place("b", "p").build();
    auto K = NetBuilder().place("a", "p").build();
    Rule rule = make_rule("fold", L, K, K, {{"a", "a"}}, {}, {{"a", "a"}}, {});
    auto N = share(NetBuilder().place("x", "p").build());
    auto ms = find_matches(rule, N, MatchPolicy::all);
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_TRUE(check_gluing(rule, ms[0]).has(GluingKind::identification));
}

TEST(Gluing, PriorityOfDeletedTransition) {
    auto L = NetBuilder().transition("t", {}, {}).build();
    Rule rule = make_rule("drop", L, DecoratedNet{}, DecoratedNet{}, {}, {}, {}, {});
    auto N = share(NetBuilder().transition("a", "a", {}, {}).transition("t", {}, {}).priority("a", "t").build());
    auto ms = find_matches(rule, N);
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_TRUE(check_gluing(rule, ms[0]).has(GluingKind::priority));

    auto free = share(NetBuilder().transition("a", "a", {}, {}).transition("t", {}, {}).build());
    auto d = apply(rule, find_matches(rule, free).at(0));
    EXPECT_EQ(d.H->transitions.size(), 1u);
    EXPECT_TRUE(d.H->has_transition("a"));
}

TEST(Gluing, DeleteTransitionOnly) {
    auto L = NetBuilder().place("a", "p").place("b", "p").transition("t", "t", {{"a", 1}}, {{"b", 1}}).build();
    auto K = NetBuilder().place("a", "p").place("b", "p").build();
    Rule rule = make_rule("cut", L, K, K, {{"a", "a"}, {"b", "b"}}, {}, {{"a", "a"}, {"b", "b"}}, {});
    auto N = share(NetBuilder()
                       .place("x", "p", 1)
                       .place("y", "p")
                       .transition("t", "t", {{"x", 1}}, {{"y", 1}})
                       .transition("back", "t", {{"y", 1}}, {{"x", 1}})
                       .build());
    auto ms = find_matches(rule, N);
    ASSERT_EQ(ms.size(), 2u); // t and back both fit
    auto d = apply(rule, ms[1], {0, true});
    EXPECT_EQ(d.H->places.size(), 2u);
    EXPECT_EQ(d.H->transitions.size(), 1u);
    EXPECT_EQ(d.H->marking, N->marking);
    EXPECT_TRUE(d.left.oracles_run);
    EXPECT_TRUE(d.left.ok());
    EXPECT_TRUE(d.right.ok());
}

// ---------------------------------------------------------- transformations

TEST(Transform, IdentityRule) {
    Rng rng(5);
    for (int i = 0; i < 60; ++i) {
        DecoratedNet n = random_net(rng, {4, 3});
        DecoratedNet L = n;
        auto inc_p = detail::inclusion(n.places);
        auto inc_t = detail::inclusion(n.transitions);
        Rule rule = make_rule("id", L, L, L, inc_p, inc_t, inc_p, inc_t);
        NetPtr host = share(n);
        NetMorphism m{rule.L, host, inc_p, inc_t};
        ASSERT_TRUE(check_gluing(rule, m).ok());
        auto d = apply(rule, m, {0, true});
        EXPECT_EQ(*d.H, n);
        EXPECT_TRUE(d.left.ok() && d.right.ok());
    }
}

TEST(Transform, DeleteIsolatedPlace) {
    auto L = NetBuilder().place("z", "p").build();
    Rule rule = make_rule("gc", L, DecoratedNet{}, DecoratedNet{}, {}, {}, {}, {});
    auto N = share(NetBuilder().place("k", "q", 1).place("z", "p").transition("t", "t", {{"k", 1}}, {}).build());
    auto ms = find_matches(rule, N);
    ASSERT_EQ(ms.size(), 1u);
    auto c = pushout_complement(rule, ms[0], true);
    EXPECT_FALSE(c.D->has_place("z"));
    EXPECT_TRUE(c.square.ok());
    auto d = apply(rule, ms[0]);
    EXPECT_EQ(d.H->places.size(), 1u);
    EXPECT_EQ(d.H->marking, (Multiset{{"k", 1}}));
}

TEST(Transform, SequentialExtensionOnStartNet) {
    Rule rule = corpus_rule("sequential_ext_s");
    DecoratedNet n0 = start_net();
    NetPtr n = share(n0);
    auto m = find_matches(rule, n).at(0);
    auto d = apply(rule, m, {7, true});
    EXPECT_EQ(d.H->places.size(), n0.places.size() + 1);
    EXPECT_EQ(d.H->transitions.size(), n0.transitions.size() + 1);
    EXPECT_EQ(d.H->marking, n0.marking);

    auto expected = NetBuilder()
                        .place("s", "start", 1)
                        .place("a", "p")
                        .place("c", "p")
                        .transition("x", "t", {{"s", 1}}, {{"c", 1}})
                        .transition("y", "t", {{"c", 1}}, {{"a", 1}})
                        .transition("z", "t", {{"a", 1}}, {{"s", 1}})
                        .build();
    EXPECT_TRUE(isomorphic_brute(*d.H, expected));
    EXPECT_TRUE(net_isomorphic(*d.H, expected));

    // created elements carry the application index
    for (const auto& [t, tr] : d.H->transitions)
        if (t != "t2") {
            EXPECT_EQ(t.rfind("sequential_ext_s@7.", 0), 0u) << t;
        }

    // the token now leaves start through the new transition
    auto en = enabled_set(*d.H);
    ASSERT_EQ(en.size(), 1u);
    auto h1 = fire(*d.H, en[0]);
    EXPECT_EQ(h1.marking[d.comatch.place("s")], 0u);
    EXPECT_EQ(h1.marking[d.comatch.place("c")], 1u);

    EXPECT_TRUE(d.left.oracles_run && d.left.ok());
    EXPECT_TRUE(d.right.oracles_run && d.right.ok());
}

TEST(Transform, CorpusRulesAndInverses) {
    std::vector<std::pair<std::string, std::string>> pairs{{"sequential_ext", "sequential_red"},
                                                           {"parallel_ext", "parallel_red"}};
    // host with a chain p -> p -> p so every rule finds something
    auto host = NetBuilder()
                    .place("start", "start", 1)
                    .place("a", "p")
                    .place("b", "p")
                    .transition("t0", "t", {{"start", 1}}, {{"a", 1}})
                    .transition("t1", "t", {{"a", 1}}, {{"b", 1}})
                    .build();
    for (const auto& [ext, red] : pairs) {
        Rule r = corpus_rule(ext);
        Rule back = corpus_rule(red);
        NetPtr n = share(host);
        auto ms = find_matches(r, n);
        ASSERT_FALSE(ms.empty()) << ext;
        auto d = apply(r, ms[0], {0, true});
        EXPECT_TRUE(d.left.ok() && d.right.ok());
        auto d2 = apply(back, d.comatch, {1, true});
        EXPECT_TRUE(net_isomorphic(*d2.H, host)) << ext;
        EXPECT_TRUE(isomorphic_brute(*d2.H, host)) << ext;
        EXPECT_TRUE(d2.left.ok() && d2.right.ok());
    }
}

TEST(Transform, RandomRulesVerifyBothSquares) {
    Rng rng(2024);
    std::size_t applied = 0, refused = 0;
    for (int i = 0; i < 600 && applied < 150; ++i) {
        auto rr = random_rule(rng, "r" + std::to_string(i), {5, 4, 2, 2});
        auto rep = check_gluing(rr.rule, rr.match);
        if (!rep.ok()) {
            EXPECT_THROW(apply(rr.rule, rr.match), GluingViolated);
            ++refused;
            continue;
        }
        Derivation d = apply(rr.rule, rr.match, {static_cast<std::size_t>(i), true});
        ASSERT_TRUE(d.left.oracles_run && d.right.oracles_run);
        EXPECT_TRUE(d.left.ok()) << d.left.failure;
        EXPECT_TRUE(d.right.ok()) << d.right.failure;
        EXPECT_TRUE(is_strict(d.context.d));
        EXPECT_TRUE(is_strict(d.h));
        EXPECT_TRUE(validate_net(*d.H).empty());

        // undoing through the comatch gives the host back
        Rule back = inverse(rr.rule, "back");
        auto rep2 = check_gluing(back, d.comatch);
        ASSERT_TRUE(rep2.ok()) << rep2.summary();
        auto d2 = apply(back, d.comatch);
        EXPECT_TRUE(net_isomorphic(*d2.H, *rr.match.target));

        // determinism
        EXPECT_EQ(*apply(rr.rule, rr.match, {static_cast<std::size_t>(i), false}).H, *d.H);
        ++applied;
    }
    EXPECT_GE(applied, 100u);
    EXPECT_GT(refused, 0u);
}

TEST(Transform, GluingMatchesIndependentCheck) {
    Rng rng(77);
    for (int i = 0; i < 400; ++i) {
        auto rr = random_rule(rng, "r", {5, 4, 2, 2});
        const auto& L = *rr.rule.L;
        const auto& N = *rr.match.target;
        std::set<PlaceId> kept_p;
        for (const auto& [k, l] : rr.rule.l.places) kept_p.insert(l);
        std::set<TransitionId> kept_t;
        for (const auto& [k, l] : rr.rule.l.transitions) kept_t.insert(l);
        bool dangling = false, token = false;
        for (const auto& [p, pl] : L.places) {
            if (kept_p.count(p)) continue;
            const PlaceId& q = rr.match.places.at(p);
            token |= N.marking[q] != L.marking[p];
            for (const auto& [u, tr] : N.transitions)
                if (!L.has_transition(u) && (tr.pre.contains(q) || tr.post.contains(q) || tr.inhibitors.count(q)))
                    dangling = true;
        }
        // a pair between a deleted transition and one outside L must pass
        // through a preserved transition of L
        bool priority = false;
        for (const auto& [a, b] : N.priority) {
            const bool da = L.has_transition(a) && !kept_t.count(a), db = L.has_transition(b) && !kept_t.count(b);
            bool via = false;
            if (da && !L.has_transition(b))
                for (const auto& c : kept_t) via |= L.priority_less(a, c) && N.priority_leq(c, b);
            else if (db && !L.has_transition(a))
                for (const auto& c : kept_t) via |= N.priority_leq(a, c) && L.priority_less(c, b);
            else
                via = true;
            if (!via) priority = true;
        }
        auto rep = check_gluing(rr.rule, rr.match);
        EXPECT_EQ(rep.has(GluingKind::dangling), dangling);
        EXPECT_EQ(rep.has(GluingKind::token), token);
        EXPECT_EQ(rep.has(GluingKind::priority), priority);
        EXPECT_FALSE(rep.has(GluingKind::identification));
    }
}

// ---------------------------------------------------------- canonical forms

TEST(Canonical, InvariantUnderRenaming) {
    Rng rng(19);
    for (int i = 0; i < 300; ++i) {
        DecoratedNet n = random_net(rng, {5, 5});
        DecoratedNet s = shuffled_ids(n, rng);
        EXPECT_EQ(canonical_form(n), canonical_form(s));
        auto iso = find_isomorphism(share(n), share(s));
        ASSERT_TRUE(iso.has_value());
        EXPECT_TRUE(iso->injective());
    }
}

TEST(Canonical, AgreesWithBruteForceIsomorphism) {
    Rng rng(23);
    std::size_t iso = 0, non_iso = 0;
    for (int i = 0; i < 400; ++i) {
        NetGenOptions o{3, 3, 1, 1};
        o.priority_density = 0.5;
        DecoratedNet a = random_net(rng, o);
        DecoratedNet b = pick(rng, 2) ? shuffled_ids(a, rng) : random_net(rng, o);
        if (pick(rng, 3) == 0 && !b.places.empty()) {
            // near miss: move one token
            auto p = b.place_ids()[pick(rng, b.places.size())];
            if (b.places.at(p).cap.admits(b.marking[p] + 1)) b.marking.add(p, 1);
        }
        const bool brute = isomorphic_brute(a, b);
        EXPECT_EQ(net_isomorphic(a, b), brute);
        EXPECT_EQ(find_isomorphism(share(a), share(b)).has_value(), brute);
        (brute ? iso : non_iso)++;
    }
    EXPECT_GT(iso, 50u);
    EXPECT_GT(non_iso, 50u);
}

TEST(Canonical, SymmetricNets) {
    // a ring of identical places and transitions forces individualisation
    auto ring = [](std::vector<std::string> ids) {
        NetBuilder b;
        for (const auto& p : ids) b.place(p, "p");
        for (std::size_t i = 0; i < ids.size(); ++i)
            b.transition("t" + ids[i], "t", {{ids[i], 1}}, {{ids[(i + 1) % ids.size()], 1}});
        return b.build();
    };
    auto r1 = ring({"a", "b", "c", "d"});
    auto r2 = ring({"d", "b", "a", "c"});
    auto two = NetBuilder()
                   .place("a", "p")
                   .place("b", "p")
                   .place("c", "p")
                   .place("d", "p")
                   .transition("t1", "t", {{"a", 1}}, {{"b", 1}})
                   .transition("t2", "t", {{"b", 1}}, {{"a", 1}})
                   .transition("t3", "t", {{"c", 1}}, {{"d", 1}})
                   .transition("t4", "t", {{"d", 1}}, {{"c", 1}})
                   .build();
    EXPECT_TRUE(net_isomorphic(r1, r2));
    EXPECT_FALSE(net_isomorphic(r1, two)); // same colour refinement, different structure
    EXPECT_FALSE(isomorphic_brute(r1, two));
}
