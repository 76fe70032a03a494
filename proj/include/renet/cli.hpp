#pragma once

// Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "renet/law_suite.hpp"
#include "renet/state_space.hpp"

namespace renet {

namespace detail {

struct UsageError : Error {
    using Error::Error;
};

inline std::uint64_t parse_seed(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(text, &used);
        if (used != text.size() || text.empty() || text[0] == '-') throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError(what + ": not a non-negative integer: '" + text + "'");
    }
}

inline TransitionVector parse_vector(const std::string& text) {
    TransitionVector v;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string item = text.substr(pos, comma - pos);
        std::size_t eq = item.find('=');
        if (item.empty() || eq == std::string::npos || eq == 0)
            throw UsageError("--vector: expected t1=k1,t2=k2, got '" + text + "'");
        v[item.substr(0, eq)] += parse_seed(item.substr(eq + 1), "--vector");
        pos = comma + 1;
    }
    return v;
}

struct Loaded {
    Bundle bundle;
    bool was_bundle = false;
};

inline Loaded load_input(const std::string& path) {
    std::string text = read_file(path);
    Json j = parse_json(text);
    Loaded l;
    l.was_bundle = document_kind(j) == DocumentKind::bundle;
    l.bundle = load_bundle(text);
    return l;
}

/// The updated input: a bundle stays a bundle, a bare net stays a net.
inline std::string save_like(const Loaded& in, const DecoratedNet& n) {
    if (!in.was_bundle) return save_net(n);
    Bundle b = in.bundle;
    b.net = n;
    return save_bundle(b);
}

inline Json morphism_json(const NetMorphism& m) {
    Json p = Json::object(), t = Json::object();
    for (const auto& [x, y] : m.places) p[x] = y;
    for (const auto& [x, y] : m.transitions) t[x] = y;
    return {{"places", p}, {"transitions", t}};
}

inline std::string square_line(const char* which, const SquareCheck& c) {
    std::string s = std::string(which) + " square: " + (c.ok() ? "pushout" : "NOT a pushout");
    if (c.oracles_run) s += " (structural and oracle checks)";
    if (!c.failure.empty()) s += ": " + c.failure;
    return s;
}

} // namespace detail

/// Runs one command. `args` excludes the program name.
inline int cli_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reconfigurable decorated Petri nets: firing, rewriting and exploration", "renet"};
    app.require_subcommand(1);

    std::string priority_mode, match_policy;
    bool strict_capacity = false;
    app.add_option("--priority-mode", priority_mode, "maximum|maximal (overrides the bundle)")
        ->check(CLI::IsMember({"maximum", "maximal"}));
    app.add_option("--match-policy", match_policy, "injective|all (overrides the bundle)")
        ->check(CLI::IsMember({"injective", "all"}));
    app.add_flag("--strict-capacity", strict_capacity, "check capacity against M + post");

    std::string file;
    auto with_file = [&](CLI::App* sub, const char* what) {
        sub->add_option("file", file, what)->required();
        sub->fallthrough();
        return sub;
    };

    auto* validate = with_file(app.add_subcommand("validate", "check a net, rule or bundle document"), "document");
    auto* enabled = with_file(app.add_subcommand("enabled", "list enabled transitions and why others are not"), "bundle");

    auto* fire_cmd = with_file(app.add_subcommand("fire", "fire one transition"), "bundle");
    std::string transition;
    std::size_t count = 1;
    fire_cmd->add_option("--transition", transition, "transition id")->required();
    fire_cmd->add_option("--count", count, "fire this many times in sequence");

    auto* fire_par = with_file(app.add_subcommand("fire-parallel", "fire a transition vector in one step"), "bundle");
    std::string vector_text;
    fire_par->add_option("--vector", vector_text, "t1=k1,t2=k2")->required();

    auto* match_cmd = with_file(app.add_subcommand("match", "list matches of a rule"), "bundle");
    std::string rule_name;
    bool all_matches = false;
    match_cmd->add_option("--rule", rule_name, "rule name")->required();
    match_cmd->add_flag("--all", all_matches, "also list matches that violate the gluing condition");

    auto* apply_cmd = with_file(app.add_subcommand("apply", "apply a rule at a match"), "bundle");
    std::size_t match_index = 0;
    bool verify = false;
    apply_cmd->add_option("--rule", rule_name, "rule name")->required();
    apply_cmd->add_option("--match", match_index, "index as printed by `match`")->required();
    apply_cmd->add_flag("--verify-pushouts", verify, "check both squares with the pushout oracles");

    const char* env_seed = std::getenv("RENET_SEED");
    std::string seed_text = env_seed ? env_seed : "0";

    auto* sim = with_file(app.add_subcommand("simulate", "random run"), "bundle");
    std::size_t steps = 10;
    sim->add_option("--steps", steps, "number of steps");
    sim->add_option("--seed", seed_text, "generator seed (default: $RENET_SEED or 0)");

    auto* exp = with_file(app.add_subcommand("explore", "bounded reachability graph"), "bundle");
    std::size_t depth = 3, max_nodes = 200;
    std::string dot_file, identity = "isomorphism";
    bool parallel = false;
    exp->add_option("--depth", depth, "depth bound");
    exp->add_option("--max-nodes", max_nodes, "node budget");
    exp->add_option("--dot", dot_file, "also write a DOT rendering to this file");
    exp->add_option("--identity", identity, "isomorphism|exact")->check(CLI::IsMember({"isomorphism", "exact"}));
    for (auto* s : {sim, exp}) s->add_flag("--parallel", parallel, "include concurrent steps of total multiplicity 2");

    auto* check = app.add_subcommand("check", "run the poset law suites");
    std::string suite;
    std::size_t max_size = 3, samples = 200;
    check->add_option("suite", suite, "poset-laws|adjunction|vk")
        ->required()
        ->check(CLI::IsMember({"poset-laws", "adjunction", "vk"}));
    check->add_option("--max-size", max_size, "largest poset size");
    check->add_option("--samples", samples, "random instances");
    check->add_option("--seed", seed_text, "generator seed (default: $RENET_SEED or 0)");
    check->fallthrough();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << "run 'renet --help' for usage\n";
        return 2;
    }

    try {
        auto settings_for = [&](const Bundle& b) {
            Settings s = b.settings;
            if (!priority_mode.empty()) s.priority_mode = *parse_priority_mode(priority_mode);
            if (!match_policy.empty()) s.match_policy = *parse_match_policy(match_policy);
            if (strict_capacity) s.strict_capacity = true;
            return s;
        };

        if (*validate) {
            std::string text = read_file(file);
            Json j = parse_json(text);
            switch (document_kind(j)) {
            case DocumentKind::net: {
                DecoratedNet n = net_from_json(j);
                out << "ok: net with " << n.places.size() << " places, " << n.transitions.size() << " transitions\n";
                break;
            }
            case DocumentKind::rule: {
                Rule r = rule_from_json(j);
                out << "ok: rule " << r.name << "\n";
                break;
            }
            case DocumentKind::bundle: {
                Bundle b = bundle_from_json(j);
                ReconfigurableNet::from_bundle(b);
                out << "ok: bundle with " << b.net.places.size() << " places, " << b.net.transitions.size()
                    << " transitions, " << b.rules.size() << " rules\n";
                break;
            }
            }
            return 0;
        }

        if (*check) {
            LawOptions o;
            o.max_size = max_size;
            o.samples = samples;
            o.seed = detail::parse_seed(seed_text, "--seed");
            o.exhaustive_size = std::min<std::size_t>(max_size, 3);
            std::vector<LawReport> reports;
            if (suite == "poset-laws") reports = check_poset_laws(o);
            if (suite == "adjunction") reports.push_back(check_adjunction_laws(o));
            if (suite == "vk") reports = check_vk_laws(o);
            bool ok = true;
            for (const auto& r : reports) {
                out << r.law << ": " << r.checked << " checked, " << r.failures.size() << " failures\n";
                for (const auto& f : r.failures) out << "  " << f << "\n";
                ok &= r.ok();
            }
            return ok ? 0 : 1;
        }

        detail::Loaded in = detail::load_input(file);
        const Settings s = settings_for(in.bundle);
        const FiringOptions fo = s.firing();

        if (*enabled) {
            for (const auto& t : in.bundle.net.transition_ids()) {
                Enablement e = check_enabled(in.bundle.net, t, fo);
                if (!e.failed)
                    out << t << ": enabled\n";
                else
                    out << t << ": disabled (" << to_string(*e.failed) << ") " << e.detail << "\n";
            }
            return 0;
        }
        if (*fire_cmd) {
            DecoratedNet n = in.bundle.net;
            for (std::size_t i = 0; i < count; ++i) n = fire(n, transition, fo);
            out << detail::save_like(in, n);
            return 0;
        }
        if (*fire_par) {
            out << detail::save_like(in, fire_parallel(in.bundle.net, detail::parse_vector(vector_text), fo));
            return 0;
        }

        ReconfigurableNet rn = ReconfigurableNet::from_bundle(in.bundle);
        if (*match_cmd) {
            const Rule& rule = in.bundle.rule(rule_name);
            auto ms = find_matches(rule, share(rn.net), s.match_policy);
            Json list = Json::array();
            for (std::size_t i = 0; i < ms.size(); ++i) {
                GluingReport rep = check_gluing(rule, ms[i]);
                if (!rep.ok() && !all_matches) continue;
                Json entry = detail::morphism_json(ms[i]);
                entry["index"] = i;
                entry["applicable"] = rep.ok();
                Json v = Json::array();
                for (const auto& x : rep.violations)
                    v.push_back({{"kind", to_string(x.kind)}, {"element", x.element}, {"detail", x.detail}});
                entry["violations"] = v;
                list.push_back(entry);
            }
            out << dump(list);
            return 0;
        }
        if (*apply_cmd) {
            const Rule& rule = in.bundle.rule(rule_name);
            auto ms = find_matches(rule, share(rn.net), s.match_policy);
            if (match_index >= ms.size())
                throw ResolutionError("rule '" + rule_name + "' has " + std::to_string(ms.size()) +
                                      " matches; no index " + std::to_string(match_index));
            Derivation d = apply(rule, ms[match_index], ApplyOptions{0, verify});
            if (verify) err << detail::square_line("left", d.left) << "\n" << detail::square_line("right", d.right) << "\n";
            out << detail::save_like(in, *d.H);
            return 0;
        }

        StepOptions so{fo, s.match_policy, parallel};
        if (*sim) {
            auto tr = simulate(rn, steps, detail::parse_seed(seed_text, "--seed"), so);
            out << dump(trace_to_json(tr));
            return 0;
        }
        if (*exp) {
            ExploreOptions eo;
            eo.depth = depth;
            eo.max_nodes = max_nodes;
            eo.step = so;
            eo.identity = identity == "exact" ? NodeIdentity::exact : NodeIdentity::isomorphism;
            auto g = explore(rn, eo);
            out << dump(graph_to_json(g));
            if (!dot_file.empty()) {
                std::ofstream dot(dot_file, std::ios::binary);
                if (!dot) throw Error("cannot write '" + dot_file + "'");
                dot << graph_to_dot(g);
            }
            return 0;
        }
    } catch (const detail::UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

inline int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_dispatch(std::move(args), std::cout, std::cerr);
}

} // namespace renet
