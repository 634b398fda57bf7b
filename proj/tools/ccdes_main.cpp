// Command-line front end. Exit codes: 0 property holds, 1 property violated,
// 2 input error, 3 internal error or oracle disagreement; a batch exits with
// the worst code among its instances.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ccdes/composition.hpp"
#include "ccdes/gadgets.hpp"
#include "ccdes/instance.hpp"
#include "ccdes/oracle.hpp"
#include "ccdes/report.hpp"
#include "ccdes/verify.hpp"

namespace fs = std::filesystem;
using namespace ccdes;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

Composition build_composition(Property p, const Fsa& fsa, const ObserverSet* obs) {
    ObserverSet full;
    const ObserverSet* o = obs;
    if (centralized(p)) {
        full = full_observer(fsa);
        o = &full;
    }
    if (!o || o->size() == 0)
        throw std::invalid_argument("property '" + property_name(p) + "' requires observers");
    switch (p) {
        case Property::strong_detectability:
        case Property::co_detectability: return diamond_composition(fsa, *o);
        case Property::diagnosability:
        case Property::co_diagnosability: return composition_for_diagnosis(fsa, *o).comp;
        case Property::predictability:
        case Property::co_predictability: return composition_for_prediction(fsa, *o).comp;
    }
    throw std::logic_error("unknown property");
}

struct VerifyOptions {
    std::vector<std::string> instances;
    std::string property;
    int pump = -1;  ///< negative: no evidence requested
    bool cross_check = false;
    bool oracle_only = false;
    std::string dot_path;
    std::string json_path;
    int jobs = 1;
};

struct Outcome {
    int severity = 3;
    std::vector<std::string> lines;
    std::optional<std::string> report_json;
};

Outcome run_one(const std::string& path, Property prop, const VerifyOptions& opt) {
    Outcome out;
    auto lr = load_instance(path);
    for (auto& w : lr.warnings) out.lines.push_back(path + ": warning: " + w);
    if (!lr.ok()) {
        for (auto& e : lr.errors) out.lines.push_back(path + ": error: " + e);
        out.severity = 2;
        return out;
    }
    const Fsa& fsa = lr.instance->fsa;
    const ObserverSet& obs = lr.instance->observers;
    const ObserverSet* obs_ptr = obs.size() ? &obs : nullptr;

    try {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v = opt.oracle_only ? naive_verify(prop, fsa, obs_ptr)
                                    : verify_property(prop, fsa, obs_ptr);
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        Report rep;
        rep.instance_path = path;
        rep.digest = fnv1a(read_file(path));
        rep.property = prop;
        rep.holds = v.holds;
        rep.assumptions = check_assumptions(fsa);
        rep.certificate = v.certificate;
        rep.note = v.note;
        rep.timing_ms = ms;
        out.severity = v.holds ? 0 : 1;

        if (opt.cross_check && !opt.oracle_only) {
            Verdict o = naive_verify(prop, fsa, obs_ptr);
            if (o.holds != v.holds) {
                out.severity = 3;
                std::string msg = "oracle disagreement: verifier says " +
                                  std::string(v.holds ? "holds" : "violated") +
                                  ", oracle says " + (o.holds ? "holds" : "violated");
                out.lines.push_back(path + ": " + msg);
                rep.note = rep.note ? *rep.note + "; " + msg : msg;
            }
        }
        if (opt.pump >= 0 && v.certificate)
            rep.evidence = pump_certificate(fsa, obs_ptr, *v.certificate, opt.pump);

        std::ostringstream line;
        line << path << ": " << property_name(prop) << " "
             << (v.holds ? "holds" : "violated");
        line << " (" << std::fixed << std::setprecision(2) << ms << " ms)";
        if (!rep.assumptions.deadlock_free) line << " [deadlock states present]";
        if (!rep.assumptions.prompt) line << " [silent cycle present]";
        if (v.note) line << " [" << *v.note << "]";
        out.lines.insert(out.lines.begin(), line.str());
        out.report_json = report_to_json(rep);
        return out;
    } catch (const BudgetExceeded& e) {
        out.lines.push_back(path + ": error: " + e.what());
        out.severity = 3;
    } catch (const std::invalid_argument& e) {
        out.lines.push_back(path + ": error: " + e.what());
        out.severity = 2;
    } catch (const std::exception& e) {
        out.lines.push_back(path + ": internal error: " + e.what());
        out.severity = 3;
    }
    return out;
}

int cmd_verify(const VerifyOptions& opt) {
    auto prop = property_from_name(opt.property);
    if (!prop) {
        std::cerr << "error: unknown property '" << opt.property << "'\n";
        return 2;
    }
    if (!opt.dot_path.empty() && opt.instances.size() > 1) {
        std::cerr << "error: --dot needs a single instance\n";
        return 2;
    }

    std::vector<Outcome> results(opt.instances.size());
    int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(opt.instances.size())));
    if (jobs == 1) {
        for (std::size_t i = 0; i < opt.instances.size(); ++i)
            results[i] = run_one(opt.instances[i], *prop, opt);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= opt.instances.size()) return;
                    results[i] = run_one(opt.instances[i], *prop, opt);
                }
            });
        for (auto& t : workers) t.join();
    }

    // Report files are written on this thread only, in input order.
    int severity = 0;
    bool json_dir = !opt.json_path.empty() &&
                    (opt.instances.size() > 1 || fs::is_directory(opt.json_path));
    std::set<std::string> used_names;
    for (std::size_t i = 0; i < opt.instances.size(); ++i) {
        Outcome& r = results[i];
        severity = std::max(severity, r.severity);
        for (auto& line : r.lines) {
            if (r.severity >= 2)
                std::cerr << line << "\n";
            else
                std::cout << line << "\n";
        }
        if (!opt.json_path.empty() && r.report_json) {
            try {
                fs::path target(opt.json_path);
                if (json_dir) {
                    fs::create_directories(target);
                    std::string stem = fs::path(opt.instances[i]).stem().string();
                    std::string name = stem + ".report.json";
                    for (int n = 2; !used_names.insert(name).second; ++n)
                        name = stem + "-" + std::to_string(n) + ".report.json";
                    target /= name;
                }
                write_file(target, *r.report_json);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                severity = std::max(severity, 3);
            }
        }
    }

    if (!opt.dot_path.empty() && severity < 2) {
        try {
            auto lr = load_instance(opt.instances[0]);
            const ObserverSet* obs_ptr = lr.instance->observers.size() ? &lr.instance->observers
                                                                       : nullptr;
            Composition comp = build_composition(*prop, lr.instance->fsa, obs_ptr);
            write_file(opt.dot_path, export_dot(comp));
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            severity = std::max(severity, 2);
        } catch (const std::exception& e) {
            std::cerr << "internal error: " << e.what() << "\n";
            severity = std::max(severity, 3);
        }
    }
    return severity;
}

struct ComposeOptions {
    std::string instance;
    std::string property;
    std::string dot_path;
    std::string json_path;
};

int cmd_compose(const ComposeOptions& opt) {
    auto prop = property_from_name(opt.property);
    if (!prop) {
        std::cerr << "error: unknown property '" << opt.property << "'\n";
        return 2;
    }
    auto lr = load_instance(opt.instance);
    for (auto& w : lr.warnings) std::cerr << opt.instance << ": warning: " << w << "\n";
    if (!lr.ok()) {
        for (auto& e : lr.errors) std::cerr << opt.instance << ": error: " << e << "\n";
        return 2;
    }
    try {
        const ObserverSet* obs_ptr =
            lr.instance->observers.size() ? &lr.instance->observers : nullptr;
        Composition comp = build_composition(*prop, lr.instance->fsa, obs_ptr);
        if (!opt.dot_path.empty()) write_file(opt.dot_path, export_dot(comp));
        if (!opt.json_path.empty()) write_file(opt.json_path, composition_to_json(comp));
        if (opt.dot_path.empty() && opt.json_path.empty()) {
            std::cout << export_dot(comp);
        } else {
            std::cout << opt.instance << ": composition has " << comp.n() << " states, "
                      << comp.edges.size() << " transitions\n";
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

struct GenerateOptions {
    std::string reduction;
    std::vector<std::string> sources;
    std::string graph_file;
    std::string from_node;
    std::string to_node;
    int random = 0;
    int states = 4;
    int letters = 2;
    int nodes = 6;
    int edges = -1;
    std::uint64_t seed = 0;
    bool normalize = false;
    std::string out_path;
};

int cmd_generate(const GenerateOptions& opt) {
    try {
        ReductionInstance ri;
        bool auto_normalized = false;

        if (opt.reduction == "co-detectability" || opt.reduction == "co-predictability") {
            bool detect = opt.reduction == "co-detectability";
            std::vector<Dfa> dfas;
            if (opt.random > 0) {
                if (opt.random < 2)
                    throw std::invalid_argument("--random needs at least 2 source automata");
                Rng rng(opt.seed);
                for (int i = 0; i < opt.random; ++i)
                    dfas.push_back(detect ? random_acyclic_dfa(rng, opt.states, opt.letters)
                                          : random_complete_dfa(rng, opt.states, opt.letters));
                auto_normalized = true;
            } else {
                if (opt.sources.size() < 2)
                    throw std::invalid_argument(
                        "need --sources with at least 2 automata or --random N");
                for (auto& f : opt.sources) dfas.push_back(dfa_from_json(read_file(f)));
            }
            if (opt.normalize || auto_normalized)
                dfas = detect ? normalize_acyclic_dfas(dfas) : normalize_complete_dfas(dfas);
            ri = detect ? reduce_to_codetectability(dfas) : reduce_to_copredictability(dfas);
            if (opt.normalize || auto_normalized)
                ri.provenance.notes.push_back(detect
                                                  ? "sources normalized for the acyclic reduction"
                                                  : "sources normalized for the complete reduction");
            if (opt.random > 0)
                ri.provenance.notes.push_back("random sources: seed " + std::to_string(opt.seed));
        } else if (opt.reduction == "path-predictability") {
            Digraph g;
            std::string from = opt.from_node, to = opt.to_node;
            if (opt.random > 0) {
                Rng rng(opt.seed);
                int edges = opt.edges >= 0 ? opt.edges : 2 * opt.random;
                g = random_digraph(rng, opt.random, edges);
                from = g.nodes[static_cast<std::size_t>(rng.below(opt.random))];
                to = g.nodes[static_cast<std::size_t>(rng.below(opt.random))];
            } else {
                if (opt.graph_file.empty() || from.empty() || to.empty())
                    throw std::invalid_argument(
                        "need --graph with --from and --to, or --random N");
                g = digraph_from_json(read_file(opt.graph_file));
            }
            ri = reduce_path_to_predictability(g, from, to);
            if (opt.random > 0)
                ri.provenance.notes.push_back("random graph: seed " + std::to_string(opt.seed));
        } else {
            std::cerr << "error: unknown reduction '" << opt.reduction
                      << "' (expected co-detectability, co-predictability, or "
                         "path-predictability)\n";
            return 2;
        }

        fs::path out(opt.out_path);
        fs::path sidecar = out;
        sidecar.replace_extension();
        sidecar += ".provenance.json";
        write_file(out, instance_to_json(ri.fsa, ri.observers));
        write_file(sidecar, provenance_to_json(ri.provenance));

        std::cout << "wrote " << out.string() << " (" << ri.fsa.n_states() << " states, "
                  << ri.fsa.n_events() << " events, " << ri.observers.size() << " observers)\n";
        std::cout << "wrote " << sidecar.string();
        if (ri.provenance.expected_holds)
            std::cout << " (expected: " << property_name(ri.property) << " "
                      << (*ri.provenance.expected_holds ? "holds" : "violated") << ")";
        std::cout << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decides detectability, diagnosability, and predictability of "
                 "labelled finite-state automata under joint observation"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    VerifyOptions vo;
    auto add_verify_options = [&](CLI::App* cmd) {
        cmd->add_option("instances", vo.instances, "instance JSON files")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--property", vo.property, "property to decide")->required();
        cmd->add_option("--pump", vo.pump,
                        "attach concrete evidence with cycles repeated this many times");
        cmd->add_option("--json", vo.json_path,
                        "write a JSON report (directory when several instances are given)");
        cmd->add_option("--jobs", vo.jobs, "instances verified in parallel")
            ->check(CLI::PositiveNumber);
    };
    auto* verify = app.add_subcommand("verify", "decide a property of instances");
    add_verify_options(verify);
    verify->add_flag("--oracle", vo.cross_check,
                     "cross-check the verdict against the brute-force oracle");
    verify->add_option("--dot", vo.dot_path,
                       "write the composition the verifier searched as Graphviz");
    auto* oracle = app.add_subcommand("oracle", "decide a property by brute force only");
    add_verify_options(oracle);

    ComposeOptions co;
    auto* compose = app.add_subcommand("compose", "emit the verification composition");
    compose->add_option("instance", co.instance, "instance JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    compose->add_option("--property", co.property, "property whose composition to build")
        ->required();
    compose->add_option("--dot", co.dot_path, "write Graphviz to this file");
    compose->add_option("--json", co.json_path, "write the composition as JSON to this file");

    GenerateOptions go;
    auto* generate =
        app.add_subcommand("generate", "build a test instance with known expected verdict");
    generate->add_option("reduction", go.reduction,
                         "co-detectability, co-predictability, or path-predictability")
        ->required();
    generate->add_option("--sources", go.sources, "source DFA JSON files")
        ->check(CLI::ExistingFile);
    generate->add_option("--graph", go.graph_file, "source digraph JSON file")
        ->check(CLI::ExistingFile);
    generate->add_option("--from", go.from_node, "path source node");
    generate->add_option("--to", go.to_node, "path target node");
    generate->add_option("--random", go.random, "generate this many random sources (or nodes)");
    generate->add_option("--states", go.states, "states per random source")
        ->check(CLI::PositiveNumber);
    generate->add_option("--letters", go.letters, "letters per random source")
        ->check(CLI::PositiveNumber);
    generate->add_option("--edges", go.edges, "edges of the random graph");
    generate->add_option("--seed", go.seed, "random seed");
    generate->add_flag("--normalize", go.normalize,
                       "normalize sources into the shape the reduction needs");
    generate->add_option("--out", go.out_path, "instance file to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (verify->parsed()) return cmd_verify(vo);
    if (oracle->parsed()) {
        vo.oracle_only = true;
        return cmd_verify(vo);
    }
    if (compose->parsed()) return cmd_compose(co);
    if (generate->parsed()) return cmd_generate(go);
    return 2;
}
