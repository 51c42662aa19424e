#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wlpower/cache.hpp"
#include "wlpower/io.hpp"

namespace wlpower::cli {

enum class Command { Distinguish, Cops, Ef, Hom, Power, Validate };

enum ExitCode : int { kOk = 0, kMismatch = 1, kInputError = 2, kResourceExhausted = 3 };

struct Budgets {
    std::size_t max_states = 5'000'000;
    int max_nodes = 6;  // enumeration bound for power and validate
    long long time_limit_ms = 600'000;
};

struct RunConfig {
    Command command = Command::Distinguish;
    std::string spec_path;
    std::string spec2_path;           // validate --suite monotonicity: the larger spec
    std::vector<std::string> graphs;  // distinguish/ef: G, H; cops: F; hom: pattern, target
    std::vector<std::pair<Node, Node>> pins;
    Budgets budgets;
    std::string output;      // empty: standard output
    std::string csv_output;  // power: CSV summary path
    std::optional<std::string> cache_dir;
    bool certificate = false;
    std::string suite;
    int k = 2;
    int max_pattern_nodes = 6;
    unsigned threads = 1;
    std::uint64_t seed = 1;
};

inline std::string_view command_name(Command c) {
    switch (c) {
        case Command::Distinguish: return "distinguish";
        case Command::Cops: return "cops";
        case Command::Ef: return "ef";
        case Command::Hom: return "hom";
        case Command::Power: return "power";
        case Command::Validate: return "validate";
    }
    return "?";
}

/// ConfigError unless budgets are positive and the command's inputs are present.
inline void check_config(const RunConfig& c) {
    if (c.budgets.max_states == 0 || c.budgets.max_nodes <= 0 || c.budgets.time_limit_ms <= 0)
        throw ConfigError("budgets must be strictly positive");
    if (c.threads == 0) throw ConfigError("--threads must be positive");
    auto need_graphs = [&](std::size_t n) {
        if (c.graphs.size() != n)
            throw ConfigError(std::string(command_name(c.command)) + " needs " + std::to_string(n) + " graph input(s)");
    };
    const bool needs_spec = c.command != Command::Hom &&
                            !(c.command == Command::Validate && c.suite == "treewidth");
    if (needs_spec && c.spec_path.empty()) throw ConfigError("--spec is required");
    switch (c.command) {
        case Command::Distinguish:
        case Command::Ef:
        case Command::Hom: need_graphs(2); break;
        case Command::Cops: need_graphs(1); break;
        case Command::Power: break;
        case Command::Validate:
            if (!parse_suite(c.suite)) throw ConfigError("unknown suite \"" + c.suite + "\"");
            if (c.suite == "monotonicity" && c.spec2_path.empty())
                throw ConfigError("--spec2 is required for the monotonicity suite");
            if (c.suite == "soundness" && c.max_pattern_nodes <= 0)
                throw ConfigError("--max-pattern-nodes must be positive");
            break;
    }
}

/// Spec file path, falling back to the shipped presets directory for bare names.
inline GfwlSpec load_spec(const std::string& path) {
    std::error_code ec;
#ifdef WLPOWER_PRESET_DIR
    if (!std::filesystem::exists(path, ec)) {
        const auto preset = std::filesystem::path(WLPOWER_PRESET_DIR) / path;
        if (std::filesystem::exists(preset, ec)) return read_spec_file(preset);
    }
#endif
    return read_spec_file(path);
}

/// A graph file holding exactly one graph, or an inline graph6 string.
inline Graph load_graph(const std::string& input) {
    std::error_code ec;
    if (std::filesystem::exists(input, ec)) {
        auto graphs = read_graph_file(input);
        if (graphs.size() != 1)
            throw ConfigError(input + ": expected one graph, found " + std::to_string(graphs.size()));
        return graphs.front();
    }
    const auto ext = std::filesystem::path(input).extension();
    if (ext == ".g6" || ext == ".json" || input.find('/') != std::string::npos)
        throw InputError("cannot open " + input);
    try {
        return parse_graph6(input);
    } catch (const ParseError& e) {
        throw ParseError("inline graph6 \"" + input + "\": " + e.message(), e.offset());
    }
}

inline std::optional<std::filesystem::path> cache_directory(const RunConfig& c) {
    if (const char* env = std::getenv("WLPOWER_CACHE"); env && *env) return std::filesystem::path(env);
    if (c.cache_dir) return std::filesystem::path(*c.cache_dir);
    return std::nullopt;
}

namespace detail {

struct Outcome {
    Json payload;
    Json telemetry = Json::object();
    int exit_code = kOk;
    std::string csv;
};

class Runner {
public:
    explicit Runner(const RunConfig& c) : c_(c) {
        if (auto dir = cache_directory(c)) cache_.emplace(*dir);
        limits_.max_states = c.budgets.max_states;
        limits_.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(c.budgets.time_limit_ms);
    }

    Outcome run(std::ostream& err) {
        switch (c_.command) {
            case Command::Distinguish: return distinguish_cmd(err);
            case Command::Cops: return game_cmd(err, false);
            case Command::Ef: return game_cmd(err, true);
            case Command::Hom: return hom_cmd();
            case Command::Power: return power_cmd(err);
            case Command::Validate: return validate_cmd();
        }
        return {};
    }

private:
    // Serves `compute` through the cache when one is configured and `cacheable` holds.
    template <class Compute>
    Json cached(const std::string& key, bool cacheable, Outcome& out, std::ostream& err, Compute&& compute) {
        if (!cache_ || !cacheable) {
            out.telemetry["cache"] = "off";
            return compute(out);
        }
        if (auto hit = cache_->lookup(key, &err)) {
            out.telemetry["cache"] = "hit";
            return *hit;
        }
        out.telemetry["cache"] = "miss";
        Json payload = compute(out);
        if (out.exit_code == kOk) cache_->store(key, payload);
        return payload;
    }

    Outcome distinguish_cmd(std::ostream& err) {
        const auto spec = load_spec(c_.spec_path);
        const Graph g = load_graph(c_.graphs[0]);
        const Graph h = load_graph(c_.graphs[1]);
        Outcome out;
        const auto key = cache_key("distinguish", spec, {canonical_form(g), canonical_form(h)});
        out.payload = cached(key, true, out, err, [&](Outcome&) {
            const auto r = refine_jointly(spec, g, h);
            return Json{{"command", "distinguish"}, {"distinguished", r.distinguished}, {"iterations", r.g.iterations}};
        });
        return out;
    }

    Outcome game_cmd(std::ostream& err, bool ef) {
        const auto spec = load_spec(c_.spec_path);
        std::vector<Graph> inputs;
        for (const auto& s : c_.graphs) inputs.push_back(load_graph(s));
        std::vector<CanonicalForm> forms;
        for (const auto& g : inputs) forms.push_back(canonical_form(g));
        Outcome out;
        const char* name = ef ? "ef" : "cops";
        // certificates name concrete nodes, so they are never served from the cache
        out.payload = cached(cache_key(name, spec, forms), !c_.certificate, out, err, [&](Outcome&) {
            const auto v = ef ? spoiler_wins(spec, inputs[0], inputs[1], limits_) : cops_robber_wins(spec, inputs[0], limits_);
            Json j{{"command", name}};
            j.update(to_json(v, c_.certificate));
            return j;
        });
        return out;
    }

    Outcome hom_cmd() {
        const Graph pattern = load_graph(c_.graphs[0]);
        const Graph target = load_graph(c_.graphs[1]);
        std::map<Node, Node> pins;
        for (const auto& [p, t] : c_.pins) {
            pattern.check_node(p);
            target.check_node(t);
            if (!pins.emplace(p, t).second) throw ConfigError("pattern node " + std::to_string(p) + " pinned twice");
        }
        Outcome out;
        Json pin_list = Json::array();
        for (const auto& [p, t] : pins) pin_list.push_back({p, t});
        out.payload = Json{{"command", "hom"},
                           {"pattern", to_graph6(pattern)},
                           {"target", to_graph6(target)},
                           {"pins", std::move(pin_list)},
                           {"hom_count", pins.empty() ? hom_count(pattern, target)
                                                      : rooted_hom_count(pattern, pins, target)}};
        return out;
    }

    Outcome power_cmd(std::ostream& err) {
        const auto spec = load_spec(c_.spec_path);
        Outcome out;
        const auto key = cache_key("power", spec, {}, "n_max=" + std::to_string(c_.budgets.max_nodes));
        std::optional<PowerReport> report;
        out.payload = cached(key, true, out, err, [&](Outcome& o) {
            report = enumerate_power(spec, c_.budgets.max_nodes, limits_, c_.threads);
            if (!report->complete()) o.exit_code = kResourceExhausted;
            Json j{{"command", "power"}};
            j.update(power_payload(*report));
            return j;
        });
        if (report) {
            out.telemetry.update(power_telemetry(*report));
            out.csv = power_csv(*report);
        } else {
            out.csv = csv_from_payload(out.payload);
        }
        return out;
    }

    // CSV rebuilt from a cached payload; timings are unknown there
    static std::string csv_from_payload(const Json& payload) {
        std::string csv = "graph6,n,verdict,states,millis\n";
        for (const auto& g : payload.at("graphs"))
            csv += g.at("graph6").get<std::string>() + ',' + std::to_string(g.at("n").get<int>()) + ',' +
                   g.at("verdict").get<std::string>() + ',' + std::to_string(g.at("states").get<std::size_t>()) +
                   ",\n";
        return csv;
    }

    Outcome validate_cmd() {
        const Suite suite = *parse_suite(c_.suite);
        const int n = c_.budgets.max_nodes;
        ValidationReport r;
        switch (suite) {
            case Suite::Treewidth: r = compare_to_treewidth(c_.k, n, limits_, c_.threads); break;
            case Suite::Theorem2:
                r = validate_theorem2(load_spec(c_.spec_path), n, limits_, c_.threads, c_.seed);
                break;
            case Suite::Soundness:
                r = validate_soundness(load_spec(c_.spec_path), n, c_.max_pattern_nodes, limits_, c_.threads, c_.seed);
                break;
            case Suite::Monotonicity:
                r = check_monotonicity(load_spec(c_.spec_path), load_spec(c_.spec2_path), n, limits_, c_.threads);
                break;
            case Suite::HomClosed: r = validate_hom_closed(load_spec(c_.spec_path), n); break;
        }
        Outcome out;
        out.payload = Json{{"command", "validate"}};
        out.payload.update(to_json(r));
        out.exit_code = r.passed() ? kOk : kMismatch;
        return out;
    }

    const RunConfig& c_;
    std::optional<ResultCache> cache_;
    SolveLimits limits_;
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

}  // namespace detail

/// Executes one command. The JSON report (payload fields plus a "telemetry"
/// object) goes to `config.output` or `out`; diagnostics go to `err`.
inline int run(const RunConfig& config, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    const auto start = std::chrono::steady_clock::now();
    try {
        check_config(config);
        auto outcome = detail::Runner(config).run(err);
        Json report = outcome.payload;
        outcome.telemetry["wall_millis"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report["telemetry"] = outcome.telemetry;
        const std::string text = report.dump(2) + "\n";
        if (config.output.empty())
            out << text;
        else
            detail::write_text(config.output, text);
        if (!outcome.csv.empty()) {
            std::string csv_path = config.csv_output;
            if (csv_path.empty() && !config.output.empty())
                csv_path = std::filesystem::path(config.output).replace_extension(".csv").string();
            if (!csv_path.empty()) detail::write_text(csv_path, outcome.csv);
        }
        if (outcome.exit_code == kResourceExhausted) err << "error: some graphs are undecided within the budget\n";
        return outcome.exit_code;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << " (work done: " << e.work_done() << ")\n";
        return kResourceExhausted;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {  // ConfigError, DomainError
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

/// Parses argv into `config`. Returns an exit code when the process should
/// stop right away (help output or a usage error).
inline std::optional<int> parse_command_line(int argc, const char* const* argv, RunConfig& config,
                                             std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Homomorphism counting power of generalized folklore Weisfeiler-Leman algorithms", "wlpower"};
    app.require_subcommand(1);
    // subcommands inherit this; "-h" would clash with the --h graph option
    app.set_help_flag("--help", "Print this help message and exit");
    std::vector<std::string> pin_text;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--max-states", config.budgets.max_states, "Game state budget");
        sub->add_option("--time-limit-ms", config.budgets.time_limit_ms, "Wall-clock budget in milliseconds");
        sub->add_option("-o,--output", config.output, "Report file (default: standard output)");
        sub->add_option("--cache-dir", config.cache_dir, "Result cache directory (WLPOWER_CACHE overrides)");
        sub->add_option("--threads", config.threads, "Worker threads");
    };
    auto with_spec = [&](CLI::App* sub) { sub->add_option("--spec", config.spec_path, "GFWL spec file"); };
    std::string g, h;

    auto* dist = app.add_subcommand("distinguish", "Run the refinement on a graph pair");
    with_spec(dist);
    dist->add_option("--g", g, "First graph (file or inline graph6)")->required();
    dist->add_option("--h", h, "Second graph (file or inline graph6)")->required();
    common(dist);

    auto* cops = app.add_subcommand("cops", "Solve the Cops-Robber game on a query graph");
    with_spec(cops);
    cops->add_option("--graph,--f", g, "Query graph (file or inline graph6)")->required();
    cops->add_flag("--certificate", config.certificate, "Include the winning strategy");
    common(cops);

    auto* ef = app.add_subcommand("ef", "Solve the bijective pebble game on a graph pair");
    with_spec(ef);
    ef->add_option("--g", g, "First graph (file or inline graph6)")->required();
    ef->add_option("--h", h, "Second graph (file or inline graph6)")->required();
    ef->add_flag("--certificate", config.certificate, "Include Spoiler's winning strategy");
    common(ef);

    auto* hom = app.add_subcommand("hom", "Count homomorphisms");
    hom->add_option("--pattern", g, "Pattern graph (file or inline graph6)")->required();
    hom->add_option("--target", h, "Target graph (file or inline graph6)")->required();
    hom->add_option("--pin", pin_text, "Pin pattern node P to target node T, written P:T");
    common(hom);

    auto* power = app.add_subcommand("power", "Decide the Cops-Robber game on all small connected graphs");
    with_spec(power);
    power->add_option("--max-nodes", config.budgets.max_nodes, "Largest node count enumerated");
    power->add_option("--csv", config.csv_output, "CSV summary path");
    common(power);

    auto* validate = app.add_subcommand("validate", "Run a validation suite");
    with_spec(validate);
    validate->add_option("--suite", config.suite, "theorem2 | treewidth | soundness | monotonicity | hom_closed")
        ->required();
    validate->add_option("--spec2", config.spec2_path, "Larger spec for the monotonicity suite");
    validate->add_option("--k", config.k, "Pebble count for the treewidth suite");
    validate->add_option("--max-nodes", config.budgets.max_nodes, "Largest node count enumerated");
    validate->add_option("--max-pattern-nodes", config.max_pattern_nodes, "Largest pattern in the soundness suite");
    validate->add_option("--seed", config.seed, "Seed for relabeled copies");
    common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    const std::pair<CLI::App*, Command> table[] = {{dist, Command::Distinguish}, {cops, Command::Cops},
                                                   {ef, Command::Ef},            {hom, Command::Hom},
                                                   {power, Command::Power},      {validate, Command::Validate}};
    for (const auto& [sub, cmd] : table)
        if (sub->parsed()) config.command = cmd;
    if (!g.empty()) config.graphs.push_back(g);
    if (!h.empty()) config.graphs.push_back(h);
    for (const auto& p : pin_text) {
        const auto colon = p.find(':');
        try {
            if (colon == std::string::npos) throw std::invalid_argument(p);
            config.pins.emplace_back(std::stoi(p.substr(0, colon)), std::stoi(p.substr(colon + 1)));
        } catch (const std::exception&) {
            err << "error: --pin expects P:T, got \"" << p << "\"\n";
            return kInputError;
        }
    }
    return std::nullopt;
}

}  // namespace wlpower::cli
