#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wlpower/ef_game.hpp"
#include "wlpower/power.hpp"

namespace wlpower {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Specs
// ---------------------------------------------------------------------------

inline Json to_json(const RSelector& s) {
    Json j{{"kind", kind_name(s.kind)}};
    if (s.kind == RKind::DistanceRestricted) j["delta"] = s.delta;
    return j;
}

inline Json to_json(const FSelector& s) {
    Json j{{"kind", kind_name(s.kind)}};
    if (s.kind == FKind::DeltaBallIntersection) j["delta"] = s.delta;
    return j;
}

inline Json to_json(const GfwlSpec& spec) {
    return Json{{"k", spec.k}, {"t", spec.t}, {"i_seq", spec.i_seq}, {"j_seq", spec.j_seq},
                {"r", to_json(spec.r)}, {"f", to_json(spec.f)}};
}

/// Canonical text of a spec, used in cache keys.
inline std::string canonical_spec_string(const GfwlSpec& spec) { return to_json(spec).dump(); }

namespace detail {

inline Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
}

template <class T>
T field(const Json& obj, const char* name) {
    if (!obj.is_object() || !obj.contains(name)) throw ConfigError(std::string("missing field \"") + name + "\"");
    try {
        return obj.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("field \"") + name + "\" has the wrong type");
    }
}

inline int optional_delta(const Json& obj) {
    return obj.contains("delta") ? field<int>(obj, "delta") : 0;
}

}  // namespace detail

inline GfwlSpec spec_from_json(const Json& j) {
    GfwlSpec spec;
    spec.k = detail::field<int>(j, "k");
    spec.t = detail::field<int>(j, "t");
    spec.i_seq = detail::field<std::vector<int>>(j, "i_seq");
    spec.j_seq = detail::field<std::vector<int>>(j, "j_seq");
    const Json r = detail::field<Json>(j, "r");
    const Json f = detail::field<Json>(j, "f");
    const auto rk = detail::field<std::string>(r, "kind");
    const auto fk = detail::field<std::string>(f, "kind");
    const auto r_kind = parse_r_kind(rk);
    const auto f_kind = parse_f_kind(fk);
    if (!r_kind) throw ConfigError("unknown R selector kind \"" + rk + "\"");
    if (!f_kind) throw ConfigError("unknown F selector kind \"" + fk + "\"");
    spec.r = {*r_kind, detail::optional_delta(r)};
    spec.f = {*f_kind, detail::optional_delta(f)};
    check_structure(spec);
    return spec;
}

inline GfwlSpec parse_spec(std::string_view text) { return spec_from_json(detail::parse_json_text(text)); }

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

inline Json to_json(const Graph& g) {
    Json edges = Json::array();
    for (const auto& e : g.edges()) edges.push_back({e.first, e.second});
    return Json{{"n", g.node_count()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const Json& j) {
    const int n = detail::field<int>(j, "n");
    if (n < 0 || n > kMaxNodes) throw DomainError("node count out of range: " + std::to_string(n));
    Graph g(n);
    for (const auto& e : detail::field<Json>(j, "edges")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ConfigError("edges must be pairs of integers");
        g.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    return g;
}

/// Graphs from text: a JSON edge list (or an array of them), or graph6
/// lines. Blank lines and a ">>graph6<<" header are skipped. Parse error
/// offsets are relative to the whole text.
inline std::vector<Graph> parse_graphs(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    if (text[first] == '{' || text[first] == '[') {
        const Json j = detail::parse_json_text(text);
        std::vector<Graph> out;
        if (j.is_array())
            for (const auto& item : j) out.push_back(graph_from_json(item));
        else
            out.push_back(graph_from_json(j));
        return out;
    }
    std::vector<Graph> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        if (line.starts_with(">>graph6<<")) {
            line.remove_prefix(10);
            pos += 10;
        }
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        if (!line.empty()) {
            try {
                out.push_back(parse_graph6(line));
            } catch (const ParseError& e) {
                throw ParseError(e.message(), pos + e.offset());
            }
        }
        pos = end + 1;
    }
    return out;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw InputError("cannot read " + path.string());
    return buf.str();
}

/// Reads a graph file; ParseError messages are prefixed with the path.
inline std::vector<Graph> read_graph_file(const std::filesystem::path& path) {
    const auto text = read_text_file(path);
    try {
        return parse_graphs(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.message(), e.offset());
    }
}

inline GfwlSpec read_spec_file(const std::filesystem::path& path) {
    const auto text = read_text_file(path);
    try {
        return parse_spec(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.message(), e.offset());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Verdicts and certificates
// ---------------------------------------------------------------------------

inline Json to_json(const CertificateEntry& e, GameKind game) {
    Json j{{"phase", to_string(e.phase)}, {"pebbles_g", e.pebbles_g}};
    if (game == GameKind::CopsRobber) {
        j["robber"] = mask_nodes(e.robber);
        j["choice"] = e.choice;
        return j;
    }
    j["pebbles_h"] = e.pebbles_h;
    if (e.phase.kind == Phase::Kind::Remove)
        j["choice"] = e.choice;
    else if (e.size_mismatch)
        j["size_mismatch"] = true;
    else
        j["spoiler_set"] = e.spoiler_set;
    return j;
}

inline Json to_json(const GameVerdict& v, bool with_certificate = true) {
    Json j{{"winner", winner_name(v)}, {"states_explored", v.states_explored}};
    if (with_certificate && v.first_player_wins()) {
        Json cert = Json::array();
        for (const auto& e : v.certificate) cert.push_back(to_json(e, v.game));
        j["certificate"] = std::move(cert);
    }
    return j;
}

/// Inverse of to_json(GameVerdict); DomainError on malformed content.
inline GameVerdict verdict_from_json(const Json& j) {
    GameVerdict v;
    try {
        const auto winner = j.at("winner").get<std::string>();
        if (winner == "cops" || winner == "robber") {
            v.game = GameKind::CopsRobber;
            v.winner = winner == "cops" ? Winner::FirstPlayer : Winner::SecondPlayer;
        } else if (winner == "spoiler" || winner == "duplicator") {
            v.game = GameKind::EhrenfeuchtFraisse;
            v.winner = winner == "spoiler" ? Winner::FirstPlayer : Winner::SecondPlayer;
        } else {
            throw DomainError("unknown winner \"" + winner + "\"");
        }
        v.states_explored = j.value("states_explored", std::size_t{0});
        if (!j.contains("certificate")) return v;
        for (const auto& item : j.at("certificate")) {
            CertificateEntry e;
            const auto phase = parse_phase(item.at("phase").get<std::string>());
            if (!phase) throw DomainError("malformed certificate phase");
            e.phase = *phase;
            e.pebbles_g = item.at("pebbles_g").get<NodeTuple>();
            if (item.contains("pebbles_h")) e.pebbles_h = item.at("pebbles_h").get<NodeTuple>();
            if (item.contains("choice")) e.choice = item.at("choice").get<NodeTuple>();
            if (item.contains("spoiler_set")) e.spoiler_set = item.at("spoiler_set").get<std::vector<NodeTuple>>();
            e.size_mismatch = item.value("size_mismatch", false);
            if (item.contains("robber"))
                for (Node x : item.at("robber").get<NodeTuple>()) {
                    if (x < 0 || x >= kMaxNodes) throw DomainError("robber node out of range");
                    e.robber |= bit(x);
                }
            v.certificate.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed verdict: ") + e.what());
    }
    return v;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Deterministic part of a power report; timing lives in power_telemetry().
inline Json power_payload(const PowerReport& r) {
    auto names = [](const std::vector<const GraphOutcome*>& list) {
        Json out = Json::array();
        for (const auto* g : list) out.push_back(g->graph6);
        return out;
    };
    Json graphs = Json::array();
    for (const auto& g : r.graphs) {
        Json row{{"graph6", g.graph6}, {"form", g.form.hex()}, {"n", g.nodes},
                 {"verdict", verdict_name(g.verdict)}, {"states", g.states}};
        if (g.verdict == PowerVerdict::Undecided) row["reason"] = g.reason;
        graphs.push_back(std::move(row));
    }
    return Json{{"spec", to_json(r.spec)},
                {"n_max", r.n_max},
                {"complete", r.complete()},
                {"cops_win", names(r.cops_win())},
                {"robber_win", names(r.robber_win())},
                {"undecided", names(r.undecided())},
                {"graphs", std::move(graphs)}};
}

inline Json power_telemetry(const PowerReport& r) {
    Json millis = Json::array();
    double total = 0;
    for (const auto& g : r.graphs) {
        millis.push_back(g.millis);
        total += g.millis;
    }
    return Json{{"solve_millis_total", total}, {"solve_millis", std::move(millis)}};
}

/// One row per graph: graph6, n, verdict, states, millis.
inline std::string power_csv(const PowerReport& r) {
    std::ostringstream out;
    out << "graph6,n,verdict,states,millis\n";
    for (const auto& g : r.graphs)
        out << g.graph6 << ',' << g.nodes << ',' << verdict_name(g.verdict) << ',' << g.states << ','
            << g.millis << '\n';
    return out.str();
}

inline Json to_json(const ValidationReport& r) {
    Json coverage = Json::object();
    for (const auto& [k, v] : r.coverage) coverage[k] = v;
    return Json{{"suite", suite_name(r.suite)},
                {"passed", r.passed()},
                {"cases_run", r.cases_run},
                {"mismatches", r.mismatches},
                {"coverage", std::move(coverage)}};
}

}  // namespace wlpower
