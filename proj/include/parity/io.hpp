#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "circuits.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "solver.hpp"

namespace parity {

namespace detail {

inline std::vector<std::string> split_words(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

[[noreturn]] inline void fail_at(std::size_t line, const std::string& what)
{
    throw InputError("line " + std::to_string(line) + ": " + what);
}

inline int parse_int(const std::string& w, std::size_t line, const char* what)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(w, &used);
    } catch (const std::exception&) {
        fail_at(line, std::string("bad ") + what + " '" + w + "'");
    }
    if (used != w.size() || v < 0 || v > 1'000'000'000) fail_at(line, std::string("bad ") + what + " '" + w + "'");
    return static_cast<int>(v);
}

inline Parity parse_parity(const std::string& w, std::size_t line)
{
    if (w == "odd") return Parity::odd;
    if (w == "even") return Parity::even;
    fail_at(line, "expected 'odd' or 'even', got '" + w + "'");
}

} // namespace detail

/// Parses the graph text format:
///   c <comment>
///   p parity-graph <n> <m>
///   v <vertex>
///   e <edge> <u> <v>
inline Multigraph parse_graph(const std::string& text)
{
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    std::optional<std::pair<int, int>> header;
    std::vector<int> vertices;
    std::vector<Edge> edges;
    std::set<int> edge_ids;
    while (std::getline(in, raw)) {
        ++lineno;
        auto w = detail::split_words(raw);
        if (w.empty() || w[0] == "c") continue;
        if (w[0] == "p") {
            if (header) detail::fail_at(lineno, "duplicate header");
            if (w.size() != 4 || w[1] != "parity-graph") detail::fail_at(lineno, "expected 'p parity-graph <n> <m>'");
            header = std::pair{detail::parse_int(w[2], lineno, "vertex count"),
                               detail::parse_int(w[3], lineno, "edge count")};
            continue;
        }
        if (!header) detail::fail_at(lineno, "missing 'p parity-graph' header");
        if (w[0] == "v") {
            if (w.size() != 2) detail::fail_at(lineno, "expected 'v <id>'");
            vertices.push_back(detail::parse_int(w[1], lineno, "vertex id"));
        } else if (w[0] == "e") {
            if (w.size() != 4) detail::fail_at(lineno, "expected 'e <id> <u> <v>'");
            Edge e{detail::parse_int(w[1], lineno, "edge id"), detail::parse_int(w[2], lineno, "vertex id"),
                   detail::parse_int(w[3], lineno, "vertex id")};
            if (!edge_ids.insert(e.id).second) detail::fail_at(lineno, "duplicate edge id " + w[1]);
            edges.push_back(e);
        } else {
            detail::fail_at(lineno, "unknown line type '" + w[0] + "'");
        }
    }
    if (!header) throw InputError("missing 'p parity-graph' header");
    Multigraph g(std::move(vertices), std::move(edges));
    if (static_cast<int>(g.num_vertices()) != header->first)
        throw InputError("header declares " + std::to_string(header->first) + " vertices, found " +
                         std::to_string(g.num_vertices()));
    if (static_cast<int>(g.num_edges()) != header->second)
        throw InputError("header declares " + std::to_string(header->second) + " edges, found " +
                         std::to_string(g.num_edges()));
    return g;
}

/// Canonical text: header, isolated vertices, edges by ascending id.
inline std::string emit_graph(const Multigraph& g)
{
    std::ostringstream out;
    out << "p parity-graph " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (int v : g.vertices())
        if (g.incident(v).empty()) out << "v " << v << '\n';
    for (const auto& e : g.edges()) out << "e " << e.id << ' ' << e.u << ' ' << e.v << '\n';
    return out.str();
}

/// Parses an assignment:
///   j-all odd|even
///   j <odd|even> <k> <edge ids...>
/// Listed edge sets must be even circuits of `g`.
inline ParityAssignment parse_assignment(const std::string& text, const Multigraph& g,
                                         std::optional<Parity> fallback = std::nullopt)
{
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    std::optional<ParityAssignment> constant;
    auto j = ParityAssignment::explicit_map({}, fallback);
    bool any_explicit = false;
    while (std::getline(in, raw)) {
        ++lineno;
        auto w = detail::split_words(raw);
        if (w.empty() || w[0] == "c") continue;
        if (w[0] == "j-all") {
            if (w.size() != 2) detail::fail_at(lineno, "expected 'j-all odd|even'");
            if (constant || any_explicit) detail::fail_at(lineno, "'j-all' must be the only assignment line");
            constant = detail::parse_parity(w[1], lineno) == Parity::odd ? ParityAssignment::all_odd()
                                                                         : ParityAssignment::all_even();
        } else if (w[0] == "j") {
            if (constant) detail::fail_at(lineno, "'j-all' must be the only assignment line");
            if (w.size() < 3) detail::fail_at(lineno, "expected 'j <odd|even> <k> <ids...>'");
            auto p = detail::parse_parity(w[1], lineno);
            int k = detail::parse_int(w[2], lineno, "circuit length");
            if (static_cast<int>(w.size()) != 3 + k) detail::fail_at(lineno, "circuit length does not match id count");
            if (k % 2 != 0) detail::fail_at(lineno, "circuit length " + std::to_string(k) + " is odd");
            EdgeSet s;
            for (int i = 0; i < k; ++i) {
                int id = detail::parse_int(w[3 + static_cast<std::size_t>(i)], lineno, "edge id");
                if (s.test(id)) detail::fail_at(lineno, "repeated edge id " + std::to_string(id));
                s.set(id);
            }
            auto c = try_make_circuit(g, s);
            if (!c || !c->is_even()) detail::fail_at(lineno, describe_edges(s) + " is not an even circuit of the graph");
            if (j.entries().count(s)) detail::fail_at(lineno, "circuit " + describe_edges(s) + " listed twice");
            j.set(s, p);
            any_explicit = true;
        } else {
            detail::fail_at(lineno, "unknown line type '" + w[0] + "'");
        }
    }
    if (constant) return *constant;
    return j;
}

inline std::string emit_assignment(const ParityAssignment& j)
{
    switch (j.kind()) {
    case ParityAssignment::Kind::all_odd: return "j-all odd\n";
    case ParityAssignment::Kind::all_even: return "j-all even\n";
    case ParityAssignment::Kind::explicit_map: break;
    }
    std::vector<std::pair<EdgeSet, Parity>> rows(j.entries().begin(), j.entries().end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return circuit_order(a.first, b.first); });
    std::ostringstream out;
    for (const auto& [s, p] : rows) {
        out << "j " << to_string(p) << ' ' << s.count();
        s.for_each([&](int id) { out << ' ' << id; });
        out << '\n';
    }
    return out.str();
}

inline std::string join_ids(const EdgeSet& s)
{
    std::string out;
    s.for_each([&](int id) {
        out += ' ';
        out += std::to_string(id);
    });
    return out;
}

/// Graphviz rendering; highlighted edges are drawn bold, oriented edges as arcs.
inline std::string emit_dot(const Multigraph& g, const EdgeSet& highlight = {}, const Orientation* o = nullptr)
{
    std::ostringstream out;
    out << (o ? "digraph" : "graph") << " G {\n";
    for (int v : g.vertices()) out << "  " << v << ";\n";
    const char* link = o ? " -> " : " -- ";
    for (const auto& e : g.edges()) {
        int a = e.u, b = e.v;
        if (o) {
            auto arc = o->at(e.id);
            a = arc.tail;
            b = arc.head;
        }
        out << "  " << a << link << b << " [label=\"" << e.id << '"';
        if (highlight.test(e.id)) out << ", penwidth=3";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace parity
