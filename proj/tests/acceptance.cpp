// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "oracles.hpp"

using namespace parity;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
    std::vector<std::string> failures;

    void fail(std::string why)
    {
        pass = false;
        if (failures.size() < 5) failures.push_back(std::move(why));
    }
};

std::uint64_t direction_mask(const Multigraph& g, const Orientation& o)
{
    std::uint64_t dir = 0;
    for (std::size_t i = 0; i < g.num_edges(); ++i)
        if (o.at(g.edges()[i].id).tail != g.edges()[i].u) dir |= std::uint64_t{1} << i;
    return dir;
}

std::string one_line(const Multigraph& g)
{
    std::string s;
    for (const auto& e : g.edges()) s += " " + std::to_string(e.u) + "-" + std::to_string(e.v);
    return "[" + s + " ]";
}

/// Certificates gathered by criteria 1 and 3, rechecked by criterion 7.
struct CertificateCase {
    Multigraph g;
    IntractableCertificate cert;
};
std::vector<CertificateCase> g_certificates;

const std::vector<Multigraph>& small_graphs()
{
    static const auto graphs = small_corpus({5, 8, true});
    return graphs;
}

const std::vector<Multigraph>& random_graphs()
{
    static const auto graphs = random_corpus(kDefaultSeed, 200);
    return graphs;
}

std::vector<const Multigraph*> full_corpus()
{
    std::vector<const Multigraph*> out;
    for (const auto& g : small_graphs()) out.push_back(&g);
    for (const auto& g : random_graphs()) out.push_back(&g);
    return out;
}

ParityAssignment coin_assignment(const std::vector<EdgeSet>& evens, std::mt19937& rng)
{
    auto j = ParityAssignment::explicit_map();
    for (const auto& c : evens) j.set(c, (rng() & 1U) ? Parity::odd : Parity::even);
    return j;
}

Outcome criterion_oracle_equivalence()
{
    Outcome r;
    std::mt19937 rng(101);
    std::size_t instances = 0, incompatible = 0;
    for (const auto& g : small_graphs()) {
        auto evens = oracle::even_circuits(g);
        std::set<EdgeSet> lib;
        for (const auto& c : even_circuits(g)) lib.insert(c.edges);
        if (lib != std::set<EdgeSet>(evens.begin(), evens.end())) r.fail("even circuits differ on " + one_line(g));
        std::vector<ParityAssignment> js{ParityAssignment::all_odd(), ParityAssignment::all_even()};
        for (int k = 0; k < 5; ++k) js.push_back(coin_assignment(evens, rng));
        for (const auto& j : js) {
            ++instances;
            bool brute = oracle::compatible(g, evens, [&](const EdgeSet& c) { return j.at(c) == Parity::odd; });
            auto v = decide(g, j);
            if (const auto* ok = std::get_if<Compatible>(&v)) {
                if (!brute) r.fail("solver compatible, brute force not, on " + one_line(g));
                auto dir = direction_mask(g, ok->orientation);
                for (const auto& c : evens)
                    if (oracle::clockwise_odd(g, c, dir) != (j.at(c) == Parity::odd))
                        r.fail("returned orientation misses circuit " + describe_edges(c) + " on " + one_line(g));
            } else {
                ++incompatible;
                if (brute) r.fail("solver incompatible, brute force compatible, on " + one_line(g));
                g_certificates.push_back({g, std::get<Incompatible>(v).certificate});
            }
        }
    }
    r.summary = std::to_string(small_graphs().size()) + " graphs, " + std::to_string(instances) + " instances (" +
                std::to_string(incompatible) + " incompatible), all equal to brute force";
    return r;
}

Outcome criterion_catalog()
{
    Outcome r;
    std::size_t patterns = 0;
    for (const auto& e : catalog()) {
        if (!e.theorem_base) continue;
        auto evens = even_circuits(e.graph);
        if (evens.size() != e.even_circuit_count) r.fail(e.name + ": wrong even circuit count");
        std::vector<EdgeSet> oracle_evens;
        for (const auto& c : evens) oracle_evens.push_back(c.edges);
        for (std::uint32_t bits = 0; bits < (1U << evens.size()); ++bits) {
            ++patterns;
            auto j = ParityAssignment::explicit_map();
            std::size_t prescribed_even = 0;
            for (std::size_t i = 0; i < evens.size(); ++i) {
                bool even = bits >> i & 1U;
                prescribed_even += even ? 1 : 0;
                j.set(evens[i].edges, even ? Parity::even : Parity::odd);
            }
            bool predicted = rule_predicts_incompatible(e.rule, prescribed_even);
            bool solver = std::holds_alternative<Incompatible>(decide(e.graph, j));
            bool brute = !oracle::compatible(e.graph, oracle_evens,
                                             [&](const EdgeSet& c) { return j.at(c) == Parity::odd; });
            if (solver != predicted || brute != predicted)
                r.fail(e.name + " pattern " + std::to_string(bits) + ": rule " + (predicted ? "I" : "C") +
                       ", solver " + (solver ? "I" : "C") + ", brute " + (brute ? "I" : "C"));
        }
    }
    r.summary = std::to_string(patterns) + " parity patterns over the nine base graphs match their rules";
    return r;
}

Outcome criterion_theorem()
{
    Outcome r;
    std::mt19937 rng(303);
    std::size_t instances = 0, witnesses = 0, contracted = 0;
    for (const auto* gp : full_corpus()) {
        const auto& g = *gp;
        bool is_random = g.num_vertices() >= 7;
        ForbiddenScanner scanner(g);
        std::vector<ParityAssignment> js{ParityAssignment::all_odd(), ParityAssignment::all_even()};
        for (int k = 0; k < 5; ++k) js.push_back(random_assignment(g, rng));
        for (const auto& j : js) {
            ++instances;
            auto v = decide(g, j);
            bool incompatible = std::holds_alternative<Incompatible>(v);
            if (incompatible && is_random) g_certificates.push_back({g, std::get<Incompatible>(v).certificate});
            auto w = scanner.scan(j);
            if (incompatible != w.has_value()) {
                r.fail(std::string("solver ") + (incompatible ? "I" : "C") + ", scanner " + (w ? "witness" : "none") +
                       " on " + one_line(g));
                continue;
            }
            if (!w) continue;
            ++witnesses;
            if (w->odd_circuit_contracted) ++contracted;
            if (auto err = verify_witness(g, j, *w)) r.fail("witness fails verification (" + *err + ") on " + one_line(g));
        }
    }
    r.summary = std::to_string(instances) + " instances, " + std::to_string(witnesses) +
                " witnesses (all verified, " + std::to_string(contracted) + " via odd contraction), no disagreement";
    return r;
}

Outcome criterion_constant(bool all_odd)
{
    Outcome r;
    auto j = all_odd ? ParityAssignment::all_odd() : ParityAssignment::all_even();
    std::size_t witnesses = 0;
    for (const auto* gp : full_corpus()) {
        const auto& g = *gp;
        bool incompatible = std::holds_alternative<Incompatible>(decide(g, j));
        auto w = all_odd ? scan_all_odd(g) : scan_all_even(g);
        if (incompatible != w.has_value()) {
            r.fail(std::string("solver ") + (incompatible ? "I" : "C") + ", scanner " + (w ? "witness" : "none") +
                   " on " + one_line(g));
            continue;
        }
        if (!w) continue;
        ++witnesses;
        if (auto err = verify_witness(g, j, *w)) r.fail("witness fails verification (" + *err + ") on " + one_line(g));
    }
    auto named = [&](const Multigraph& g, const char* label, bool want_contraction) {
        auto w = all_odd ? scan_all_odd(g) : scan_all_even(g);
        if (!w) {
            r.fail(std::string(label) + " has no witness");
        } else if (want_contraction && !w->odd_circuit_contracted) {
            r.fail(std::string(label) + " witness does not contract an odd circuit");
        }
    };
    if (all_odd) {
        named(parse_graph("p parity-graph 5 6\ne 1 1 3\ne 2 1 4\ne 3 1 5\ne 4 2 3\ne 5 2 4\ne 6 2 5\n"), "K_{2,3}",
              false);
        named(catalog_entry("O2").graph, "O2", true);
    } else {
        named(catalog_entry("E1").graph, "E1", false);
        named(catalog_entry("E2").graph, "K_4", false);
    }
    r.summary = std::to_string(full_corpus().size()) + " graphs, " + std::to_string(witnesses) +
                " witnesses, scanner agrees with solver; named examples found";
    return r;
}

Outcome criterion_arcs()
{
    Outcome r;
    std::vector<const CatalogEntry*> figure;
    for (const char* n : {"O1", "O2", "E1", "E2", "E3", "A1", "A2", "A3", "A4", "A5"})
        figure.push_back(&catalog_entry(n));
    std::size_t ecc = 0, bip = 0, nonbip = 0;
    std::map<std::string, std::size_t> g1_kinds;
    // The corpus has few even-circuit-connected graphs, so the catalog graphs
    // and a seeded denser random family are checked as well.
    auto graphs = full_corpus();
    std::vector<Multigraph> extra;
    for (const auto& e : catalog()) extra.push_back(e.graph);
    std::mt19937 rng(606);
    for (int t = 0; t < 3000; ++t) {
        int n = 4 + static_cast<int>(rng() % 6);
        int m = n + 2 + static_cast<int>(rng() % 6);
        extra.push_back(random_connected_graph(rng, n, m));
    }
    for (const auto& g : extra) graphs.push_back(&g);
    for (const auto* gp : graphs) {
        const auto& g = *gp;
        if (g.num_edges() == 0) continue;
        bool lib = is_even_circuit_connected(g);
        if (lib != oracle::even_circuit_connected(g)) r.fail("even-circuit-connectivity differs on " + one_line(g));
        if (!lib) {
            try {
                decompose(g);
                r.fail("decompose accepted a graph that is not even-circuit-connected: " + one_line(g));
            } catch (const InputError&) {
            }
            continue;
        }
        ++ecc;
        if (!oracle::two_connected(g)) r.fail("even-circuit-connected but not 2-connected: " + one_line(g));
        auto d = decompose(g);
        if (auto err = validate(g, d)) r.fail("validate: " + *err + " on " + one_line(g));
        auto counts = arc_counts(d);
        bool bipartite = is_bipartite(g).bipartite;
        if (bipartite) {
            ++bip;
            for (auto c : counts)
                if (c != 1) r.fail("bipartite graph with a 2-arc adjunction: " + one_line(g));
            continue;
        }
        ++nonbip;
        std::size_t twos = 0;
        for (auto c : counts) twos += c == 2 ? 1 : 0;
        if (counts.empty() || counts.front() != 2 || twos != 1)
            r.fail("non-bipartite graph without exactly one 2-arc adjunction at stage 1: " + one_line(g));
        if (d.stages.size() < 2) continue;
        auto g1 = subgraph(g, d.stages[1]);
        std::string kind;
        for (const auto* e : figure)
            if (is_even_subdivision_of(g1, e->graph)) {
                kind = e->name;
                break;
            }
        if (kind.empty()) r.fail("G1 is not an even subdivision of a catalog graph: " + one_line(g1));
        ++g1_kinds[kind];
    }
    std::string kinds;
    for (const auto& [k, n] : g1_kinds) kinds += " " + k + ":" + std::to_string(n);
    r.summary = std::to_string(graphs.size()) + " graphs (corpus plus catalog and 3000 denser), " +
                std::to_string(ecc) + " even-circuit-connected (" + std::to_string(bip) + " bipartite, " +
                std::to_string(nonbip) + " not); G1 types" + kinds;
    return r;
}

Outcome criterion_certificates()
{
    Outcome r;
    std::mt19937 rng(707);
    for (const auto& [g, cert] : g_certificates) {
        EdgeSet x;
        for (const auto& c : cert.circuits) {
            x ^= c.edges;
            auto again = try_make_circuit(g, c.edges);
            if (!again || !again->is_even()) r.fail("certificate member is not an even circuit on " + one_line(g));
        }
        if (!x.empty()) r.fail("certificate symmetric difference is " + describe_edges(x) + " on " + one_line(g));
        std::size_t prescribed_even = 0;
        for (auto p : cert.prescribed) prescribed_even += p == Parity::even ? 1 : 0;
        if (parity_of(prescribed_even) != cert.prescribed_even_count_parity)
            r.fail("prescribed count parity misreported on " + one_line(g));
        const auto m = g.num_edges();
        for (int k = 0; k < 10; ++k) {
            std::uint64_t dir = m == 0 ? 0 : rng() & ((std::uint64_t{1} << m) - 1);
            std::size_t even = 0;
            for (const auto& c : cert.circuits) even += oracle::clockwise_odd(g, c.edges, dir) ? 0 : 1;
            if (parity_of(even) != cert.observed_even_count_parity || parity_of(even) == parity_of(prescribed_even))
                r.fail("certificate does not hold under a random orientation on " + one_line(g));
        }
    }
    r.summary = std::to_string(g_certificates.size()) +
                " certificates: empty symmetric difference, invariant under 10 random orientations each";
    return r;
}

Multigraph grid(int rows, int cols)
{
    std::vector<std::pair<int, int>> p;
    auto id = [&](int i, int j) { return i * cols + j + 1; };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (j + 1 < cols) p.push_back({id(i, j), id(i, j + 1)});
            if (i + 1 < rows) p.push_back({id(i, j), id(i + 1, j)});
        }
    return Multigraph::from_pairs(p);
}

/// Even circuits whose vertex-deleted complement has a perfect matching.
std::vector<EdgeSet> oracle_alternating(const Multigraph& g)
{
    std::vector<EdgeSet> out;
    for (const auto& c : oracle::even_circuits(g)) {
        auto vs = vertices_of(g, c);
        std::vector<int> rest_v;
        std::vector<Edge> rest_e;
        for (int v : g.vertices())
            if (!vs.count(v)) rest_v.push_back(v);
        for (const auto& e : g.edges())
            if (!vs.count(e.u) && !vs.count(e.v)) rest_e.push_back(e);
        Multigraph rest(rest_v, rest_e);
        if (rest_v.empty() || oracle::perfect_matching_count(rest) > 0) out.push_back(c);
    }
    return out;
}

Outcome criterion_pfaffian()
{
    Outcome r;
    struct Case {
        const char* name;
        Multigraph g;
        std::uint64_t expected;
    };
    std::vector<Case> cases{{"4-circuit", Multigraph::from_pairs({{1, 2}, {2, 3}, {3, 4}, {1, 4}}), 2},
                            {"2x3 grid", grid(2, 3), 3},
                            {"4x4 grid", grid(4, 4), 36}};
    std::string counts;
    for (const auto& c : cases) {
        auto brute = oracle::perfect_matching_count(c.g);
        if (brute != c.expected) r.fail(std::string(c.name) + ": enumeration oracle gives " + std::to_string(brute));
        auto v = find_pfaffian_orientation(c.g);
        const auto* ok = std::get_if<Compatible>(&v);
        if (!ok) {
            r.fail(std::string(c.name) + " reported not Pfaffian");
            continue;
        }
        for (const auto& a : alternating_circuits(c.g))
            if (!a.is_even() || clockwise_parity(ok->orientation, a) != Parity::odd)
                r.fail(std::string(c.name) + ": alternating circuit not clockwise odd");
        auto k = kasteleyn_count(c.g, ok->orientation);
        if (k != c.expected) r.fail(std::string(c.name) + ": determinant count " + std::to_string(k));
        counts += " " + std::to_string(k);
    }
    for (const auto& c : {cases[0].g, cases[1].g}) {
        auto lib = alternating_circuits(c);
        std::set<EdgeSet> a;
        for (const auto& x : lib) a.insert(x.edges);
        auto o = oracle_alternating(c);
        if (a != std::set<EdgeSet>(o.begin(), o.end())) r.fail("alternating circuits differ from the oracle");
    }
    std::vector<std::pair<int, int>> kp;
    for (int a = 1; a <= 3; ++a)
        for (int b = 4; b <= 6; ++b) kp.push_back({a, b});
    auto k33 = Multigraph::from_pairs(kp);
    auto alt = oracle_alternating(k33);
    bool brute_pfaffian = oracle::compatible(k33, alt, [](const EdgeSet&) { return true; });
    auto v = find_pfaffian_orientation(k33);
    if (brute_pfaffian) r.fail("oracle finds a Pfaffian orientation of K_{3,3}");
    if (!std::holds_alternative<Incompatible>(v)) r.fail("K_{3,3} reported Pfaffian");
    r.summary = "counts" + counts + " equal enumeration; K_{3,3} NOT-PFAFFIAN (all 512 orientations checked)";
    return r;
}

std::pair<int, std::string> run(const std::string& args)
{
    std::string cmd = std::string(PARITY_CLI) + " " + args + " 2>&1";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
    int status = pclose(pipe.release());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion_cli()
{
    Outcome r;
    const std::string f = FIXTURE_DIR;
    std::vector<std::string> graphs;
    for (const char* n : {"O1", "O2", "E1", "E2", "E3", "D1", "D2", "D3", "D4", "A1", "A2", "A3", "A4", "A5"})
        graphs.push_back(f + "/catalog/" + n + ".graph");
    for (const char* n : {"k23", "k4", "c4", "triangle", "tree", "k33", "grid2x3", "grid4x4", "digon_square"})
        graphs.push_back(f + "/graphs/" + n + ".graph");

    std::size_t runs = 0;
    for (const auto& path : graphs) {
        auto text = slurp(path);
        std::string canonical;
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);)
            if (line.rfind("c ", 0) != 0 && line != "c") canonical += line + "\n";
        if (emit_graph(parse_graph(text)) != canonical) r.fail("round trip is not canonical for " + path);
        std::vector<std::string> cmds{"check " + path + " " + f + "/assignments/all_odd.j",
                                      "check " + path + " " + f + "/assignments/all_even.j",
                                      "scan " + path + " --all-odd", "scan " + path + " --all-even",
                                      "decompose " + path + " --validate", "pfaffian " + path + " --brute-check"};
        for (const auto& c : cmds) {
            auto a = run(c);
            auto b = run(c);
            runs += 2;
            if (a != b) r.fail("output differs between runs: " + c);
            if (a.first < 0 || a.first > 2) r.fail("exit status " + std::to_string(a.first) + " from " + c);
        }
    }
    for (const char* n : {"O1", "O2", "E1", "E2", "E3", "D1", "D2", "D3", "D4", "A1", "A2", "A3", "A4", "A5"}) {
        auto out = run(std::string("catalog emit ") + n);
        if (out.first != 0 || out.second != slurp(f + "/catalog/" + n + ".graph"))
            r.fail(std::string("catalog emit ") + n + " differs from the fixture file");
    }
    auto corpus_a = run("corpus --count 20 --jobs 1");
    auto corpus_b = run("corpus --count 20 --jobs 3");
    if (corpus_a != corpus_b) r.fail("corpus output depends on --jobs");
    r.summary = std::to_string(graphs.size()) + " fixture files round-trip canonically; " + std::to_string(runs + 4) +
                " CLI runs byte-identical in pairs";
    return r;
}

} // namespace

int main()
{
    struct Criterion {
        const char* label;
        std::function<Outcome()> fn;
    };
    std::vector<Criterion> all{
        {"oracle equivalence", criterion_oracle_equivalence},
        {"catalog fixtures", criterion_catalog},
        {"forbidden-subgraph equivalence", criterion_theorem},
        {"all-odd obstruction", [] { return criterion_constant(true); }},
        {"all-even obstruction", [] { return criterion_constant(false); }},
        {"arc decomposition", criterion_arcs},
        {"certificates", criterion_certificates},
        {"pfaffian counting", criterion_pfaffian},
        {"cli determinism", criterion_cli},
    };
    bool all_pass = true;
    for (std::size_t i = 0; i < all.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[i].fn();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(1);
        line << "criterion " << i + 1 << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << all[i].label << ": "
             << o.summary << " (" << secs << " s)";
        std::cout << line.str() << std::endl;
        for (const auto& f : o.failures) std::cout << "    " << f << std::endl;
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
