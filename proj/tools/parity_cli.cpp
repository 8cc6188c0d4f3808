#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "parity/parity.hpp"

namespace {

using namespace parity;

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

std::string read_file(const std::string& path)
{
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

std::optional<Parity> parity_flag(const std::string& s)
{
    if (s.empty()) return std::nullopt;
    return s == "odd" ? Parity::odd : Parity::even;
}

void print_orientation(std::ostream& out, const Multigraph& g, const Orientation& o)
{
    for (const auto& e : g.edges()) {
        auto a = o.at(e.id);
        out << "a " << e.id << ' ' << a.tail << ' ' << a.head << '\n';
    }
}

void print_certificate(std::ostream& out, const IntractableCertificate& c)
{
    out << "s " << c.circuits.size() << '\n';
    for (std::size_t i = 0; i < c.circuits.size(); ++i)
        out << "x " << to_string(c.observed[i]) << ' ' << to_string(c.prescribed[i]) << ' '
            << c.circuits[i].edges.count() << join_ids(c.circuits[i].edges) << '\n';
    out << "t " << to_string(c.observed_even_count_parity) << ' ' << to_string(c.prescribed_even_count_parity) << '\n';
}

void print_witness(std::ostream& out, const ForbiddenWitness& w)
{
    out << "WITNESS " << w.base_name << '\n';
    out << "h " << w.subgraph_edges.count() << join_ids(w.subgraph_edges) << '\n';
    for (const auto& step : w.splitting_trace.steps) {
        if (const auto* o = std::get_if<OddCircuitContraction>(&step))
            out << "o " << o->circuit.count() << join_ids(o->circuit) << '\n';
        else if (const auto* d = std::get_if<Degree2Contraction>(&step))
            out << "d " << d->vertex << ' ' << d->edge_a << ' ' << d->edge_b << '\n';
    }
    for (std::size_t i = 0; i < w.circuits.size(); ++i)
        out << "x " << to_string(w.circuit_parities[i]) << ' ' << w.circuits[i].edges.count()
            << join_ids(w.circuits[i].edges) << '\n';
}

struct Common {
    std::size_t max_circuits = kDefaultCircuitCap;
    std::string dot;
};

int cmd_check(const std::string& graph_path, const std::string& assignment_path, const std::string& default_parity,
              const Common& c)
{
    auto g = parse_graph(read_file(graph_path));
    auto j = parse_assignment(read_file(assignment_path), g, parity_flag(default_parity));
    auto v = decide(g, j, c.max_circuits);
    if (const auto* ok = std::get_if<Compatible>(&v)) {
        std::cout << "COMPATIBLE\n";
        print_orientation(std::cout, g, ok->orientation);
        if (!c.dot.empty()) write_file(c.dot, emit_dot(g, {}, &ok->orientation));
        return kPositive;
    }
    const auto& cert = std::get<Incompatible>(v).certificate;
    std::cout << "INCOMPATIBLE\n";
    print_certificate(std::cout, cert);
    if (!c.dot.empty()) {
        EdgeSet lit;
        for (const auto& x : cert.circuits) lit |= x.edges;
        write_file(c.dot, emit_dot(g, lit));
    }
    return kNegative;
}

struct ScanArgs {
    std::string assignment;
    std::string default_parity;
    bool all_odd = false;
    bool all_even = false;
    bool cross_check = false;
    bool no_odd_contraction = false;
    std::size_t budget = ScanOptions{}.budget;
};

int cmd_scan(const std::string& graph_path, const ScanArgs& a, const Common& c)
{
    auto g = parse_graph(read_file(graph_path));
    ScanOptions opts;
    opts.circuit_cap = c.max_circuits;
    opts.budget = a.budget;
    opts.odd_contraction = !a.no_odd_contraction;
    int modes = (a.all_odd ? 1 : 0) + (a.all_even ? 1 : 0) + (a.assignment.empty() ? 0 : 1);
    if (modes != 1) throw InputError("give exactly one of an assignment file, --all-odd, --all-even");
    ScanMode mode = a.all_odd ? ScanMode::all_odd : a.all_even ? ScanMode::all_even : ScanMode::theorem;
    auto j = a.all_odd    ? ParityAssignment::all_odd()
             : a.all_even ? ParityAssignment::all_even()
                          : parse_assignment(read_file(a.assignment), g, parity_flag(a.default_parity));
    auto w = ForbiddenScanner(g, mode, opts).scan(j);
    if (a.cross_check) {
        bool incompatible = std::holds_alternative<Incompatible>(decide(g, j, c.max_circuits));
        if (incompatible != w.has_value())
            throw ContractError(std::string("cross-check failed: solver says ") +
                                (incompatible ? "incompatible" : "compatible") + ", scanner " +
                                (w ? "found a witness" : "found none"));
        if (w)
            if (auto err = verify_witness(g, j, *w, c.max_circuits))
                throw ContractError("cross-check failed: witness does not verify: " + *err);
    }
    if (!w) {
        std::cout << "NO-WITNESS\n";
        if (!c.dot.empty()) write_file(c.dot, emit_dot(g));
        return kPositive;
    }
    print_witness(std::cout, *w);
    if (!c.dot.empty()) write_file(c.dot, emit_dot(g, w->subgraph_edges));
    return kNegative;
}

int cmd_decompose(const std::string& graph_path, bool validate_flag, const Common& c)
{
    auto g = parse_graph(read_file(graph_path));
    auto ecc = even_circuit_connectivity(g, c.max_circuits);
    if (!ecc.connected) {
        std::cout << "NOT-EVEN-CIRCUIT-CONNECTED\n";
        auto side = ecc.separated ? *ecc.separated : g.edge_set();
        std::cout << "w " << side.count() << join_ids(side) << '\n';
        return kNegative;
    }
    auto d = decompose(g, c.max_circuits);
    if (validate_flag)
        if (auto err = validate(g, d, c.max_circuits)) throw ContractError("decomposition invalid: " + *err);
    std::cout << "DECOMPOSITION " << d.stages.size() << '\n';
    std::cout << "b " << d.stages.front().count() << join_ids(d.stages.front()) << '\n';
    for (std::size_t i = 0; i < d.adjunctions.size(); ++i) {
        const auto& adj = d.adjunctions[i];
        std::cout << "i " << i + 1 << ' ' << adj.arcs.size() << ' ' << adj.circuit.edges.count()
                  << join_ids(adj.circuit.edges) << '\n';
        for (const auto& p : adj.arcs) {
            std::cout << "p " << i + 1 << ' ' << p.edges.size();
            for (int v : p.vertices) std::cout << ' ' << v;
            std::cout << '\n';
        }
    }
    if (validate_flag) std::cout << "VALID\n";
    if (!c.dot.empty()) write_file(c.dot, emit_dot(g, d.stages.size() > 1 ? d.stages[1] : d.stages.front()));
    return kPositive;
}

int cmd_pfaffian(const std::string& graph_path, bool brute_check, std::size_t max_matchings, const Common& c)
{
    auto g = parse_graph(read_file(graph_path));
    auto v = find_pfaffian_orientation(g, max_matchings);
    if (const auto* inc = std::get_if<Incompatible>(&v)) {
        std::cout << "NOT-PFAFFIAN\n";
        print_certificate(std::cout, inc->certificate);
        return kNegative;
    }
    const auto& o = std::get<Compatible>(v).orientation;
    auto count = kasteleyn_count(g, o);
    if (brute_check) {
        auto brute = enumerate_perfect_matchings(g, max_matchings).size();
        if (brute != count)
            throw ContractError("brute-check failed: determinant gives " + std::to_string(count) + ", enumeration " +
                                std::to_string(brute));
    }
    std::cout << "PFAFFIAN\n";
    print_orientation(std::cout, g, o);
    std::cout << "n " << count << '\n';
    if (!c.dot.empty()) write_file(c.dot, emit_dot(g, {}, &o));
    return kPositive;
}

int cmd_catalog(const std::string& action, const std::string& name)
{
    if (action == "list") {
        for (const auto& e : catalog())
            std::cout << e.name << ' ' << e.graph.num_vertices() << ' ' << e.graph.num_edges() << ' '
                      << e.even_circuit_count << ' '
                      << (e.rule == ParityRule::even_count ? "even-count" : "odd-count") << ' '
                      << (e.theorem_base ? "base" : "auxiliary") << '\n';
        return kPositive;
    }
    if (action == "emit") {
        if (name.empty()) throw InputError("catalog emit needs a graph name");
        std::cout << catalog_entry(name).text;
        return kPositive;
    }
    if (action == "selfcheck") {
        for (const auto& line : catalog_selfcheck()) std::cout << line << '\n';
        std::cout << "OK\n";
        return kPositive;
    }
    throw InputError("unknown catalog action '" + action + "'");
}

struct CorpusArgs {
    bool small = false;
    std::size_t max_vertices = 5;
    std::size_t max_edges = 8;
    std::uint32_t seed = kDefaultSeed;
    std::size_t count = 200;
    unsigned jobs = 1;
    bool emit = false;
};

/// One report line per graph: verdicts under all-odd, all-even and one seeded
/// random assignment, each with whether the scanner agreed.
std::string corpus_line(std::size_t index, const Multigraph& g, std::uint32_t seed, std::size_t cap)
{
    std::mt19937 rng(seed + static_cast<std::uint32_t>(index));
    std::vector<ParityAssignment> js{ParityAssignment::all_odd(), ParityAssignment::all_even(),
                                     random_assignment(g, rng, cap)};
    ScanOptions opts;
    opts.circuit_cap = cap;
    ForbiddenScanner scanner(g, ScanMode::theorem, opts);
    std::ostringstream out;
    out << "g " << index << ' ' << g.num_vertices() << ' ' << g.num_edges();
    bool agree = true;
    for (const auto& j : js) {
        bool incompatible = std::holds_alternative<Incompatible>(decide(g, j, cap));
        auto w = scanner.scan(j);
        agree = agree && incompatible == w.has_value();
        out << ' ' << (incompatible ? 'I' : 'C');
    }
    out << (agree ? " agree" : " DISAGREE") << '\n';
    return out.str();
}

int cmd_corpus(const CorpusArgs& a, const Common& c)
{
    auto graphs = a.small ? small_corpus({a.max_vertices, a.max_edges, true}) : random_corpus(a.seed, a.count);
    if (a.emit) {
        for (std::size_t i = 0; i < graphs.size(); ++i) std::cout << "c graph " << i << '\n' << emit_graph(graphs[i]);
        return kPositive;
    }
    std::vector<std::string> lines(graphs.size());
    std::vector<std::string> errors(graphs.size());
    unsigned jobs = std::max(1U, a.jobs);
    auto worker = [&](unsigned w) {
        for (std::size_t i = w; i < graphs.size(); i += jobs) {
            try {
                lines[i] = corpus_line(i, graphs[i], a.seed, c.max_circuits);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(worker, w);
    worker(0);
    for (auto& t : pool) t.join();
    std::size_t disagree = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        if (!errors[i].empty()) throw ResourceError("graph " + std::to_string(i) + ": " + errors[i]);
        std::cout << lines[i];
        if (lines[i].find("DISAGREE") != std::string::npos) ++disagree;
    }
    std::cout << "graphs " << graphs.size() << " disagreements " << disagree << '\n';
    return disagree == 0 ? kPositive : kNegative;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Parity-constrained graph orientations"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--max-circuits", common.max_circuits, "Circuit enumeration cap")->capture_default_str();
        sub->add_option("--dot", common.dot, "Also write a Graphviz rendering to this file");
    };

    std::string graph_path, assignment_path, default_parity;
    auto* check = app.add_subcommand("check", "Decide whether an orientation meets a parity assignment");
    check->add_option("graph", graph_path, "Graph file ('-' for stdin)")->required();
    check->add_option("assignment", assignment_path, "Assignment file")->required();
    check->add_option("--default-parity", default_parity, "Parity for even circuits the file omits")
        ->check(CLI::IsMember({"odd", "even"}));
    add_common(check);

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "Search for a forbidden subgraph witness");
    scan->add_option("graph", graph_path, "Graph file")->required();
    scan->add_option("assignment", scan_args.assignment, "Assignment file");
    scan->add_option("--default-parity", scan_args.default_parity, "Parity for even circuits the file omits")
        ->check(CLI::IsMember({"odd", "even"}));
    scan->add_flag("--all-odd", scan_args.all_odd, "Scan for the all-odd obstruction");
    scan->add_flag("--all-even", scan_args.all_even, "Scan for the all-even obstruction");
    scan->add_flag("--cross-check", scan_args.cross_check, "Also run the solver and require agreement");
    scan->add_flag("--no-odd-contraction", scan_args.no_odd_contraction, "Skip the odd-circuit contraction pass");
    scan->add_option("--budget", scan_args.budget, "Candidate subgraphs examined before giving up")
        ->capture_default_str();
    add_common(scan);

    bool validate_flag = false;
    auto* dec = app.add_subcommand("decompose", "Print an arc decomposition");
    dec->add_option("graph", graph_path, "Graph file")->required();
    dec->add_flag("--validate", validate_flag, "Recheck every decomposition invariant");
    add_common(dec);

    bool brute_check = false;
    std::size_t max_matchings = kDefaultMatchingCap;
    auto* pf = app.add_subcommand("pfaffian", "Find a Pfaffian orientation and count perfect matchings");
    pf->add_option("graph", graph_path, "Graph file")->required();
    pf->add_flag("--brute-check", brute_check, "Compare the count with direct enumeration");
    pf->add_option("--max-matchings", max_matchings, "Perfect matching enumeration cap")->capture_default_str();
    add_common(pf);

    std::string cat_action, cat_name;
    auto* cat = app.add_subcommand("catalog", "Catalog graphs: list, emit NAME, selfcheck");
    cat->add_option("action", cat_action, "list | emit | selfcheck")
        ->required()
        ->check(CLI::IsMember({"list", "emit", "selfcheck"}));
    cat->add_option("name", cat_name, "Graph name for emit");

    CorpusArgs corpus_args;
    auto* corp = app.add_subcommand("corpus", "Generate a test corpus and cross-check solver and scanner on it");
    corp->add_flag("--small", corpus_args.small, "Exhaustive small graphs instead of random ones");
    corp->add_option("--max-vertices", corpus_args.max_vertices, "Vertex bound for --small")->capture_default_str();
    corp->add_option("--max-edges", corpus_args.max_edges, "Edge bound for --small")->capture_default_str();
    corp->add_option("--seed", corpus_args.seed, "Random seed")->capture_default_str();
    corp->add_option("--count", corpus_args.count, "Number of random graphs")->capture_default_str();
    corp->add_option("--jobs", corpus_args.jobs, "Worker threads")->capture_default_str();
    corp->add_flag("--emit", corpus_args.emit, "Print the graphs instead of checking them");
    add_common(corp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    try {
        if (*check) return cmd_check(graph_path, assignment_path, default_parity, common);
        if (*scan) return cmd_scan(graph_path, scan_args, common);
        if (*dec) return cmd_decompose(graph_path, validate_flag, common);
        if (*pf) return cmd_pfaffian(graph_path, brute_check, max_matchings, common);
        if (*cat) return cmd_catalog(cat_action, cat_name);
        if (*corp) return cmd_corpus(corpus_args, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
