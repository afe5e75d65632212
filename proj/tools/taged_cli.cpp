// Command-line front end: graphs in, reductions, verdicts and lemma reports out.
//
// Exit codes: 0 positive verdict or success, 1 negative verdict, 2 parse or
// usage error, 3 resource limit, 4 any other failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "taged/automaton.hpp"
#include "taged/constrained.hpp"
#include "taged/error.hpp"
#include "taged/graph.hpp"
#include "taged/reduction.hpp"
#include "taged/text_format.hpp"
#include "taged/verify.hpp"

namespace {

using namespace taged;

enum Exit : int { kYes = 0, kNo = 1, kParse = 2, kResource = 3, kOther = 4 };

void add_caps(CLI::App* cmd, Limits& limits) {
    cmd->add_option("--max-vertices", limits.max_vertices, "Largest graph accepted")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-nodes", limits.max_nodes, "Largest term size searched or enumerated")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-buckets", limits.max_buckets,
                    "Most terms, runs, walks or search steps held at once")
        ->check(CLI::PositiveNumber);
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error("cannot write '" + path + "'");
}

void check_vertices(const Digraph& g, const Limits& limits) {
    if (g.vertex_count() > limits.max_vertices)
        throw ResourceLimit("graph has " + std::to_string(g.vertex_count()) + " vertices, cap is " +
                            std::to_string(limits.max_vertices) + " (--max-vertices)");
}

int count_paths(const std::string& graph_file, const Limits& limits) {
    auto g = parse_graph(read_text_file(graph_file));
    check_vertices(g, limits);
    std::cout << count_full_walks(g) << "\n";
    return kYes;
}

int decide(const std::string& graph_file, DecideMethod method, const Limits& limits) {
    auto g = parse_graph(read_text_file(graph_file));
    auto d = reduce_and_decide(g, method, limits);
    std::cout << (d.hamiltonian ? "HAMILTONIAN" : "NO-HAMILTONIAN") << "\n";
    std::cout << "# m_G=" << d.m_g;
    if (!d.shortcut.empty()) std::cout << " trivial: " << d.shortcut;
    if (d.bg_count) std::cout << " bG_count=" << *d.bg_count;
    if (d.budget)
        std::cout << " budget=" << *d.budget << " witness_nodes="
                  << (d.witness ? std::to_string(d.witness->size()) : std::string("none"));
    std::cout << "\n";
    return d.hamiltonian ? kYes : kNo;
}

int reduce(const std::string& graph_file, const std::string& stage, const std::string& out,
           const Limits& limits) {
    auto g = parse_graph(read_text_file(graph_file));
    check_vertices(g, limits);
    if (stage == "pg") {
        write_output(out, print_automaton(build_p_g(g)));
    } else if (stage == "cg") {
        write_output(out, print_automaton(build_c_g(g)));
    } else if (stage == "bg") {
        write_output(out, print_automaton(build_b_g(g)));
    } else {
        auto bundle = build_d_g(g);
        write_output(out, stage == "am" ? print_automaton(bundle.a_m) : print_taged(bundle.d_g));
    }
    return kYes;
}

int accepts_cmd(const std::string& automaton_file, const std::string& term_text, bool witness) {
    auto t = parse_taged(read_text_file(automaton_file));
    auto term = parse_term(term_text);
    check_alphabet(term, t.base().alphabet());
    auto m = taged_accepts(t, term);
    std::cout << (m.accepted ? "ACCEPT" : "REJECT") << "\n";
    if (witness && m.witness)
        for (const auto& [pos, state] : m.witness->labels) std::cout << pos.to_string() << ":" << state << "\n";
    return m.accepted ? kYes : kNo;
}

int enumerate_cmd(const std::string& automaton_file, const Limits& limits) {
    auto a = parse_automaton(read_text_file(automaton_file));
    for (const auto& t : enumerate_language(a, limits.max_nodes, limits)) std::cout << t.to_string() << "\n";
    return kYes;
}

int verify_cmd(const std::string& graph_file, std::size_t random_vertices, std::uint64_t seed,
               const Limits& limits) {
    Digraph g;
    if (random_vertices > 0) {
        std::mt19937_64 rng(seed);
        g = random_digraph(random_vertices, 0.5, rng);
        std::cout << "# graph:";
        for (const auto& [u, v] : g.edges()) std::cout << " " << u << "->" << v;
        std::cout << "\n";
    } else {
        g = parse_graph(read_text_file(graph_file));
    }
    auto report = verify_constructions(g, limits);
    report.write(std::cout);
    if (report.failures() == 0) {
        std::cout << "ALL-PASS\n";
        return kYes;
    }
    std::cout << "FAILURES=" << report.failures() << "\n";
    return kNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tree automata with global constraints and the Hamiltonian path reduction"};
    app.require_subcommand(1);

    Limits limits;
    std::string graph_file, automaton_file, term_text, out_path, stage = "dg";
    std::string method_name = "counting";
    bool witness = false;
    std::size_t random_vertices = 0;
    std::uint64_t seed = 1;

    auto* count = app.add_subcommand("count-paths", "Print m_G, the number of walks on |V| vertices");
    count->add_option("graph", graph_file)->required();
    add_caps(count, limits);

    auto* dec = app.add_subcommand("decide", "Decide Hamiltonicity through emptiness of D_G");
    dec->add_option("graph", graph_file)->required();
    dec->add_option("--method", method_name)->check(CLI::IsMember({"counting", "search"}));
    add_caps(dec, limits);

    auto* red = app.add_subcommand("reduce", "Write D_G (or an intermediate automaton)");
    red->add_option("graph", graph_file)->required();
    red->add_option("-o", out_path, "Output path (stdout if omitted)");
    red->add_option("--stage", stage, "Which automaton to write")
        ->check(CLI::IsMember({"am", "pg", "cg", "bg", "dg"}));
    add_caps(red, limits);

    auto* acc = app.add_subcommand("accepts", "Membership of a term in an automaton or TAGED");
    acc->add_option("automaton", automaton_file)->required();
    acc->add_option("term", term_text)->required();
    acc->add_flag("--witness", witness, "Print the accepting run as position:state lines");

    auto* en = app.add_subcommand("enumerate", "List accepted terms up to --max-nodes nodes");
    en->add_option("automaton", automaton_file)->required();
    add_caps(en, limits);

    auto* ver = app.add_subcommand("verify", "Check every construction against its oracle");
    ver->add_option("graph", graph_file);
    ver->add_option("--random", random_vertices, "Verify a random digraph on this many vertices instead");
    ver->add_option("--seed", seed, "Seed for --random");
    add_caps(ver, limits);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kYes : kParse;
    }
    if (en->parsed() && en->count("--max-nodes") == 0) {
        std::cerr << "enumerate: --max-nodes is required\n";
        return kParse;
    }
    if (ver->parsed() && graph_file.empty() && random_vertices == 0) {
        std::cerr << "verify: give a graph file or --random N\n";
        return kParse;
    }

    try {
        if (count->parsed()) return count_paths(graph_file, limits);
        if (dec->parsed())
            return decide(graph_file, method_name == "search" ? DecideMethod::search : DecideMethod::counting,
                          limits);
        if (red->parsed()) return reduce(graph_file, stage, out_path, limits);
        if (acc->parsed()) return accepts_cmd(automaton_file, term_text, witness);
        if (en->parsed()) return enumerate_cmd(automaton_file, limits);
        if (ver->parsed()) return verify_cmd(graph_file, random_vertices, seed, limits);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const AlienSymbol& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
    return kOther;
}
