#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "taged/automaton.hpp"
#include "taged/constrained.hpp"
#include "taged/graph.hpp"
#include "taged/term.hpp"

namespace taged {

// Term syntax: `A`, `f(t1,...,tn)`, identifiers [A-Za-z0-9_]+. Whitespace
// between tokens is ignored on input; `A()` is read as the constant A.
Term parse_term(std::string_view text);

// Automaton syntax, one item per line, `#` starts a comment:
//
//   alphabet: f/2 g/3 A/0
//   states: q1 q2
//   final: q2
//   rule: f(q1,q1) -> q2
//   rule: A() -> q1
//
// TAGED files add `eq: p q` and `neq: p q` lines. Keys may repeat and lines
// may come in any order. Printing sorts everything canonically.
TreeAutomaton parse_automaton(std::string_view text);
Taged parse_taged(std::string_view text);
std::string print_automaton(const TreeAutomaton& a);
std::string print_taged(const Taged& t);

//   vertices: 1 2 3
//   edge: 1 2
Digraph parse_graph(std::string_view text);
std::string print_graph(const Digraph& g);

/// Whole file as a string; throws ParseError if it cannot be read.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace taged
