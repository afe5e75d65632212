#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "taged/automaton.hpp"
#include "taged/constrained.hpp"
#include "taged/graph.hpp"
#include "taged/limits.hpp"

namespace taged {

/// Name shared by B_G's unique final state and A_m's leaf state once the two
/// automata are glued.
inline constexpr std::string_view kSlotState = "q1";

/// {f/2, g/3, A/0}
RankedAlphabet counter_alphabet();
/// {h/2} plus A_v/0 for every vertex.
RankedAlphabet comb_alphabet(const Digraph& g);

/// Automaton whose language is the single term with exactly m leaves, all
/// labelled A. States am.q1..am.qk for the k bits of m, most significant
/// first; a 0 bit doubles with f, a 1 bit doubles and adds a leaf with g.
/// Throws DomainError for m < 1.
TreeAutomaton build_a_m(const BigInt& m);

/// Node count of the unique term of build_a_m(m), computed from the bits.
BigInt a_m_term_size(const BigInt& m);

/// Combs of walks on exactly |V| vertices, most recent vertex outermost.
/// States pg.q_<w>_<i>: a comb of i+1 entries whose outermost vertex is w.
TreeAutomaton build_p_g(const Digraph& g);

/// Combs with at least two entries in which some vertex occurs twice.
/// States cg.p0 (any vertex), cg.p1 (comb of >= 2 entries), cg.p_<w>
/// (vertex w, to be matched), cg.pp_<w> (comb containing w), cg.pf (accept).
TreeAutomaton build_c_g(const Digraph& g);

/// Unique-final, trimmed product of C_G and P_G: combs of non-Hamiltonian
/// full walks. States are prefixed "bg.".
TreeAutomaton build_b_g(const TreeAutomaton& c_g, const TreeAutomaton& p_g);
TreeAutomaton build_b_g(const Digraph& g);

struct ReductionBundle {
    Digraph graph;
    BigInt m_g;
    TreeAutomaton a_m;
    TreeAutomaton p_g;
    TreeAutomaton c_g;
    TreeAutomaton b_g;
    Taged d_g;
};

/// Glues B_G under the leaves of A_{m_G}: B_G's final state and A_m's leaf
/// state both become q1, the rule A -> q1 is dropped, and (q1, q1) is the
/// only (disequality) constraint. Throws PreconditionViolated when |V| < 2
/// or m_G = 0, naming the trivial verdict.
ReductionBundle build_d_g(const Digraph& g);

/// Upper bound asserted on |states(D_G)|: |V|^2 + 3|V| + 4 + bitlen(m_G).
std::size_t d_g_state_bound(std::size_t vertices, const BigInt& m_g);
/// Upper bound asserted on |rules(D_G)|:
/// 2 * (3|V| + |E| (|V|-1) (5|V| + 2)) + bitlen(m_G).
std::size_t d_g_rule_bound(std::size_t vertices, std::size_t edges, const BigInt& m_g);
/// Upper bound on |states(D_G)| that the product construction actually
/// meets: 3|V| + (|V|-1)(|V|^2 + 2|V|) + 1 + bitlen(m_G).
std::size_t d_g_cubic_state_bound(std::size_t vertices, const BigInt& m_g);

std::size_t bit_length(const BigInt& m);

enum class DecideMethod { counting, search };

struct Decision {
    bool hamiltonian = false;
    BigInt m_g;
    /// |L(B_G)|, counting method only.
    std::optional<std::size_t> bg_count;
    /// Exact witness node budget, search method only.
    std::optional<std::size_t> budget;
    /// Accepted term of D_G when one was found.
    std::optional<Term> witness;
    /// Set when a degenerate case short-circuited the construction.
    std::string shortcut;
};

/// Witness node budget for D_G: internal nodes of the A_{m_G} term plus
/// m_G combs of 2|V|-1 nodes.
BigInt search_budget(const BigInt& m_g, std::size_t vertices);

/// Hamiltonian path exists iff D_G accepts the empty language.
/// counting: empty iff |L(B_G)| < m_G, with |L(B_G)| enumerated.
/// search: empty iff the bounded witness search at the exact budget fails.
Decision reduce_and_decide(const Digraph& g, DecideMethod method, const Limits& limits = {});

}  // namespace taged
