#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taged/limits.hpp"
#include "taged/term.hpp"

namespace taged {

/// f(q_1,...,q_n) -> q
struct Rule {
    Symbol symbol;
    std::vector<std::string> args;
    std::string target;

    std::string to_string() const;

    friend bool operator==(const Rule&, const Rule&) = default;
    friend auto operator<=>(const Rule&, const Rule&) = default;
};

/// State names are free of whitespace and '#', keep parentheses balanced and
/// only use ',' inside parentheses, so they survive the text format.
bool is_state_name(std::string_view name);

using StateId = std::size_t;

/// Bottom-up tree automaton (Q, Delta, F). Immutable once built; states,
/// final states and rules are kept sorted and deduplicated.
class TreeAutomaton {
public:
    struct IndexedRule {
        std::size_t symbol;  // index into alphabet().symbols()
        std::vector<StateId> args;
        StateId target;
    };

    TreeAutomaton();
    /// Throws std::invalid_argument on a malformed state name, an unknown
    /// state, a final state outside `states`, or a rule whose symbol is not
    /// in `alphabet` or whose argument count disagrees with the arity.
    TreeAutomaton(RankedAlphabet alphabet, std::vector<std::string> states,
                  std::vector<Rule> rules, std::vector<std::string> final_states);

    const RankedAlphabet& alphabet() const { return alphabet_; }
    const std::vector<std::string>& states() const { return states_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<std::string>& final_states() const { return final_; }

    std::size_t state_count() const { return states_.size(); }
    std::optional<StateId> find_state(std::string_view name) const;
    /// Throws std::out_of_range for an unknown name.
    StateId state_id(std::string_view name) const;
    const std::string& state_name(StateId id) const { return states_[id]; }
    bool is_final(StateId id) const { return index_->is_final[id]; }

    std::span<const IndexedRule> indexed_rules() const { return index_->rules; }
    const std::vector<Symbol>& symbols() const { return index_->symbols; }
    std::optional<std::size_t> symbol_id(const Symbol& s) const;
    /// Indices into indexed_rules().
    std::span<const std::size_t> rules_with_symbol(std::size_t symbol) const {
        return index_->by_symbol[symbol];
    }
    std::span<const std::size_t> rules_into(StateId q) const { return index_->by_target[q]; }

    friend bool operator==(const TreeAutomaton& a, const TreeAutomaton& b) {
        return a.alphabet_ == b.alphabet_ && a.states_ == b.states_ && a.rules_ == b.rules_ &&
               a.final_ == b.final_;
    }

private:
    struct Index {
        std::vector<Symbol> symbols;
        std::vector<IndexedRule> rules;
        std::vector<std::vector<std::size_t>> by_symbol;
        std::vector<std::vector<std::size_t>> by_target;
        std::vector<bool> is_final;
    };

    RankedAlphabet alphabet_;
    std::vector<std::string> states_;
    std::vector<Rule> rules_;
    std::vector<std::string> final_;
    std::shared_ptr<const Index> index_;
};

/// Assignment of states to every position of `term`.
struct Run {
    Term term;
    std::map<Position, std::string> labels;

    const std::string& root_state() const { return labels.at(Position{}); }
    friend bool operator==(const Run&, const Run&) = default;
};

/// {q | t ->* q}, computed node by node. Throws AlienSymbol.
std::set<std::string> reachable_states(const TreeAutomaton& a, const Term& t);
bool accepts(const TreeAutomaton& a, const Term& t);
/// Every run of `t` (accepting or not), ordered by the pre-order label
/// sequence under canonical state order. Throws ResourceLimit past
/// `limits.max_buckets` runs.
std::vector<Run> enumerate_runs(const TreeAutomaton& a, const Term& t, const Limits& limits = {});

/// States q with some term t ->* q.
std::vector<bool> productive_states(const TreeAutomaton& a);
bool is_empty(const TreeAutomaton& a);

/// Smallest term reaching each state (ties broken by rule order); absent for
/// unproductive states.
std::vector<std::optional<Term>> minimal_terms(const TreeAutomaton& a);

/// Terms reaching each state, bucketed by node count.
struct TermBuckets {
    std::size_t max_size = 0;
    /// by_state[q][s] holds the terms of exactly s nodes reaching q, in
    /// canonical order. Index 0 is always empty.
    std::vector<std::vector<std::vector<Term>>> by_state;
    std::size_t total = 0;

    /// All terms reaching q with at most `max` nodes, ordered by size then
    /// canonically.
    std::vector<Term> stream(StateId q, std::size_t max) const;
};

/// Bottom-up dynamic program over (state, size). Only states flagged in
/// `include` get buckets; the flagged set must be closed under rule
/// arguments. Throws ResourceLimit once more than `max_entries` terms are
/// held. Every state of a size level is independent, which the parallel
/// kernel exploits.
TermBuckets build_term_buckets(const TreeAutomaton& a, std::size_t max_size,
                               const std::vector<bool>& include, std::size_t max_entries,
                               Execution exec = Execution::parallel);

/// {t in L(a) : |t| <= max_nodes} in canonical order.
std::vector<Term> enumerate_language(const TreeAutomaton& a, std::size_t max_nodes,
                                     const Limits& limits = {},
                                     Execution exec = Execution::parallel);

/// Intersection automaton over accessible state pairs, named "(l,r)".
/// Throws AlphabetMismatch unless both alphabets are equal.
TreeAutomaton product(const TreeAutomaton& a, const TreeAutomaton& b);

/// Adds a fresh final state and a copy of each rule targeting an old final
/// state retargeted to it. The fresh state never appears as a rule argument.
TreeAutomaton to_unique_final(const TreeAutomaton& a);

/// Drops states that are unproductive or cannot reach a final state, along
/// with their rules. Final states are always kept.
TreeAutomaton trim(const TreeAutomaton& a);

/// Applies `rename` to every state name; must be injective.
TreeAutomaton rename_states(const TreeAutomaton& a,
                            const std::function<std::string(const std::string&)>& rename);

}  // namespace taged
