#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "taged/automaton.hpp"
#include "taged/limits.hpp"
#include "taged/term.hpp"

namespace taged {

using StatePair = std::pair<std::string, std::string>;

/// Tree automaton with global equality (R1) and disequality (R2) constraints
/// between states. Pairs are kept as given, sorted and deduplicated.
class Taged {
public:
    Taged() = default;
    /// Throws std::invalid_argument if a constrained state is not in `base`.
    Taged(TreeAutomaton base, std::vector<StatePair> eq, std::vector<StatePair> neq);

    const TreeAutomaton& base() const { return base_; }
    const std::vector<StatePair>& eq_constraints() const { return eq_; }
    const std::vector<StatePair>& neq_constraints() const { return neq_; }

    friend bool operator==(const Taged&, const Taged&) = default;

private:
    TreeAutomaton base_;
    std::vector<StatePair> eq_;
    std::vector<StatePair> neq_;
};

struct ConstraintClass {
    std::size_t eq_pairs = 0;   // k'
    std::size_t neq_pairs = 0;  // k
    friend bool operator==(const ConstraintClass&, const ConstraintClass&) = default;
};

/// (|R1|, |R2|): the smallest TAGED(k', k) class containing `t`.
ConstraintClass constraint_class(const Taged& t);

struct Membership {
    bool accepted = false;
    std::optional<Run> witness;
};

/// Searches for an accepting run whose labelling satisfies every
/// constraint. Equality pairs compare every pair of positions; disequality
/// pairs only compare distinct positions, so (q, q) in R2 asks for pairwise
/// different subterms under q. Positions are labelled in post-order with
/// candidate states in canonical order; a partial run is abandoned as soon
/// as a labelled pair violates a constraint. Throws AlienSymbol.
Membership taged_accepts(const Taged& t, const Term& term);

/// Some accepted term of at most `max_nodes` nodes, or nothing. Complete for
/// the bound: absence means no accepted term that small exists, not that the
/// language is empty. Throws ResourceLimit past `limits.max_buckets`
/// buffered terms or search steps.
std::optional<Term> taged_empty_bounded(const Taged& t, std::size_t max_nodes,
                                        const Limits& limits = {});

}  // namespace taged
