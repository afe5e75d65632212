#include "taged/constrained.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "taged/error.hpp"

namespace taged {

Taged::Taged(TreeAutomaton base, std::vector<StatePair> eq, std::vector<StatePair> neq)
    : base_(std::move(base)), eq_(std::move(eq)), neq_(std::move(neq)) {
    for (auto* rel : {&eq_, &neq_}) {
        std::sort(rel->begin(), rel->end());
        rel->erase(std::unique(rel->begin(), rel->end()), rel->end());
        for (const auto& [p, q] : *rel)
            if (!base_.find_state(p) || !base_.find_state(q))
                throw std::invalid_argument("constraint (" + p + "," + q +
                                            ") names a state outside the automaton");
    }
}

ConstraintClass constraint_class(const Taged& t) {
    return {t.eq_constraints().size(), t.neq_constraints().size()};
}

namespace {

/// Symmetric closure of a constraint relation as an adjacency list.
std::vector<std::vector<StateId>> partners(const TreeAutomaton& a,
                                           const std::vector<StatePair>& rel) {
    std::vector<std::vector<StateId>> out(a.state_count());
    for (const auto& [p, q] : rel) {
        auto x = a.state_id(p), y = a.state_id(q);
        out[x].push_back(y);
        out[y].push_back(x);
    }
    for (auto& v : out) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return out;
}

std::vector<std::vector<bool>> relation_matrix(const TreeAutomaton& a,
                                               const std::vector<StatePair>& rel) {
    std::vector<std::vector<bool>> m(a.state_count(), std::vector<bool>(a.state_count(), false));
    for (const auto& [p, q] : rel) {
        auto x = a.state_id(p), y = a.state_id(q);
        m[x][y] = m[y][x] = true;
    }
    return m;
}

struct FlatNode {
    std::size_t symbol;
    std::vector<std::size_t> kids;
    std::size_t klass;  // equal subterms share a class
    Position pos;
};

}  // namespace

Membership taged_accepts(const Taged& tg, const Term& term) {
    const auto& a = tg.base();
    const std::size_t nstates = a.state_count();

    std::vector<FlatNode> nodes;
    nodes.reserve(term.size());
    std::map<std::vector<std::size_t>, std::size_t> classes;
    auto flatten = [&](auto& self, const Term& u, const Position& at) -> std::size_t {
        std::vector<std::size_t> kids;
        for (std::size_t i = 0; i < u.children().size(); ++i)
            kids.push_back(self(self, u.children()[i], at.child(i + 1)));
        auto sym = a.symbol_id(u.symbol());
        if (!sym)
            throw AlienSymbol("symbol '" + u.symbol().name + "/" +
                              std::to_string(u.symbol().arity) + "' is not in the alphabet");
        std::vector<std::size_t> key{*sym};
        for (auto k : kids) key.push_back(nodes[k].klass);
        auto [it, _] = classes.emplace(std::move(key), classes.size());
        nodes.push_back({*sym, std::move(kids), it->second, at});
        return nodes.size() - 1;
    };
    flatten(flatten, term, Position{});
    const std::size_t n = nodes.size();
    const std::size_t root = n - 1;

    auto rule_fits = [&](const TreeAutomaton::IndexedRule& r, const auto& state_ok) {
        for (std::size_t i = 0; i < r.args.size(); ++i)
            if (!state_ok(i, r.args[i])) return false;
        return true;
    };

    std::vector<std::vector<bool>> reach(n, std::vector<bool>(nstates, false));
    for (std::size_t v = 0; v < n; ++v)
        for (auto ri : a.rules_with_symbol(nodes[v].symbol)) {
            const auto& r = a.indexed_rules()[ri];
            if (rule_fits(r, [&](std::size_t i, StateId q) { return reach[nodes[v].kids[i]][q]; }))
                reach[v][r.target] = true;
        }

    // Top-down: states at a node that can still lead to an accepting root.
    std::vector<std::vector<bool>> useful(n, std::vector<bool>(nstates, false));
    for (StateId q = 0; q < nstates; ++q) useful[root][q] = reach[root][q] && a.is_final(q);
    for (std::size_t v = n; v-- > 0;)
        for (auto ri : a.rules_with_symbol(nodes[v].symbol)) {
            const auto& r = a.indexed_rules()[ri];
            if (!useful[v][r.target]) continue;
            if (!rule_fits(r, [&](std::size_t i, StateId q) { return reach[nodes[v].kids[i]][q]; }))
                continue;
            for (std::size_t i = 0; i < r.args.size(); ++i) useful[nodes[v].kids[i]][r.args[i]] = true;
        }
    if (std::none_of(useful[root].begin(), useful[root].end(), [](bool b) { return b; }))
        return {};

    const auto eq = partners(a, tg.eq_constraints());
    const auto neq = partners(a, tg.neq_constraints());
    std::vector<std::vector<std::size_t>> holders(nstates);
    std::vector<StateId> label(n);
    std::vector<std::vector<StateId>> cand(n);
    std::vector<std::size_t> cursor(n, 0);

    auto enter = [&](std::size_t v) {
        cand[v].clear();
        cursor[v] = 0;
        for (auto ri : a.rules_with_symbol(nodes[v].symbol)) {
            const auto& r = a.indexed_rules()[ri];
            if (!useful[v][r.target]) continue;
            if (rule_fits(r, [&](std::size_t i, StateId q) { return label[nodes[v].kids[i]] == q; }))
                cand[v].push_back(r.target);
        }
        std::sort(cand[v].begin(), cand[v].end());
        cand[v].erase(std::unique(cand[v].begin(), cand[v].end()), cand[v].end());
    };
    auto consistent = [&](std::size_t v, StateId q) {
        for (auto p : eq[q])
            for (auto w : holders[p])
                if (nodes[w].klass != nodes[v].klass) return false;
        for (auto p : neq[q])
            for (auto w : holders[p])
                if (nodes[w].klass == nodes[v].klass) return false;
        return true;
    };

    std::size_t v = 0;
    enter(0);
    while (true) {
        if (cursor[v] < cand[v].size()) {
            StateId q = cand[v][cursor[v]++];
            if (!consistent(v, q)) continue;
            label[v] = q;
            holders[q].push_back(v);
            if (v == root) break;
            enter(++v);
            continue;
        }
        if (v == 0) return {};
        --v;
        holders[label[v]].pop_back();
    }

    Run run{term, {}};
    for (std::size_t i = 0; i < n; ++i) run.labels.emplace(nodes[i].pos, a.state_name(label[i]));
    return {true, std::move(run)};
}

namespace {

constexpr std::size_t kInf = static_cast<std::size_t>(-1);

/// Bounded witness search. The run is built top-down as a skeleton: states
/// whose sub-runs may contain constrained states ("tainted") are expanded
/// rule by rule; everything below is a slot filled from the size-ordered
/// stream of terms reaching its state, or a fixed minimal term when no
/// constrained ancestor can observe it. Budget pruning uses minimal sizes.
class WitnessSearch {
public:
    WitnessSearch(const Taged& tg, std::size_t budget, const Limits& limits)
        : tg_(tg), a_(tg.base()), budget_(budget), limits_(limits) {
        const auto ns = a_.state_count();
        productive_ = productive_states(a_);
        minterm_ = minimal_terms(a_);
        minsize_.assign(ns, kInf);
        for (StateId q = 0; q < ns; ++q)
            if (minterm_[q]) minsize_[q] = minterm_[q]->size();
        eq_ = relation_matrix(a_, tg.eq_constraints());
        neq_ = relation_matrix(a_, tg.neq_constraints());
        constrained_.assign(ns, false);
        for (const auto* rel : {&tg.eq_constraints(), &tg.neq_constraints()})
            for (const auto& [p, q] : *rel) constrained_[a_.state_id(p)] = constrained_[a_.state_id(q)] = true;

        tainted_ = constrained_;
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& r : a_.indexed_rules()) {
                if (tainted_[r.target] || !all_productive(r)) continue;
                if (std::any_of(r.args.begin(), r.args.end(), [&](StateId q) { return tainted_[q]; }))
                    tainted_[r.target] = changed = true;
            }
        }
        frontier_.assign(ns, false);
        for (StateId q = 0; q < ns; ++q) {
            if (!constrained_[q]) continue;
            bool closed = true;
            for (auto ri : a_.rules_into(q)) {
                const auto& r = a_.indexed_rules()[ri];
                if (all_productive(r) &&
                    std::any_of(r.args.begin(), r.args.end(), [&](StateId p) { return tainted_[p]; }))
                    closed = false;
            }
            frontier_[q] = closed;
        }
    }

    std::optional<Term> run() {
        for (StateId f = 0; f < a_.state_count(); ++f) {
            if (!a_.is_final(f) || !productive_[f] || minsize_[f] > budget_) continue;
            nodes_.clear();
            open_.clear();
            expanded_ = 0;
            lb_ = minsize_[f];
            add_node(f, false);
            if (expand()) return result_;
        }
        return std::nullopt;
    }

private:
    enum class Kind { open, expanded, slot, fixed };
    struct Node {
        StateId state;
        Kind kind;
        bool under;  // some proper ancestor carries a constrained state
        std::size_t rule = 0;
        std::vector<std::size_t> kids;
    };

    bool all_productive(const TreeAutomaton::IndexedRule& r) const {
        return std::all_of(r.args.begin(), r.args.end(), [&](StateId q) { return productive_[q]; });
    }

    void tick() {
        if (++steps_ > limits_.max_buckets)
            throw ResourceLimit("witness search exceeded " + std::to_string(limits_.max_buckets) +
                                " steps (--max-buckets)");
    }

    std::size_t add_node(StateId q, bool under) {
        Kind kind;
        if (!tainted_[q])
            kind = under ? Kind::slot : Kind::fixed;
        else
            kind = frontier_[q] ? Kind::slot : Kind::open;
        nodes_.push_back({q, kind, under, 0, {}});
        if (kind == Kind::open) open_.push_back(nodes_.size() - 1);
        return nodes_.size() - 1;
    }

    bool expand() {
        tick();
        if (open_.empty()) return assign_slots();
        const std::size_t v = open_.back();
        open_.pop_back();
        const StateId q = nodes_[v].state;
        for (auto ri : a_.rules_into(q)) {
            const auto& r = a_.indexed_rules()[ri];
            if (!all_productive(r)) continue;
            std::size_t grown = 1;
            for (auto p : r.args) grown += minsize_[p];
            if (lb_ - minsize_[q] + grown > budget_) continue;
            const auto saved_nodes = nodes_.size();
            const auto saved_open = open_.size();
            lb_ = lb_ - minsize_[q] + grown;
            ++expanded_;
            nodes_[v].kind = Kind::expanded;
            nodes_[v].rule = ri;
            nodes_[v].kids.clear();
            const bool under = nodes_[v].under || constrained_[q];
            for (auto p : r.args) {
                auto child = add_node(p, under);
                nodes_[v].kids.push_back(child);
            }
            // Expand leftmost children first.
            std::reverse(open_.begin() + static_cast<std::ptrdiff_t>(saved_open), open_.end());
            if (expand()) return true;
            nodes_.resize(saved_nodes);
            open_.resize(saved_open);
            --expanded_;
            lb_ = lb_ + minsize_[q] - grown;
        }
        nodes_[v].kind = Kind::open;
        nodes_[v].kids.clear();
        open_.push_back(v);
        return false;
    }

    void ensure_buckets(std::size_t cap) {
        if (!buckets_ || buckets_->max_size < cap) {
            std::vector<bool> include(a_.state_count());
            for (StateId p = 0; p < a_.state_count(); ++p)
                include[p] = productive_[p] && (!tainted_[p] || frontier_[p]);
            buckets_ = build_term_buckets(a_, cap, include, limits_.max_buckets);
            streams_.clear();
        }
    }

    const std::vector<Term>& stream(StateId q) {
        auto it = streams_.find(q);
        if (it == streams_.end()) it = streams_.emplace(q, buckets_->stream(q, buckets_->max_size)).first;
        return it->second;
    }

    bool assign_slots() {
        slots_.clear();
        std::size_t fixed_cost = 0;
        bool symmetric = true;
        auto collect = [&](auto& self, std::size_t v) -> void {
            const auto& nd = nodes_[v];
            if (nd.kind == Kind::slot) slots_.push_back(v);
            if (nd.kind == Kind::fixed) fixed_cost += minsize_[nd.state];
            if (nd.kind == Kind::expanded) {
                if (constrained_[nd.state]) symmetric = false;
                for (auto c : nd.kids) self(self, c);
            }
        };
        collect(collect, 0);
        symmetric_ = symmetric;
        room_ = budget_ - expanded_ - fixed_cost;

        const std::size_t k = slots_.size();
        suffix_min_.assign(k + 1, 0);
        for (std::size_t i = k; i-- > 0;) suffix_min_[i] = suffix_min_[i + 1] + minsize_[nodes_[slots_[i]].state];
        prev_same_.assign(k, kInf);
        later_same_.assign(k, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j-- > 0;)
                if (nodes_[slots_[j]].state == nodes_[slots_[i]].state) {
                    prev_same_[i] = j;
                    break;
                }
        for (std::size_t i = k; i-- > 0;)
            for (std::size_t j = i + 1; j < k; ++j)
                if (nodes_[slots_[j]].state == nodes_[slots_[i]].state) {
                    later_same_[i] = later_same_[j] + 1;
                    break;
                }
        std::size_t cap = 0;
        for (auto v : slots_) {
            auto q = nodes_[v].state;
            cap = std::max(cap, room_ - (suffix_min_[0] - minsize_[q]));
        }
        if (k) ensure_buckets(cap);
        streams_for_.assign(k, nullptr);
        for (std::size_t i = 0; i < k; ++i) streams_for_[i] = &stream(nodes_[slots_[i]].state);
        chosen_.assign(k, 0);
        picked_.clear();
        return place(0, 0);
    }

    bool place(std::size_t i, std::size_t used) {
        tick();
        if (i == slots_.size()) return finish();
        const StateId q = nodes_[slots_[i]].state;
        const auto& st = *streams_for_[i];
        std::size_t start = 0;
        const bool distinct = symmetric_ && neq_[q][q];
        if (symmetric_ && prev_same_[i] != kInf) start = chosen_[prev_same_[i]] + (distinct ? 1 : 0);
        for (std::size_t idx = start; idx < st.size(); ++idx) {
            if (distinct && st.size() - idx <= later_same_[i]) break;
            const Term& t = st[idx];
            if (used + t.size() + suffix_min_[i + 1] > room_) break;
            if (!fits(i, q, t)) continue;
            chosen_[i] = idx;
            picked_.push_back(t);
            if (place(i + 1, used + t.size())) return true;
            picked_.pop_back();
        }
        return false;
    }

    bool fits(std::size_t i, StateId q, const Term& t) const {
        for (std::size_t j = 0; j < i; ++j) {
            const StateId p = nodes_[slots_[j]].state;
            if (eq_[q][p] && !(picked_[j] == t)) return false;
            if (neq_[q][p] && picked_[j] == t) return false;
        }
        return true;
    }

    bool finish() {
        std::vector<std::optional<Term>> built(nodes_.size());
        std::size_t next_slot = 0;
        auto build = [&](auto& self, std::size_t v) -> Term {
            const auto& nd = nodes_[v];
            switch (nd.kind) {
                case Kind::slot:
                    built[v] = picked_[next_slot++];
                    break;
                case Kind::fixed:
                    built[v] = *minterm_[nd.state];
                    break;
                default: {
                    std::vector<Term> kids;
                    for (auto c : nd.kids) kids.push_back(self(self, c));
                    const auto& r = a_.indexed_rules()[nd.rule];
                    built[v] = Term(a_.symbols()[r.symbol], std::move(kids));
                }
            }
            return *built[v];
        };
        Term whole = build(build, 0);
        if (!symmetric_) {
            // Slot pairs were checked while placing; pairs involving a
            // constrained expanded node are checked here.
            std::vector<std::size_t> watched;
            for (std::size_t v = 0; v < nodes_.size(); ++v)
                if (constrained_[nodes_[v].state] &&
                    (nodes_[v].kind == Kind::expanded || nodes_[v].kind == Kind::slot))
                    watched.push_back(v);
            for (std::size_t x = 0; x < watched.size(); ++x)
                for (std::size_t y = x + 1; y < watched.size(); ++y) {
                    const auto& u = nodes_[watched[x]];
                    const auto& w = nodes_[watched[y]];
                    if (u.kind == Kind::slot && w.kind == Kind::slot) continue;
                    const bool same = *built[watched[x]] == *built[watched[y]];
                    if (eq_[u.state][w.state] && !same) return false;
                    if (neq_[u.state][w.state] && same) return false;
                }
        }
        result_ = std::move(whole);
        return true;
    }

    const Taged& tg_;
    const TreeAutomaton& a_;
    std::size_t budget_;
    Limits limits_;

    std::vector<bool> productive_, constrained_, tainted_, frontier_;
    std::vector<std::vector<bool>> eq_, neq_;
    std::vector<std::optional<Term>> minterm_;
    std::vector<std::size_t> minsize_;

    std::vector<Node> nodes_;
    std::vector<std::size_t> open_;
    std::size_t expanded_ = 0;
    std::size_t lb_ = 0;
    std::size_t steps_ = 0;

    std::vector<std::size_t> slots_;
    bool symmetric_ = true;
    std::size_t room_ = 0;
    std::vector<std::size_t> suffix_min_, prev_same_, later_same_, chosen_;
    std::vector<const std::vector<Term>*> streams_for_;
    std::vector<Term> picked_;
    std::optional<TermBuckets> buckets_;
    std::map<StateId, std::vector<Term>> streams_;
    std::optional<Term> result_;
};

}  // namespace

std::optional<Term> taged_empty_bounded(const Taged& tg, std::size_t max_nodes, const Limits& limits) {
    if (max_nodes > limits.max_nodes)
        throw ResourceLimit("search bound " + std::to_string(max_nodes) + " exceeds " +
                            std::to_string(limits.max_nodes) + " nodes (--max-nodes)");
    if (tg.eq_constraints().empty() && tg.neq_constraints().empty()) {
        const auto& a = tg.base();
        auto mins = minimal_terms(a);
        std::optional<Term> best;
        for (StateId q = 0; q < a.state_count(); ++q) {
            if (!a.is_final(q) || !mins[q]) continue;
            if (!best || SizeThenCanonical{}(*mins[q], *best)) best = mins[q];
        }
        if (best && best->size() <= max_nodes) return best;
        return std::nullopt;
    }
    return WitnessSearch(tg, max_nodes, limits).run();
}

}  // namespace taged
