#include "taged/automaton.hpp"

#include <algorithm>
#include <stdexcept>

#include "taged/error.hpp"

namespace taged {

std::string Rule::to_string() const {
    std::string out = symbol.name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i];
    }
    return out + ") -> " + target;
}

bool is_state_name(std::string_view name) {
    if (name.empty()) return false;
    int depth = 0;
    for (char c : name) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '#') return false;
        if (c == '(') ++depth;
        if (c == ')' && --depth < 0) return false;
        if (c == ',' && depth == 0) return false;
    }
    return depth == 0;
}

namespace {

template <class T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

TreeAutomaton::TreeAutomaton() : index_(std::make_shared<const Index>()) {}

TreeAutomaton::TreeAutomaton(RankedAlphabet alphabet, std::vector<std::string> states,
                             std::vector<Rule> rules, std::vector<std::string> final_states)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      rules_(std::move(rules)),
      final_(std::move(final_states)) {
    sort_unique(states_);
    sort_unique(rules_);
    sort_unique(final_);
    for (const auto& q : states_)
        if (!is_state_name(q)) throw std::invalid_argument("malformed state name '" + q + "'");

    auto index = std::make_shared<Index>();
    index->symbols = alphabet_.symbols();
    index->by_symbol.resize(index->symbols.size());
    index->by_target.resize(states_.size());
    index->is_final.assign(states_.size(), false);

    auto id_of = [&](const std::string& q) {
        auto it = std::lower_bound(states_.begin(), states_.end(), q);
        if (it == states_.end() || *it != q)
            throw std::invalid_argument("unknown state '" + q + "'");
        return static_cast<StateId>(it - states_.begin());
    };
    for (const auto& q : final_) index->is_final[id_of(q)] = true;

    for (const auto& r : rules_) {
        auto sym = std::lower_bound(index->symbols.begin(), index->symbols.end(), r.symbol,
                                    [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
        if (sym == index->symbols.end() || *sym != r.symbol)
            throw std::invalid_argument("rule " + r.to_string() + " uses a symbol outside the alphabet");
        if (r.args.size() != r.symbol.arity)
            throw std::invalid_argument("rule " + r.to_string() + " disagrees with the arity of " +
                                        r.symbol.name);
        IndexedRule ir{static_cast<std::size_t>(sym - index->symbols.begin()), {}, id_of(r.target)};
        for (const auto& q : r.args) ir.args.push_back(id_of(q));
        index->by_symbol[ir.symbol].push_back(index->rules.size());
        index->by_target[ir.target].push_back(index->rules.size());
        index->rules.push_back(std::move(ir));
    }
    index_ = std::move(index);
}

std::optional<StateId> TreeAutomaton::find_state(std::string_view name) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), name);
    if (it == states_.end() || *it != name) return std::nullopt;
    return static_cast<StateId>(it - states_.begin());
}

StateId TreeAutomaton::state_id(std::string_view name) const {
    auto id = find_state(name);
    if (!id) throw std::out_of_range("unknown state '" + std::string(name) + "'");
    return *id;
}

std::optional<std::size_t> TreeAutomaton::symbol_id(const Symbol& s) const {
    const auto& syms = index_->symbols;
    auto it = std::lower_bound(syms.begin(), syms.end(), s,
                               [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
    if (it == syms.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - syms.begin());
}

namespace {

/// Per-node reachable state sets, indexed like `nodes` (post-order).
struct Flattened {
    std::vector<const Term*> nodes;
    std::vector<std::vector<std::size_t>> children;
    std::vector<std::size_t> symbol;
};

Flattened flatten(const TreeAutomaton& a, const Term& t) {
    Flattened f;
    f.nodes.reserve(t.size());
    auto walk = [&](auto& self, const Term& u) -> std::size_t {
        std::vector<std::size_t> kids;
        kids.reserve(u.children().size());
        for (const auto& c : u.children()) kids.push_back(self(self, c));
        auto sym = a.symbol_id(u.symbol());
        if (!sym)
            throw AlienSymbol("symbol '" + u.symbol().name + "/" +
                              std::to_string(u.symbol().arity) + "' is not in the alphabet");
        f.nodes.push_back(&u);
        f.children.push_back(std::move(kids));
        f.symbol.push_back(*sym);
        return f.nodes.size() - 1;
    };
    walk(walk, t);
    return f;
}

std::vector<std::vector<bool>> reach_sets(const TreeAutomaton& a, const Flattened& f) {
    std::vector<std::vector<bool>> reach(f.nodes.size(), std::vector<bool>(a.state_count(), false));
    for (std::size_t n = 0; n < f.nodes.size(); ++n) {
        for (auto ri : a.rules_with_symbol(f.symbol[n])) {
            const auto& r = a.indexed_rules()[ri];
            bool ok = true;
            for (std::size_t i = 0; ok && i < r.args.size(); ++i)
                ok = reach[f.children[n][i]][r.args[i]];
            if (ok) reach[n][r.target] = true;
        }
    }
    return reach;
}

}  // namespace

std::set<std::string> reachable_states(const TreeAutomaton& a, const Term& t) {
    auto f = flatten(a, t);
    auto reach = reach_sets(a, f);
    std::set<std::string> out;
    for (StateId q = 0; q < a.state_count(); ++q)
        if (reach.back()[q]) out.insert(a.state_name(q));
    return out;
}

bool accepts(const TreeAutomaton& a, const Term& t) {
    auto f = flatten(a, t);
    auto reach = reach_sets(a, f);
    for (StateId q = 0; q < a.state_count(); ++q)
        if (reach.back()[q] && a.is_final(q)) return true;
    return false;
}

std::vector<Run> enumerate_runs(const TreeAutomaton& a, const Term& t, const Limits& limits) {
    auto f = flatten(a, t);
    auto reach = reach_sets(a, f);

    // Sub-runs per node as (root state, labels in pre-order of the subtree).
    using SubRun = std::pair<StateId, std::vector<StateId>>;
    std::vector<std::vector<SubRun>> sub(f.nodes.size());
    for (std::size_t n = 0; n < f.nodes.size(); ++n) {
        for (auto ri : a.rules_with_symbol(f.symbol[n])) {
            const auto& r = a.indexed_rules()[ri];
            std::vector<std::vector<const SubRun*>> choices(r.args.size());
            bool ok = true;
            for (std::size_t i = 0; ok && i < r.args.size(); ++i) {
                for (const auto& s : sub[f.children[n][i]])
                    if (s.first == r.args[i]) choices[i].push_back(&s);
                ok = !choices[i].empty();
            }
            if (!ok) continue;
            std::vector<std::size_t> pick(r.args.size(), 0);
            while (true) {
                std::vector<StateId> labels{r.target};
                for (std::size_t i = 0; i < pick.size(); ++i) {
                    const auto& part = choices[i][pick[i]]->second;
                    labels.insert(labels.end(), part.begin(), part.end());
                }
                sub[n].emplace_back(r.target, std::move(labels));
                if (sub[n].size() > limits.max_buckets)
                    throw ResourceLimit("more than " + std::to_string(limits.max_buckets) +
                                        " runs (--max-buckets)");
                std::size_t i = 0;
                for (; i < pick.size(); ++i) {
                    if (++pick[i] < choices[i].size()) break;
                    pick[i] = 0;
                }
                if (i == pick.size()) break;
            }
        }
    }

    auto& top = sub.back();
    std::sort(top.begin(), top.end(),
              [](const SubRun& x, const SubRun& y) { return x.second < y.second; });
    auto pos = positions(t);
    std::vector<Run> runs;
    runs.reserve(top.size());
    for (const auto& [_, labels] : top) {
        Run run{t, {}};
        for (std::size_t i = 0; i < pos.size(); ++i)
            run.labels.emplace(pos[i], a.state_name(labels[i]));
        runs.push_back(std::move(run));
    }
    return runs;
}

std::vector<bool> productive_states(const TreeAutomaton& a) {
    std::vector<bool> productive(a.state_count(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : a.indexed_rules()) {
            if (productive[r.target]) continue;
            if (std::all_of(r.args.begin(), r.args.end(), [&](StateId q) { return productive[q]; })) {
                productive[r.target] = true;
                changed = true;
            }
        }
    }
    return productive;
}

bool is_empty(const TreeAutomaton& a) {
    auto productive = productive_states(a);
    for (StateId q = 0; q < a.state_count(); ++q)
        if (productive[q] && a.is_final(q)) return false;
    return true;
}

std::vector<std::optional<Term>> minimal_terms(const TreeAutomaton& a) {
    constexpr std::size_t kInf = static_cast<std::size_t>(-1);
    std::vector<std::size_t> best(a.state_count(), kInf);
    std::vector<std::size_t> via(a.state_count(), kInf);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t ri = 0; ri < a.indexed_rules().size(); ++ri) {
            const auto& r = a.indexed_rules()[ri];
            std::size_t size = 1;
            for (auto q : r.args) {
                if (best[q] == kInf) {
                    size = kInf;
                    break;
                }
                size += best[q];
            }
            if (size < best[r.target]) {
                best[r.target] = size;
                via[r.target] = ri;
                changed = true;
            }
        }
    }
    std::vector<std::optional<Term>> out(a.state_count());
    auto build = [&](auto& self, StateId q) -> const Term& {
        if (!out[q]) {
            const auto& r = a.indexed_rules()[via[q]];
            std::vector<Term> kids;
            for (auto c : r.args) kids.push_back(self(self, c));
            out[q] = Term(a.symbols()[r.symbol], std::move(kids));
        }
        return *out[q];
    };
    for (StateId q = 0; q < a.state_count(); ++q)
        if (best[q] != kInf) build(build, q);
    return out;
}

TreeAutomaton product(const TreeAutomaton& a, const TreeAutomaton& b) {
    if (!(a.alphabet() == b.alphabet()))
        throw AlphabetMismatch("product of automata over different alphabets");
    auto pair_name = [&](StateId p, StateId q) {
        return "(" + a.state_name(p) + "," + b.state_name(q) + ")";
    };
    const std::size_t nb = b.state_count();
    std::vector<bool> seen(a.state_count() * nb, false);
    std::vector<Rule> rules;
    std::vector<std::string> states;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < a.symbols().size(); ++s) {
            auto sym_b = b.symbol_id(a.symbols()[s]);
            for (auto ra : a.rules_with_symbol(s)) {
                const auto& x = a.indexed_rules()[ra];
                for (auto rb : b.rules_with_symbol(*sym_b)) {
                    const auto& y = b.indexed_rules()[rb];
                    bool ok = true;
                    for (std::size_t i = 0; ok && i < x.args.size(); ++i)
                        ok = seen[x.args[i] * nb + y.args[i]];
                    if (!ok) continue;
                    auto target = x.target * nb + y.target;
                    Rule rule{a.symbols()[s], {}, pair_name(x.target, y.target)};
                    for (std::size_t i = 0; i < x.args.size(); ++i)
                        rule.args.push_back(pair_name(x.args[i], y.args[i]));
                    rules.push_back(std::move(rule));
                    if (!seen[target]) {
                        seen[target] = true;
                        states.push_back(pair_name(x.target, y.target));
                        changed = true;
                    }
                }
            }
        }
    }
    std::vector<std::string> final_states;
    for (const auto& p : a.final_states())
        for (const auto& q : b.final_states())
            if (seen[a.state_id(p) * nb + b.state_id(q)])
                final_states.push_back("(" + p + "," + q + ")");
    return TreeAutomaton(a.alphabet(), std::move(states), std::move(rules),
                         std::move(final_states));
}

TreeAutomaton to_unique_final(const TreeAutomaton& a) {
    std::string fresh = "qf";
    for (std::size_t i = 1; a.find_state(fresh); ++i) fresh = "qf_" + std::to_string(i);
    auto states = a.states();
    states.push_back(fresh);
    auto rules = a.rules();
    for (const auto& r : a.rules())
        if (a.is_final(a.state_id(r.target))) rules.push_back(Rule{r.symbol, r.args, fresh});
    return TreeAutomaton(a.alphabet(), std::move(states), std::move(rules), {fresh});
}

TreeAutomaton trim(const TreeAutomaton& a) {
    auto productive = productive_states(a);
    std::vector<bool> useful(a.state_count(), false);
    for (StateId q = 0; q < a.state_count(); ++q) useful[q] = a.is_final(q) && productive[q];
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : a.indexed_rules()) {
            if (!useful[r.target]) continue;
            if (!std::all_of(r.args.begin(), r.args.end(), [&](StateId q) { return productive[q]; }))
                continue;
            for (auto q : r.args)
                if (!useful[q]) useful[q] = changed = true;
        }
    }
    std::vector<std::string> states;
    for (StateId q = 0; q < a.state_count(); ++q)
        if (useful[q] || a.is_final(q)) states.push_back(a.state_name(q));
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < a.rules().size(); ++i) {
        const auto& r = a.indexed_rules()[i];
        if (useful[r.target] &&
            std::all_of(r.args.begin(), r.args.end(), [&](StateId q) { return useful[q]; }))
            rules.push_back(a.rules()[i]);
    }
    return TreeAutomaton(a.alphabet(), std::move(states), std::move(rules), a.final_states());
}

TreeAutomaton rename_states(const TreeAutomaton& a,
                            const std::function<std::string(const std::string&)>& rename) {
    std::vector<std::string> states;
    for (const auto& q : a.states()) states.push_back(rename(q));
    std::vector<Rule> rules;
    for (const auto& r : a.rules()) {
        Rule copy{r.symbol, {}, rename(r.target)};
        for (const auto& q : r.args) copy.args.push_back(rename(q));
        rules.push_back(std::move(copy));
    }
    std::vector<std::string> final_states;
    for (const auto& q : a.final_states()) final_states.push_back(rename(q));
    TreeAutomaton out(a.alphabet(), std::move(states), std::move(rules), std::move(final_states));
    if (out.state_count() != a.state_count())
        throw std::invalid_argument("state renaming is not injective");
    return out;
}

}  // namespace taged
