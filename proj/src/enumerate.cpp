#include <algorithm>
#include <atomic>

#include "taged/automaton.hpp"
#include "taged/error.hpp"

namespace taged {

std::vector<Term> TermBuckets::stream(StateId q, std::size_t max) const {
    std::vector<Term> out;
    const auto& buckets = by_state[q];
    for (std::size_t s = 1; s <= std::min(max, max_size); ++s)
        out.insert(out.end(), buckets[s].begin(), buckets[s].end());
    return out;
}

namespace {

/// Terms of exactly `size` nodes reaching `q`, given complete buckets for
/// every smaller size. Stops early once `budget` terms were produced.
std::vector<Term> fill_bucket(const TreeAutomaton& a, const TermBuckets& tb,
                              const std::vector<std::vector<std::size_t>>& nonempty, StateId q,
                              std::size_t size, std::size_t budget, bool& overflow) {
    std::vector<Term> out;
    for (auto ri : a.rules_into(q)) {
        const auto& r = a.indexed_rules()[ri];
        const auto& sym = a.symbols()[r.symbol];
        if (r.args.empty()) {
            if (size == 1) out.emplace_back(sym);
            continue;
        }
        const std::size_t n = r.args.size();
        if (size < n + 1) continue;
        std::vector<std::size_t> split(n, 0);
        std::vector<const Term*> pick(n, nullptr);

        // Choose a size for each argument among its non-empty buckets, then
        // the cartesian product of the chosen buckets.
        auto product = [&](auto& self, std::size_t i) -> void {
            if (overflow) return;
            if (i == n) {
                std::vector<Term> kids;
                kids.reserve(n);
                for (auto* p : pick) kids.push_back(*p);
                out.emplace_back(sym, std::move(kids));
                if (out.size() > budget) overflow = true;
                return;
            }
            for (const auto& t : tb.by_state[r.args[i]][split[i]]) {
                pick[i] = &t;
                self(self, i + 1);
                if (overflow) return;
            }
        };
        auto choose = [&](auto& self, std::size_t i, std::size_t left) -> void {
            if (i + 1 == n) {
                const auto& sizes = nonempty[r.args[i]];
                if (std::binary_search(sizes.begin(), sizes.end(), left)) {
                    split[i] = left;
                    product(product, 0);
                }
                return;
            }
            for (auto s : nonempty[r.args[i]]) {
                if (s + (n - i - 1) > left) break;
                split[i] = s;
                self(self, i + 1, left - s);
                if (overflow) return;
            }
        };
        choose(choose, 0, size - 1);
        if (overflow) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

TermBuckets build_term_buckets(const TreeAutomaton& a, std::size_t max_size,
                               const std::vector<bool>& include, std::size_t max_entries,
                               Execution exec) {
    TermBuckets tb;
    tb.max_size = max_size;
    tb.by_state.assign(a.state_count(), std::vector<std::vector<Term>>(max_size + 1));
    std::vector<std::vector<std::size_t>> nonempty(a.state_count());
    std::vector<StateId> work;
    for (StateId q = 0; q < a.state_count(); ++q)
        if (include[q]) work.push_back(q);

    for (std::size_t size = 1; size <= max_size; ++size) {
        const std::size_t room = max_entries - tb.total;
        std::atomic<bool> overflow_any{false};
        const auto count = static_cast<std::ptrdiff_t>(work.size());
        if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
            for (std::ptrdiff_t i = 0; i < count; ++i) {
                bool overflow = false;
                auto q = work[static_cast<std::size_t>(i)];
                tb.by_state[q][size] = fill_bucket(a, tb, nonempty, q, size, room, overflow);
                if (overflow) overflow_any = true;
            }
        } else {
            for (std::ptrdiff_t i = 0; i < count; ++i) {
                bool overflow = false;
                auto q = work[static_cast<std::size_t>(i)];
                tb.by_state[q][size] = fill_bucket(a, tb, nonempty, q, size, room, overflow);
                if (overflow) overflow_any = true;
            }
        }
        for (auto q : work) {
            if (tb.by_state[q][size].empty()) continue;
            nonempty[q].push_back(size);
            tb.total += tb.by_state[q][size].size();
        }
        if (overflow_any || tb.total > max_entries)
            throw ResourceLimit("term buckets exceed " + std::to_string(max_entries) +
                                " entries at size " + std::to_string(size) + " (--max-buckets)");
    }
    return tb;
}

std::vector<Term> enumerate_language(const TreeAutomaton& a, std::size_t max_nodes,
                                     const Limits& limits, Execution exec) {
    if (max_nodes == 0) return {};
    if (max_nodes > limits.max_nodes)
        throw ResourceLimit("enumeration bound " + std::to_string(max_nodes) + " exceeds " +
                            std::to_string(limits.max_nodes) + " nodes (--max-nodes)");
    auto trimmed = trim(a);
    std::vector<bool> include(trimmed.state_count(), true);
    auto tb = build_term_buckets(trimmed, max_nodes, include, limits.max_buckets, exec);
    std::vector<Term> out;
    for (const auto& q : trimmed.final_states()) {
        auto s = tb.stream(trimmed.state_id(q), max_nodes);
        out.insert(out.end(), s.begin(), s.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace taged
