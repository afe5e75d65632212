#include "taged/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "taged/error.hpp"
#include "taged/term.hpp"

namespace taged {

Digraph::Digraph(std::vector<std::string> vertices,
                 std::vector<std::pair<std::string, std::string>> edges)
    : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    for (const auto& v : vertices_)
        if (!is_identifier(v)) throw std::invalid_argument("bad vertex name '" + v + "'");
    succ_.resize(vertices_.size());
    adj_.assign(vertices_.size() * vertices_.size(), false);
    for (auto& e : edges) {
        auto from = index_of(e.first);
        auto to = index_of(e.second);
        if (edges_.insert(std::move(e)).second) {
            succ_[from].push_back(to);
            adj_[from * vertices_.size() + to] = true;
        }
    }
    for (auto& s : succ_) std::sort(s.begin(), s.end());
}

std::size_t Digraph::index_of(const std::string& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v)
        throw std::invalid_argument("edge endpoint '" + v + "' is not a vertex");
    return static_cast<std::size_t>(it - vertices_.begin());
}

namespace {

std::vector<std::string> numbered_vertices(std::size_t n) {
    std::vector<std::string> vs;
    for (std::size_t i = 1; i <= n; ++i) vs.push_back(std::to_string(i));
    return vs;
}

void check_vertex_cap(const Digraph& g, const Limits& limits) {
    if (g.vertex_count() > limits.max_vertices)
        throw ResourceLimit("graph has " + std::to_string(g.vertex_count()) +
                            " vertices, cap is " + std::to_string(limits.max_vertices) +
                            " (--max-vertices)");
}

}  // namespace

Digraph random_digraph(std::size_t n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    auto vs = numbered_vertices(n);
    std::vector<std::pair<std::string, std::string>> es;
    for (const auto& u : vs)
        for (const auto& v : vs)
            if (coin(rng)) es.emplace_back(u, v);
    return Digraph(std::move(vs), std::move(es));
}

Digraph digraph_from_mask(std::size_t n, std::uint64_t mask) {
    auto vs = numbered_vertices(n);
    std::vector<std::pair<std::string, std::string>> es;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> (i * n + j) & 1U) es.emplace_back(std::to_string(i + 1), std::to_string(j + 1));
    return Digraph(std::move(vs), std::move(es));
}

WalkCountTable walk_count_table(const Digraph& g, Execution exec) {
    const std::size_t n = g.vertex_count();
    WalkCountTable table(n);
    for (std::size_t u = 0; u < n; ++u) table.at(1, u, u) = 1;
    const auto& succ = g.successors();
    const auto rows = static_cast<std::ptrdiff_t>(n);
    for (std::size_t k = 1; k < n; ++k) {
        auto extend_row = [&](std::size_t u) {
            for (std::size_t v = 0; v < n; ++v) {
                BigInt sum = 0;
                for (auto w : succ[u]) sum += table.at(k, w, v);
                table.at(k + 1, u, v) = std::move(sum);
            }
        };
        if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t u = 0; u < rows; ++u) extend_row(static_cast<std::size_t>(u));
        } else {
            for (std::ptrdiff_t u = 0; u < rows; ++u) extend_row(static_cast<std::size_t>(u));
        }
    }
    return table;
}

BigInt count_full_walks(const Digraph& g, Execution exec) {
    const std::size_t n = g.vertex_count();
    if (n == 0) return 0;
    auto table = walk_count_table(g, exec);
    BigInt total = 0;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) total += table.at(n, u, v);
    return total;
}

std::vector<Walk> enumerate_full_walks(const Digraph& g, const Limits& limits) {
    check_vertex_cap(g, limits);
    const std::size_t n = g.vertex_count();
    if (count_full_walks(g) > limits.max_buckets)
        throw ResourceLimit("more than " + std::to_string(limits.max_buckets) +
                            " full walks (--max-buckets)");
    std::vector<Walk> out;
    std::vector<std::size_t> path;
    auto extend = [&](auto& self) -> void {
        if (path.size() == n) {
            Walk w;
            for (auto i : path) w.push_back(g.vertices()[i]);
            out.push_back(std::move(w));
            return;
        }
        for (auto next : g.successors()[path.back()]) {
            path.push_back(next);
            self(self);
            path.pop_back();
        }
    };
    for (std::size_t start = 0; start < n; ++start) {
        path.assign(1, start);
        extend(extend);
    }
    return out;
}

namespace {

template <class Visit>
void for_each_hamiltonian(const Digraph& g, const Limits& limits, Visit&& visit) {
    check_vertex_cap(g, limits);
    std::vector<std::size_t> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    if (perm.empty()) return;
    do {
        bool ok = true;
        for (std::size_t i = 0; ok && i + 1 < perm.size(); ++i)
            ok = g.adjacent(perm[i], perm[i + 1]);
        if (ok && !visit(perm)) return;
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

std::optional<Walk> find_hamiltonian_path(const Digraph& g, const Limits& limits) {
    std::optional<Walk> found;
    for_each_hamiltonian(g, limits, [&](const std::vector<std::size_t>& perm) {
        Walk w;
        for (auto i : perm) w.push_back(g.vertices()[i]);
        found = std::move(w);
        return false;
    });
    return found;
}

bool has_hamiltonian_path(const Digraph& g, const Limits& limits) {
    return find_hamiltonian_path(g, limits).has_value();
}

std::size_t count_hamiltonian_paths(const Digraph& g, const Limits& limits) {
    std::size_t count = 0;
    for_each_hamiltonian(g, limits, [&](const std::vector<std::size_t>&) {
        ++count;
        return true;
    });
    return count;
}

}  // namespace taged
