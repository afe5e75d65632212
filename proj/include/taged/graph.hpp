#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "taged/limits.hpp"

namespace taged {

using BigInt = boost::multiprecision::cpp_int;

using Walk = std::vector<std::string>;

/// Directed graph over opaque vertex names; self-loops allowed. Vertices are
/// kept in lexicographic order, which is the canonical order everywhere.
class Digraph {
public:
    Digraph() = default;
    /// Throws std::invalid_argument on an edge endpoint outside `vertices`
    /// or a vertex name that is not an identifier.
    Digraph(std::vector<std::string> vertices, std::vector<std::pair<std::string, std::string>> edges);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    bool has_edge(const std::string& from, const std::string& to) const {
        return edges_.contains({from, to});
    }
    /// Successor indices per vertex index.
    const std::vector<std::vector<std::size_t>>& successors() const { return succ_; }
    std::size_t index_of(const std::string& v) const;
    bool adjacent(std::size_t from, std::size_t to) const { return adj_[from * vertices_.size() + to]; }

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    std::vector<std::string> vertices_;
    std::set<std::pair<std::string, std::string>> edges_;
    std::vector<std::vector<std::size_t>> succ_;
    std::vector<bool> adj_;
};

/// Vertices "1".."n", each of the n*n ordered pairs (loops included) kept as
/// an edge with probability `density`.
Digraph random_digraph(std::size_t n, double density, std::mt19937_64& rng);
/// Vertices "1".."n"; bit i*n+j of `mask` selects edge (i+1, j+1).
Digraph digraph_from_mask(std::size_t n, std::uint64_t mask);

/// Walk counts by vertex count: at(1,u,v) = [u = v] and
/// at(k+1,u,v) = sum over edges (u,u') of at(k,u',v).
class WalkCountTable {
public:
    explicit WalkCountTable(std::size_t n) : n_(n), entries_(n * n * n) {}
    std::size_t vertex_count() const { return n_; }
    /// Number of stored entries: |V|^2 per k for k = 1..|V|.
    std::size_t size() const { return entries_.size(); }
    const BigInt& at(std::size_t k, std::size_t u, std::size_t v) const {
        return entries_[((k - 1) * n_ + u) * n_ + v];
    }
    BigInt& at(std::size_t k, std::size_t u, std::size_t v) {
        return entries_[((k - 1) * n_ + u) * n_ + v];
    }

private:
    std::size_t n_;
    std::vector<BigInt> entries_;
};

/// Fills the table with |V|-1 extensions of |V|^2 entries each. The
/// parallel kernel splits each extension over rows.
WalkCountTable walk_count_table(const Digraph& g, Execution exec = Execution::parallel);

/// m_G: walks on exactly |V| vertices (|V|-1 edges, repeats allowed).
BigInt count_full_walks(const Digraph& g, Execution exec = Execution::parallel);

/// Every full walk in lexicographic order. Throws ResourceLimit if |V| or
/// the walk count exceeds the caps.
std::vector<Walk> enumerate_full_walks(const Digraph& g, const Limits& limits = {});

/// First Hamiltonian path in lexicographic order of permutations, if any.
/// Throws ResourceLimit for |V| > limits.max_vertices.
std::optional<Walk> find_hamiltonian_path(const Digraph& g, const Limits& limits = {});
bool has_hamiltonian_path(const Digraph& g, const Limits& limits = {});
std::size_t count_hamiltonian_paths(const Digraph& g, const Limits& limits = {});

}  // namespace taged
