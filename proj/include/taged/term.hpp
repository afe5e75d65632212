#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace taged {

struct Symbol {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(const Symbol&, const Symbol&) = default;
    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// True iff `name` matches [A-Za-z0-9_]+.
bool is_identifier(std::string_view name);

class RankedAlphabet {
public:
    RankedAlphabet() = default;
    RankedAlphabet(std::initializer_list<Symbol> symbols);

    /// Throws AlphabetMismatch if `s.name` is already declared with another arity.
    void add(const Symbol& s);
    bool contains(const Symbol& s) const;
    std::optional<Symbol> find(std::string_view name) const;
    /// Symbols ordered by name.
    std::vector<Symbol> symbols() const;
    std::size_t size() const { return arities_.size(); }
    std::size_t max_arity() const;

    /// Union of two alphabets; throws AlphabetMismatch on an arity clash.
    static RankedAlphabet merge(const RankedAlphabet& a, const RankedAlphabet& b);

    friend bool operator==(const RankedAlphabet&, const RankedAlphabet&) = default;

private:
    std::map<std::string, std::size_t, std::less<>> arities_;
};

/// Path from the root; child indices are 1-based. The empty path is the root.
class Position {
public:
    Position() = default;
    explicit Position(std::vector<std::size_t> path);

    std::span<const std::size_t> path() const { return path_; }
    bool is_root() const { return path_.empty(); }
    std::size_t depth() const { return path_.size(); }
    Position child(std::size_t index) const;
    /// True iff `*this` is a prefix of `other` (including equality).
    bool is_prefix_of(const Position& other) const;

    /// Dot-separated indices ("1.2"); the root prints as "ε".
    std::string to_string() const;
    /// Accepts "ε", "" or dot-separated positive integers.
    static Position parse(std::string_view text);

    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;

private:
    std::vector<std::size_t> path_;
};

/// Immutable ranked tree. Copies share structure.
class Term {
public:
    /// Throws std::invalid_argument if children.size() != root.arity.
    Term(Symbol root, std::vector<Term> children = {});
    static Term constant(std::string name) { return Term(Symbol{std::move(name), 0}); }

    const Symbol& symbol() const { return node_->symbol; }
    const std::vector<Term>& children() const { return node_->children; }
    bool is_leaf() const { return node_->children.empty(); }
    /// Number of nodes.
    std::size_t size() const { return node_->size; }
    std::size_t hash() const { return node_->hash; }

    std::string to_string() const;

    friend bool operator==(const Term& a, const Term& b);
    /// Canonical order: root name, then arity, then children lexicographically.
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);

private:
    struct Node {
        Symbol symbol;
        std::vector<Term> children;
        std::size_t size;
        std::size_t hash;
    };
    std::shared_ptr<const Node> node_;
};

/// Orders by node count first, then canonically.
struct SizeThenCanonical {
    bool operator()(const Term& a, const Term& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Pre-order (root first, children left to right).
std::vector<Position> positions(const Term& t);
const Term& subterm_at(const Term& t, const Position& at);
Term replace_at(const Term& t, const Position& at, const Term& replacement);
/// Occurrences of the constant `s` in `t`.
std::size_t count_leaves(const Term& t, const Symbol& s);
/// Throws AlienSymbol naming the first symbol of `t` not declared in `alphabet`.
void check_alphabet(const Term& t, const RankedAlphabet& alphabet);

/// Holes are fresh constants; every hole named in `fillers` is replaced.
Term instantiate(const Term& context, const std::map<std::string, Term, std::less<>>& fillers);

inline constexpr std::string_view kCombSymbol = "h";
/// Constant naming vertex `v` in comb terms: "A_<v>".
std::string vertex_constant(std::string_view vertex);
Symbol comb_symbol();

/// [w_k, ..., w_0] becomes h(A_{w_k}, h(..., h(A_{w_1}, A_{w_0}))); a single
/// vertex is the bare constant. Throws UnknownVertex if some A_v is missing
/// from `alphabet`, std::invalid_argument on an empty sequence.
Term comb_encode(std::span<const std::string> vertices, const RankedAlphabet& alphabet);
/// Inverse of comb_encode; absent if `t` is not a right spine of h nodes
/// whose left children (and final leaf) are vertex constants.
std::optional<std::vector<std::string>> comb_decode(const Term& t);

}  // namespace taged
