#include "taged/term.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <stdexcept>

#include "taged/error.hpp"

namespace taged {

bool is_identifier(std::string_view name) {
    return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_';
    });
}

RankedAlphabet::RankedAlphabet(std::initializer_list<Symbol> symbols) {
    for (const auto& s : symbols) add(s);
}

void RankedAlphabet::add(const Symbol& s) {
    auto [it, inserted] = arities_.emplace(s.name, s.arity);
    if (!inserted && it->second != s.arity)
        throw AlphabetMismatch("symbol '" + s.name + "' declared with arities " +
                               std::to_string(it->second) + " and " + std::to_string(s.arity));
}

bool RankedAlphabet::contains(const Symbol& s) const {
    auto it = arities_.find(s.name);
    return it != arities_.end() && it->second == s.arity;
}

std::optional<Symbol> RankedAlphabet::find(std::string_view name) const {
    auto it = arities_.find(name);
    if (it == arities_.end()) return std::nullopt;
    return Symbol{it->first, it->second};
}

std::vector<Symbol> RankedAlphabet::symbols() const {
    std::vector<Symbol> out;
    out.reserve(arities_.size());
    for (const auto& [name, arity] : arities_) out.push_back({name, arity});
    return out;
}

std::size_t RankedAlphabet::max_arity() const {
    std::size_t m = 0;
    for (const auto& [_, arity] : arities_) m = std::max(m, arity);
    return m;
}

RankedAlphabet RankedAlphabet::merge(const RankedAlphabet& a, const RankedAlphabet& b) {
    RankedAlphabet out = a;
    for (const auto& s : b.symbols()) out.add(s);
    return out;
}

Position::Position(std::vector<std::size_t> path) : path_(std::move(path)) {
    for (auto i : path_)
        if (i == 0) throw InvalidPosition("position indices are 1-based");
}

Position Position::child(std::size_t index) const {
    if (index == 0) throw InvalidPosition("position indices are 1-based");
    Position p = *this;
    p.path_.push_back(index);
    return p;
}

bool Position::is_prefix_of(const Position& other) const {
    return path_.size() <= other.path_.size() &&
           std::equal(path_.begin(), path_.end(), other.path_.begin());
}

std::string Position::to_string() const {
    if (path_.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < path_.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(path_[i]);
    }
    return out;
}

Position Position::parse(std::string_view text) {
    if (text.empty() || text == "ε") return {};
    std::vector<std::size_t> path;
    while (true) {
        auto dot = text.find('.');
        auto part = text.substr(0, dot);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size() || value == 0)
            throw ParseError("bad position '" + std::string(text) + "'");
        path.push_back(value);
        if (dot == std::string_view::npos) break;
        text.remove_prefix(dot + 1);
    }
    return Position(std::move(path));
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term::Term(Symbol root, std::vector<Term> children) {
    if (children.size() != root.arity)
        throw std::invalid_argument("symbol '" + root.name + "' has arity " +
                                    std::to_string(root.arity) + " but got " +
                                    std::to_string(children.size()) + " children");
    std::size_t size = 1;
    std::size_t h = mix(std::hash<std::string>{}(root.name), root.arity);
    for (const auto& c : children) {
        size += c.size();
        h = mix(h, c.hash());
    }
    node_ = std::make_shared<const Node>(Node{std::move(root), std::move(children), size, h});
}

std::string Term::to_string() const {
    std::string out;
    auto emit = [&](auto& self, const Term& t) -> void {
        out += t.symbol().name;
        if (t.is_leaf()) return;
        out += '(';
        for (std::size_t i = 0; i < t.children().size(); ++i) {
            if (i) out += ',';
            self(self, t.children()[i]);
        }
        out += ')';
    };
    emit(emit, *this);
    return out;
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.size() != b.size() || a.symbol() != b.symbol()) return false;
    return a.children() == b.children();
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.symbol().name <=> b.symbol().name; c != 0) return c;
    if (auto c = a.symbol().arity <=> b.symbol().arity; c != 0) return c;
    for (std::size_t i = 0; i < a.children().size(); ++i)
        if (auto c = a.children()[i] <=> b.children()[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::vector<Position> positions(const Term& t) {
    std::vector<Position> out;
    out.reserve(t.size());
    auto walk = [&](auto& self, const Term& u, const Position& at) -> void {
        out.push_back(at);
        for (std::size_t i = 0; i < u.children().size(); ++i)
            self(self, u.children()[i], at.child(i + 1));
    };
    walk(walk, t, Position{});
    return out;
}

const Term& subterm_at(const Term& t, const Position& at) {
    const Term* cur = &t;
    for (auto i : at.path()) {
        if (i > cur->children().size())
            throw InvalidPosition("position " + at.to_string() + " not in " + t.to_string());
        cur = &cur->children()[i - 1];
    }
    return *cur;
}

Term replace_at(const Term& t, const Position& at, const Term& replacement) {
    auto rebuild = [&](auto& self, const Term& u, std::size_t depth) -> Term {
        if (depth == at.depth()) return replacement;
        auto i = at.path()[depth];
        if (i > u.children().size())
            throw InvalidPosition("position " + at.to_string() + " not in " + t.to_string());
        std::vector<Term> kids = u.children();
        kids[i - 1] = self(self, kids[i - 1], depth + 1);
        return Term(u.symbol(), std::move(kids));
    };
    return rebuild(rebuild, t, 0);
}

std::size_t count_leaves(const Term& t, const Symbol& s) {
    if (t.is_leaf()) return t.symbol() == s ? 1 : 0;
    std::size_t n = 0;
    for (const auto& c : t.children()) n += count_leaves(c, s);
    return n;
}

void check_alphabet(const Term& t, const RankedAlphabet& alphabet) {
    if (!alphabet.contains(t.symbol()))
        throw AlienSymbol("symbol '" + t.symbol().name + "/" + std::to_string(t.symbol().arity) +
                          "' is not in the alphabet");
    for (const auto& c : t.children()) check_alphabet(c, alphabet);
}

Term instantiate(const Term& context, const std::map<std::string, Term, std::less<>>& fillers) {
    if (context.is_leaf()) {
        auto it = fillers.find(context.symbol().name);
        return it == fillers.end() ? context : it->second;
    }
    std::vector<Term> kids;
    kids.reserve(context.children().size());
    for (const auto& c : context.children()) kids.push_back(instantiate(c, fillers));
    return Term(context.symbol(), std::move(kids));
}

std::string vertex_constant(std::string_view vertex) { return "A_" + std::string(vertex); }

Symbol comb_symbol() { return Symbol{std::string(kCombSymbol), 2}; }

Term comb_encode(std::span<const std::string> vertices, const RankedAlphabet& alphabet) {
    if (vertices.empty()) throw std::invalid_argument("comb_encode needs at least one vertex");
    auto leaf = [&](const std::string& v) {
        Symbol s{vertex_constant(v), 0};
        if (!alphabet.contains(s)) throw UnknownVertex("alphabet has no constant " + s.name);
        return Term(std::move(s));
    };
    if (vertices.size() > 1 && !alphabet.contains(comb_symbol()))
        throw AlienSymbol("alphabet has no binary symbol h");
    Term acc = leaf(vertices.back());
    for (std::size_t i = vertices.size() - 1; i-- > 0;)
        acc = Term(comb_symbol(), {leaf(vertices[i]), acc});
    return acc;
}

std::optional<std::vector<std::string>> comb_decode(const Term& t) {
    auto vertex_of = [](const Term& u) -> std::optional<std::string> {
        const auto& name = u.symbol().name;
        if (!u.is_leaf() || name.size() < 3 || name.compare(0, 2, "A_") != 0) return std::nullopt;
        return name.substr(2);
    };
    std::vector<std::string> out;
    const Term* cur = &t;
    while (cur->symbol() == comb_symbol()) {
        auto v = vertex_of(cur->children()[0]);
        if (!v) return std::nullopt;
        out.push_back(std::move(*v));
        cur = &cur->children()[1];
    }
    auto last = vertex_of(*cur);
    if (!last) return std::nullopt;
    out.push_back(std::move(*last));
    return out;
}

}  // namespace taged
