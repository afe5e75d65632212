#include "taged/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "taged/error.hpp"

namespace taged {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        std::size_t j = i;
        while (j < s.size() && !is_space(s[j])) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    Term parse() {
        Term t = term();
        skip();
        if (pos_ != text_.size()) fail("trailing input");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("term: " + what + " at offset " + std::to_string(pos_) + " in '" +
                         std::string(text_) + "'");
    }
    void skip() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string identifier() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_identifier(text_.substr(pos_, 1))) ++pos_;
        if (pos_ == start) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }
    Term term() {
        std::string name = identifier();
        std::vector<Term> kids;
        if (eat('(')) {
            if (!eat(')')) {
                do kids.push_back(term());
                while (eat(','));
                if (!eat(')')) fail("expected ')' or ','");
            }
        }
        const std::size_t arity = kids.size();
        return Term(Symbol{std::move(name), arity}, std::move(kids));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

struct Line {
    std::size_t number;
    std::string key;
    std::string_view body;
};

/// Non-empty lines split into `key: body`, comments stripped.
std::vector<Line> keyed_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError("expected 'key: value'", number);
        out.push_back({number, std::string(trim(line.substr(0, colon))), trim(line.substr(colon + 1))});
    }
    return out;
}

Symbol parse_symbol_decl(const std::string& token, std::size_t line) {
    auto slash = token.find('/');
    if (slash == std::string::npos) throw ParseError("expected name/arity, got '" + token + "'", line);
    std::string name = token.substr(0, slash);
    std::string_view digits(token.data() + slash + 1, token.size() - slash - 1);
    std::size_t arity = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), arity);
    if (!is_identifier(name) || digits.empty() || ec != std::errc{} ||
        ptr != digits.data() + digits.size())
        throw ParseError("bad symbol declaration '" + token + "'", line);
    return {std::move(name), arity};
}

/// `sym(a,b) -> q`; arguments split on commas outside parentheses.
Rule parse_rule(std::string_view body, const RankedAlphabet& alphabet, std::size_t line) {
    std::size_t i = 0;
    while (i < body.size() && is_identifier(body.substr(i, 1))) ++i;
    std::string name(body.substr(0, i));
    if (name.empty()) throw ParseError("rule must start with a symbol", line);
    std::string_view rest = trim(body.substr(i));
    std::vector<std::string> args;
    if (!rest.empty() && rest.front() == '(') {
        int depth = 0;
        std::size_t start = 1, j = 0;
        for (; j < rest.size(); ++j) {
            char c = rest[j];
            if (c == '(') ++depth;
            if (c == ')' && --depth == 0) break;
            if (c == ',' && depth == 1) {
                args.emplace_back(trim(rest.substr(start, j - start)));
                start = j + 1;
            }
        }
        if (j == rest.size()) throw ParseError("unbalanced parentheses in rule", line);
        auto last = trim(rest.substr(start, j - start));
        if (!last.empty() || !args.empty()) args.emplace_back(last);
        rest = trim(rest.substr(j + 1));
    }
    if (rest.substr(0, 2) != "->") throw ParseError("expected '->' in rule", line);
    std::string target(trim(rest.substr(2)));
    for (const auto& q : args)
        if (!is_state_name(q)) throw ParseError("bad state name '" + q + "' in rule", line);
    if (!is_state_name(target)) throw ParseError("bad target state '" + target + "'", line);
    auto sym = alphabet.find(name);
    if (!sym) throw ParseError("rule symbol '" + name + "' is not in the alphabet", line);
    if (sym->arity != args.size())
        throw ParseError("symbol '" + name + "' has arity " + std::to_string(sym->arity) + " but rule gives " +
                             std::to_string(args.size()) + " arguments",
                         line);
    return {*sym, std::move(args), std::move(target)};
}

struct AutomatonParts {
    RankedAlphabet alphabet;
    std::vector<std::string> states, final_states;
    std::vector<Rule> rules;
    std::vector<StatePair> eq, neq;
};

AutomatonParts parse_parts(std::string_view text, bool allow_constraints) {
    auto lines = keyed_lines(text);
    AutomatonParts parts;
    for (const auto& l : lines)
        if (l.key == "alphabet")
            for (const auto& tok : split_ws(l.body)) {
                try {
                    parts.alphabet.add(parse_symbol_decl(tok, l.number));
                } catch (const AlphabetMismatch& e) {
                    throw ParseError(e.what(), l.number);
                }
            }
    for (const auto& l : lines) {
        if (l.key == "alphabet") continue;
        if (l.key == "states" || l.key == "final") {
            auto& into = l.key == "states" ? parts.states : parts.final_states;
            for (auto& tok : split_ws(l.body)) {
                if (!is_state_name(tok)) throw ParseError("bad state name '" + tok + "'", l.number);
                into.push_back(std::move(tok));
            }
        } else if (l.key == "rule") {
            parts.rules.push_back(parse_rule(l.body, parts.alphabet, l.number));
        } else if (allow_constraints && (l.key == "eq" || l.key == "neq")) {
            auto toks = split_ws(l.body);
            if (toks.size() != 2) throw ParseError(l.key + " expects two states", l.number);
            (l.key == "eq" ? parts.eq : parts.neq).emplace_back(toks[0], toks[1]);
        } else {
            throw ParseError("unknown key '" + l.key + "'", l.number);
        }
    }
    return parts;
}

TreeAutomaton assemble(AutomatonParts& parts) {
    try {
        return TreeAutomaton(std::move(parts.alphabet), std::move(parts.states), std::move(parts.rules),
                             std::move(parts.final_states));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += " " + s;
    return out;
}

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

TreeAutomaton parse_automaton(std::string_view text) {
    auto parts = parse_parts(text, false);
    return assemble(parts);
}

Taged parse_taged(std::string_view text) {
    auto parts = parse_parts(text, true);
    auto eq = std::move(parts.eq);
    auto neq = std::move(parts.neq);
    auto base = assemble(parts);
    try {
        return Taged(std::move(base), std::move(eq), std::move(neq));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string print_automaton(const TreeAutomaton& a) {
    std::string out = "alphabet:";
    for (const auto& s : a.alphabet().symbols()) out += " " + s.name + "/" + std::to_string(s.arity);
    out += "\nstates:" + join(a.states()) + "\n";
    out += "final:" + join(a.final_states()) + "\n";
    for (const auto& r : a.rules()) out += "rule: " + r.to_string() + "\n";
    return out;
}

std::string print_taged(const Taged& t) {
    std::string out = print_automaton(t.base());
    for (const auto& [p, q] : t.eq_constraints()) out += "eq: " + p + " " + q + "\n";
    for (const auto& [p, q] : t.neq_constraints()) out += "neq: " + p + " " + q + "\n";
    return out;
}

Digraph parse_graph(std::string_view text) {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& l : keyed_lines(text)) {
        auto toks = split_ws(l.body);
        if (l.key == "vertices") {
            for (auto& v : toks) {
                if (!is_identifier(v)) throw ParseError("bad vertex name '" + v + "'", l.number);
                vertices.push_back(std::move(v));
            }
        } else if (l.key == "edge") {
            if (toks.size() != 2) throw ParseError("edge expects two vertices", l.number);
            edges.emplace_back(toks[0], toks[1]);
        } else {
            throw ParseError("unknown key '" + l.key + "'", l.number);
        }
    }
    try {
        return Digraph(std::move(vertices), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string print_graph(const Digraph& g) {
    std::string out = "vertices:" + join(g.vertices()) + "\n";
    for (const auto& [u, v] : g.edges()) out += "edge: " + u + " " + v + "\n";
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace taged
