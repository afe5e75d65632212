#include "taged/reduction.hpp"

#include <array>
#include <algorithm>
#include <stdexcept>

#include "taged/error.hpp"

namespace taged {

namespace {

const Symbol kF{"f", 2};
const Symbol kG{"g", 3};
const Symbol kA{"A", 0};

std::string am_state(std::size_t i) { return "am.q" + std::to_string(i); }
std::string pg_state(const std::string& w, std::size_t i) {
    return "pg.q_" + w + "_" + std::to_string(i);
}

/// Bits of m, most significant first.
std::vector<bool> bits_of(const BigInt& m) {
    std::vector<bool> bits;
    for (BigInt x = m; x > 0; x >>= 1) bits.push_back(static_cast<bool>(x & 1));
    std::reverse(bits.begin(), bits.end());
    return bits;
}

std::size_t to_size(const BigInt& x, const char* what, std::size_t cap, const char* flag) {
    if (x > cap)
        throw ResourceLimit(std::string(what) + " " + x.str() + " exceeds cap " +
                            std::to_string(cap) + " (" + flag + ")");
    return x.convert_to<std::size_t>();
}

}  // namespace

std::size_t bit_length(const BigInt& m) { return bits_of(m).size(); }

RankedAlphabet counter_alphabet() { return RankedAlphabet{kF, kG, kA}; }

RankedAlphabet comb_alphabet(const Digraph& g) {
    RankedAlphabet out{comb_symbol()};
    for (const auto& v : g.vertices()) out.add({vertex_constant(v), 0});
    return out;
}

TreeAutomaton build_a_m(const BigInt& m) {
    if (m < 1) throw DomainError("A_m needs m >= 1, got " + m.str());
    const auto bits = bits_of(m);
    const std::size_t k = bits.size();
    std::vector<std::string> states;
    for (std::size_t i = 1; i <= k; ++i) states.push_back(am_state(i));
    std::vector<Rule> rules{{kA, {}, am_state(1)}};
    for (std::size_t i = 1; i < k; ++i) {
        if (bits[i])
            rules.push_back({kG, {am_state(i), am_state(i), am_state(1)}, am_state(i + 1)});
        else
            rules.push_back({kF, {am_state(i), am_state(i)}, am_state(i + 1)});
    }
    return TreeAutomaton(counter_alphabet(), std::move(states), std::move(rules), {am_state(k)});
}

BigInt a_m_term_size(const BigInt& m) {
    if (m < 1) throw DomainError("A_m needs m >= 1, got " + m.str());
    const auto bits = bits_of(m);
    BigInt size = 1;
    for (std::size_t i = 1; i < bits.size(); ++i) size = 2 * size + (bits[i] ? 2 : 1);
    return size;
}

TreeAutomaton build_p_g(const Digraph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0) throw PreconditionViolated("P_G needs at least one vertex");
    std::vector<std::string> states;
    std::vector<Rule> rules;
    std::vector<std::string> final_states;
    for (const auto& w : g.vertices()) {
        for (std::size_t i = 0; i < n; ++i) states.push_back(pg_state(w, i));
        rules.push_back({Symbol{vertex_constant(w), 0}, {}, pg_state(w, 0)});
        final_states.push_back(pg_state(w, n - 1));
    }
    // h(q_v^0, q_w^i) -> q_v^{i+1} for every edge (w, v).
    for (const auto& [w, v] : g.edges())
        for (std::size_t i = 0; i + 2 <= n; ++i)
            rules.push_back({comb_symbol(), {pg_state(v, 0), pg_state(w, i)}, pg_state(v, i + 1)});
    return TreeAutomaton(comb_alphabet(g), std::move(states), std::move(rules),
                         std::move(final_states));
}

TreeAutomaton build_c_g(const Digraph& g) {
    if (g.vertex_count() == 0) throw PreconditionViolated("C_G needs at least one vertex");
    const std::string p0 = "cg.p0", p1 = "cg.p1", pf = "cg.pf";
    const auto h = comb_symbol();
    std::vector<std::string> states{p0, p1, pf};
    std::vector<Rule> rules{{h, {p0, p0}, p1}, {h, {p0, p1}, p1}, {h, {p0, pf}, pf}};
    for (const auto& w : g.vertices()) {
        const std::string pw = "cg.p_" + w, ppw = "cg.pp_" + w;
        const Symbol leaf{vertex_constant(w), 0};
        states.push_back(pw);
        states.push_back(ppw);
        rules.push_back({leaf, {}, p0});
        rules.push_back({leaf, {}, pw});
        rules.push_back({leaf, {}, ppw});
        rules.push_back({h, {pw, p0}, ppw});
        rules.push_back({h, {pw, ppw}, pf});
        rules.push_back({h, {p0, ppw}, ppw});
        rules.push_back({h, {pw, p1}, ppw});
    }
    return TreeAutomaton(comb_alphabet(g), std::move(states), std::move(rules), {pf});
}

TreeAutomaton build_b_g(const TreeAutomaton& c_g, const TreeAutomaton& p_g) {
    auto b = trim(to_unique_final(product(c_g, p_g)));
    return rename_states(b, [](const std::string& q) { return "bg." + q; });
}

TreeAutomaton build_b_g(const Digraph& g) { return build_b_g(build_c_g(g), build_p_g(g)); }

ReductionBundle build_d_g(const Digraph& g) {
    if (g.vertex_count() < 2)
        throw PreconditionViolated("graph has " + std::to_string(g.vertex_count()) +
                                   " vertex: trivially HAMILTONIAN, no reduction built");
    BigInt m = count_full_walks(g);
    if (m == 0)
        throw PreconditionViolated("m_G = 0 (no walk on |V| vertices): trivially NO-HAMILTONIAN, "
                                   "no reduction built");

    ReductionBundle bundle{g, m, build_a_m(m), build_p_g(g), build_c_g(g), {}, {}};
    bundle.b_g = build_b_g(bundle.c_g, bundle.p_g);

    const auto& b = bundle.b_g;
    const std::string b_final = b.final_states().front();
    const std::string slot(kSlotState);
    for (const auto& r : b.rules())
        if (std::find(r.args.begin(), r.args.end(), b_final) != r.args.end())
            throw std::logic_error("B_G final state occurs as a rule argument: " + r.to_string());

    auto glue = [&](const std::string& q) { return q == b_final || q == am_state(1) ? slot : q; };
    std::vector<std::string> states;
    std::vector<Rule> rules;
    for (const TreeAutomaton* part : std::array<const TreeAutomaton*, 2>{&b, &bundle.a_m}) {
        for (const auto& q : part->states()) states.push_back(glue(q));
        for (const auto& r : part->rules()) {
            if (part == &bundle.a_m && r.symbol == kA) continue;
            Rule copy{r.symbol, {}, glue(r.target)};
            for (const auto& q : r.args) copy.args.push_back(glue(q));
            rules.push_back(std::move(copy));
        }
    }
    TreeAutomaton base(RankedAlphabet::merge(bundle.a_m.alphabet(), b.alphabet()), std::move(states),
                       std::move(rules), {glue(bundle.a_m.final_states().front())});
    bundle.d_g = Taged(std::move(base), {}, {{slot, slot}});
    return bundle;
}

std::size_t d_g_state_bound(std::size_t vertices, const BigInt& m_g) {
    return vertices * vertices + 3 * vertices + 4 + bit_length(m_g);
}

std::size_t d_g_rule_bound(std::size_t vertices, std::size_t edges, const BigInt& m_g) {
    const std::size_t stretch = vertices ? vertices - 1 : 0;
    return 2 * (3 * vertices + edges * stretch * (5 * vertices + 2)) + bit_length(m_g);
}

std::size_t d_g_cubic_state_bound(std::size_t vertices, const BigInt& m_g) {
    const std::size_t stretch = vertices ? vertices - 1 : 0;
    return 3 * vertices + stretch * (vertices * vertices + 2 * vertices) + 1 + bit_length(m_g);
}

BigInt search_budget(const BigInt& m_g, std::size_t vertices) {
    return (a_m_term_size(m_g) - m_g) + m_g * (2 * vertices - 1);
}

Decision reduce_and_decide(const Digraph& g, DecideMethod method, const Limits& limits) {
    const std::size_t n = g.vertex_count();
    if (n == 0) throw PreconditionViolated("graph has no vertices");
    if (n > limits.max_vertices)
        throw ResourceLimit("graph has " + std::to_string(n) + " vertices, cap is " +
                            std::to_string(limits.max_vertices) + " (--max-vertices)");
    Decision d;
    if (n == 1) {
        d.hamiltonian = true;
        d.m_g = 1;
        d.shortcut = "single vertex";
        return d;
    }
    d.m_g = count_full_walks(g);
    if (d.m_g == 0) {
        d.shortcut = "no walk on |V| vertices";
        return d;
    }
    to_size(d.m_g, "m_G", limits.max_buckets, "--max-buckets");
    auto bundle = build_d_g(g);

    if (method == DecideMethod::counting) {
        auto language = enumerate_language(bundle.b_g, 2 * n - 1, limits);
        d.bg_count = language.size();
        d.hamiltonian = BigInt(language.size()) < d.m_g;
        return d;
    }
    d.budget = to_size(search_budget(d.m_g, n), "witness budget", limits.max_nodes, "--max-nodes");
    d.witness = taged_empty_bounded(bundle.d_g, *d.budget, limits);
    d.hamiltonian = !d.witness;
    return d;
}

}  // namespace taged
