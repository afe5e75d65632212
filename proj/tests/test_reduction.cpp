#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "taged/error.hpp"
#include "taged/reduction.hpp"
#include "taged/text_format.hpp"
#include "taged/verify.hpp"

using namespace taged;

namespace {

Term T(std::string_view s) { return parse_term(s); }

Digraph three_cycle() { return Digraph({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"3", "1"}}); }
Digraph two_cycle_plus_one() { return Digraph({"1", "2", "3"}, {{"1", "2"}, {"2", "1"}}); }
Digraph chain() { return Digraph({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}}); }

std::set<Term> as_set(const std::vector<Term>& v) { return {v.begin(), v.end()}; }

/// C_G without h(p_w, p_1) -> p_w'.
TreeAutomaton mutated_c_g(const Digraph& g) {
    auto c = build_c_g(g);
    std::vector<Rule> rules;
    for (const auto& r : c.rules())
        if (!(r.args.size() == 2 && r.args[1] == "cg.p1" && r.args[0].starts_with("cg.p_") &&
              r.target.starts_with("cg.pp_")))
            rules.push_back(r);
    return TreeAutomaton(c.alphabet(), c.states(), rules, c.final_states());
}

}  // namespace

TEST_SUITE("reduction") {
    TEST_CASE("A_m examples") {
        auto a1 = build_a_m(1);
        CHECK(a1.rules().size() == 1);
        CHECK(enumerate_language(a1, 4) == std::vector<Term>{T("A")});
        CHECK(enumerate_language(build_a_m(2), 4) == std::vector<Term>{T("f(A,A)")});
        auto l5 = enumerate_language(build_a_m(5), 16);
        REQUIRE(l5.size() == 1);
        CHECK(l5[0] == T("g(f(A,A),f(A,A),A)"));
        CHECK(count_leaves(l5[0], {"A", 0}) == 5);
        CHECK_THROWS_AS(build_a_m(0), DomainError);
    }

    TEST_CASE("A_m shape") {
        for (int m = 1; m <= 100; ++m) {
            auto a = build_a_m(m);
            CHECK(a.state_count() == bit_length(m));
            CHECK(a.final_states().size() == 1);
            auto size = a_m_term_size(m).convert_to<std::size_t>();
            CHECK(size <= 3 * static_cast<std::size_t>(m));
            auto lang = enumerate_language(a, size);
            REQUIRE(lang.size() == 1);
            CHECK(lang[0].size() == size);
            CHECK(count_leaves(lang[0], {"A", 0}) == static_cast<std::size_t>(m));
            if (m <= 6) CHECK(oracle::language_top_down(a, size) == as_set(lang));
        }
    }

    TEST_CASE("P_G examples") {
        auto g = three_cycle();
        auto sigma = comb_alphabet(g);
        std::set<Term> want;
        for (const auto& w : std::vector<Walk>{{"3", "2", "1"}, {"1", "3", "2"}, {"2", "1", "3"}})
            want.insert(comb_encode(w, sigma));
        CHECK(as_set(enumerate_language(build_p_g(g), 16)) == want);
        CHECK(is_empty(build_p_g(Digraph({"1", "2", "3"}, {}))));
    }

    TEST_CASE("P_G language on random graphs") {
        std::mt19937_64 rng(61);
        for (int i = 0; i < 30; ++i) {
            auto g = random_digraph(3 + i % 2, 0.5, rng);
            auto sigma = comb_alphabet(g);
            std::set<Term> want;
            for (auto w : oracle::full_walks(g)) {
                std::reverse(w.begin(), w.end());
                want.insert(comb_encode(w, sigma));
            }
            const std::size_t n = g.vertex_count();
            CHECK(as_set(enumerate_language(build_p_g(g), 2 * n - 1)) == want);
            CHECK(oracle::language_top_down(build_p_g(g), 2 * n - 1) == want);
        }
    }

    TEST_CASE("C_G examples") {
        auto g = three_cycle();
        auto c = build_c_g(g);
        for (const auto* v : {"1", "2", "3"})
            CHECK(accepts(c, T(std::string("h(A_") + v + ",A_" + v + ")")));
        CHECK_FALSE(accepts(c, T("h(A_1,A_2)")));
        CHECK(accepts(c, T("h(A_1,h(A_2,A_1))")));
        CHECK(accepts(c, T("h(A_2,h(A_1,h(A_3,A_3)))")));
        CHECK_FALSE(accepts(c, T("h(A_3,h(A_2,A_1))")));
        CHECK(c.final_states() == std::vector<std::string>{"cg.pf"});
        CHECK(c.state_count() == 3 + 2 * 3);
    }

    TEST_CASE("C_G language is the combs with a repeat") {
        auto g = Digraph({"1", "2"}, {});
        auto c = build_c_g(g);
        for (const auto& t : oracle::language(c, 7)) {
            auto w = comb_decode(t);
            REQUIRE(w);
            CHECK(w->size() >= 2);
            CHECK_FALSE(oracle::distinct(*w));
        }
    }

    TEST_CASE("B_G examples") {
        CHECK(is_empty(build_b_g(three_cycle())));
        auto g = two_cycle_plus_one();
        auto sigma = comb_alphabet(g);
        std::vector<Walk> walks{{"1", "2", "1"}, {"2", "1", "2"}};
        std::set<Term> want{comb_encode(walks[0], sigma), comb_encode(walks[1], sigma)};
        auto b = build_b_g(g);
        CHECK(as_set(enumerate_language(b, 16)) == want);
        REQUIRE(b.final_states().size() == 1);
        for (const auto& r : b.rules())
            CHECK(std::find(r.args.begin(), r.args.end(), b.final_states()[0]) == r.args.end());
    }

    TEST_CASE("B_G count is walks minus Hamiltonian paths") {
        std::mt19937_64 rng(67);
        for (int i = 0; i < 20; ++i) {
            auto g = random_digraph(3 + i % 3, 0.5, rng);
            const std::size_t n = g.vertex_count();
            auto lang = enumerate_language(build_b_g(g), 2 * n - 1);
            CHECK(lang.size() == oracle::full_walks(g).size() - oracle::hamiltonian_paths(g));
        }
    }

    TEST_CASE("D_G for the 2-cycle plus an isolated vertex") {
        auto bundle = build_d_g(two_cycle_plus_one());
        CHECK(bundle.m_g == 2);
        const auto& d = bundle.d_g;
        CHECK(constraint_class(d) == ConstraintClass{0, 1});
        CHECK(d.neq_constraints() == std::vector<StatePair>{{"q1", "q1"}});
        CHECK(d.base().final_states() == std::vector<std::string>{"am.q2"});
        auto budget = search_budget(bundle.m_g, 3).convert_to<std::size_t>();
        CHECK(budget == 11);
        auto w = taged_empty_bounded(d, budget);
        REQUIRE(w);
        CHECK(w->size() <= 13);
        CHECK(taged_accepts(d, *w).accepted);
        CHECK(taged_accepts(d, T("f(h(A_1,h(A_2,A_1)),h(A_2,h(A_1,A_2)))")).accepted);
        CHECK_FALSE(taged_accepts(d, T("f(h(A_1,h(A_2,A_1)),h(A_1,h(A_2,A_1)))")).accepted);
        CHECK(d.base().state_count() <= d_g_cubic_state_bound(3, bundle.m_g));
    }

    TEST_CASE("D_G preconditions") {
        CHECK_THROWS_AS(build_d_g(Digraph({"1"}, {})), PreconditionViolated);
        CHECK_THROWS_AS(build_d_g(Digraph({"1", "2"}, {})), PreconditionViolated);
    }

    TEST_CASE("D_G for a Hamiltonian graph has no witness at the exact budget") {
        auto g = Digraph({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"1", "1"}});
        auto bundle = build_d_g(g);
        auto budget = search_budget(bundle.m_g, 3).convert_to<std::size_t>();
        CHECK(has_hamiltonian_path(g));
        CHECK_FALSE(taged_empty_bounded(bundle.d_g, budget));
    }

    TEST_CASE("reduce_and_decide examples") {
        for (auto method : {DecideMethod::counting, DecideMethod::search}) {
            CHECK(reduce_and_decide(chain(), method).hamiltonian);
            CHECK_FALSE(reduce_and_decide(two_cycle_plus_one(), method).hamiltonian);
            auto one = reduce_and_decide(Digraph({"1"}, {}), method);
            CHECK(one.hamiltonian);
            CHECK_FALSE(one.shortcut.empty());
            auto none = reduce_and_decide(Digraph({"1", "2"}, {}), method);
            CHECK_FALSE(none.hamiltonian);
            CHECK_FALSE(none.shortcut.empty());
        }
        auto c = reduce_and_decide(two_cycle_plus_one(), DecideMethod::counting);
        CHECK(c.bg_count == std::optional<std::size_t>(2));
        CHECK(c.m_g == 2);
    }

    TEST_CASE("verify_constructions examples") {
        auto r = verify_constructions(three_cycle());
        CHECK(r.failures() == 0);
        CHECK(r.checks.size() == 9);
        auto r2 = verify_constructions(two_cycle_plus_one());
        CHECK(r2.failures() == 0);
        CHECK(r2.m_g == 2);
        CHECK(r2.bg_count == 2);
        CHECK_FALSE(r2.hamiltonian);
        std::mt19937_64 rng(4);
        CHECK(verify_constructions(random_digraph(4, 0.5, rng)).failures() == 0);
    }

    TEST_CASE("a corrupted C_G is caught with a counterexample") {
        Constructions broken;
        broken.c_g = mutated_c_g;
        auto r = verify_constructions(three_cycle(), {}, broken);
        CHECK(r.failures() > 0);
        bool repeat_failed = false;
        for (const auto& c : r.checks)
            if (c.id == "cg-repeat") {
                repeat_failed = !c.pass;
                REQUIRE(c.counterexample);
                auto w = comb_decode(T(*c.counterexample));
                REQUIRE(w);
                // The oracle and the mutant disagree on this comb.
                CHECK(accepts(build_c_g(three_cycle()), T(*c.counterexample)) !=
                      accepts(mutated_c_g(three_cycle()), T(*c.counterexample)));
            }
        CHECK(repeat_failed);
        CHECK(accepts(build_c_g(three_cycle()), T("h(A_1,h(A_1,h(A_2,A_3)))")));
        CHECK_FALSE(accepts(mutated_c_g(three_cycle()), T("h(A_1,h(A_1,h(A_2,A_3)))")));
    }
}
