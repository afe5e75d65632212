#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "taged/constrained.hpp"
#include "taged/reduction.hpp"
#include "taged/text_format.hpp"

using namespace taged;

namespace {

Term T(std::string_view s) { return parse_term(s); }

/// {A->q, B->q, f(q,q)->qf}, final {qf}.
TreeAutomaton pair_automaton() {
    const Symbol f{"f", 2}, A{"A", 0}, B{"B", 0};
    return TreeAutomaton(RankedAlphabet{f, A, B}, {"q", "qf"},
                         {{A, {}, "q"}, {B, {}, "q"}, {f, {"q", "q"}, "qf"}}, {"qf"});
}

std::vector<StatePair> random_pairs(std::mt19937_64& rng, const TreeAutomaton& a, std::size_t n) {
    std::uniform_int_distribution<std::size_t> pick(0, a.state_count() - 1);
    std::vector<StatePair> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(a.state_name(pick(rng)), a.state_name(pick(rng)));
    return out;
}

}  // namespace

TEST_SUITE("taged") {
    TEST_CASE("constraint class") {
        auto a = pair_automaton();
        CHECK(constraint_class(Taged(a, {}, {{"q", "q"}})) == ConstraintClass{0, 1});
        CHECK(constraint_class(Taged(a, {}, {})) == ConstraintClass{0, 0});
        CHECK(constraint_class(Taged(a, {{"q", "qf"}, {"qf", "q"}}, {})) == ConstraintClass{2, 0});
        CHECK_THROWS_AS(Taged(a, {}, {{"q", "nope"}}), std::invalid_argument);
    }

    TEST_CASE("disequality on siblings") {
        Taged t(pair_automaton(), {}, {{"q", "q"}});
        auto yes = taged_accepts(t, T("f(A,B)"));
        CHECK(yes.accepted);
        REQUIRE(yes.witness);
        CHECK(yes.witness->labels.at(Position{}) == "qf");
        CHECK_FALSE(taged_accepts(t, T("f(A,A)")).accepted);
    }

    TEST_CASE("equality on siblings") {
        Taged t(pair_automaton(), {{"q", "q"}}, {});
        CHECK(taged_accepts(t, T("f(A,A)")).accepted);
        CHECK_FALSE(taged_accepts(t, T("f(A,B)")).accepted);
    }

    TEST_CASE("no constraints coincides with plain acceptance") {
        std::mt19937_64 rng(41);
        for (int i = 0; i < 200; ++i) {
            auto a = oracle::random_automaton(rng, 4);
            auto term = oracle::random_term(rng, 1 + i % 6);
            CHECK(taged_accepts(Taged(a, {}, {}), term).accepted == accepts(a, term));
        }
    }

    TEST_CASE("membership matches the naive oracle") {
        std::mt19937_64 rng(43);
        for (int i = 0; i < 300; ++i) {
            auto a = oracle::random_automaton(rng, 3);
            auto eq = random_pairs(rng, a, i % 2);
            auto neq = random_pairs(rng, a, (i / 2) % 2);
            Taged t(a, eq, neq);
            auto term = oracle::random_term(rng, 1 + i % 6);
            auto m = taged_accepts(t, term);
            CHECK(m.accepted == oracle::taged_accepts(t, term));
            if (m.witness) CHECK(m.witness->term == term);
        }
    }

    TEST_CASE("witness run is a valid accepting run") {
        Taged t(build_a_m(5), {}, {});
        auto m = taged_accepts(t, T("g(f(A,A),f(A,A),A)"));
        REQUIRE(m.witness);
        auto runs = oracle::all_runs(t.base(), m.witness->term);
        CHECK(std::find(runs.begin(), runs.end(), m.witness->labels) != runs.end());
    }

    TEST_CASE("bounded emptiness") {
        TreeAutomaton none(RankedAlphabet{{"A", 0}}, {"q"}, {}, {"q"});
        CHECK_FALSE(taged_empty_bounded(Taged(none, {}, {}), 50));
        CHECK(taged_empty_bounded(Taged(build_a_m(5), {}, {}), 16) == T("g(f(A,A),f(A,A),A)"));
        CHECK_FALSE(taged_empty_bounded(Taged(build_a_m(5), {}, {}), 7));

        Taged neq(pair_automaton(), {}, {{"q", "q"}});
        auto w = taged_empty_bounded(neq, 3);
        REQUIRE(w);
        CHECK(taged_accepts(neq, *w).accepted);

        // Only A is available, so f(A,A) is the sole candidate and it fails.
        const Symbol f{"f", 2}, A{"A", 0};
        TreeAutomaton only_a(RankedAlphabet{f, A}, {"q", "qf"}, {{A, {}, "q"}, {f, {"q", "q"}, "qf"}}, {"qf"});
        CHECK_FALSE(taged_empty_bounded(Taged(only_a, {}, {{"q", "q"}}), 30));
    }

    TEST_CASE("bounded search is complete against generate-and-test") {
        std::mt19937_64 rng(47);
        int with_reflexive = 0;
        for (int i = 0; i < 150; ++i) {
            auto a = oracle::random_automaton(rng, 3);
            auto eq = random_pairs(rng, a, i % 3 == 0);
            auto neq = random_pairs(rng, a, 1);
            if (i % 2 == 0) neq[0].second = neq[0].first;
            with_reflexive += neq[0].first == neq[0].second;
            Taged t(a, eq, neq);
            const std::size_t bound = 5;
            bool exists = false;
            for (std::size_t s = 1; s <= bound && !exists; ++s)
                for (const auto& term : oracle::all_terms(a.alphabet().symbols(), s))
                    if (oracle::taged_accepts(t, term)) {
                        exists = true;
                        break;
                    }
            auto w = taged_empty_bounded(t, bound);
            CHECK(w.has_value() == exists);
            if (w) {
                CHECK(w->size() <= bound);
                CHECK(oracle::taged_accepts(t, *w));
            }
        }
        CHECK(with_reflexive >= 75);
    }
}
