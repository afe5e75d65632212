#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "taged/error.hpp"
#include "taged/term.hpp"
#include "taged/text_format.hpp"

using namespace taged;

namespace {

Term T(std::string_view s) { return parse_term(s); }

std::vector<std::string> pos_strings(const Term& t) {
    std::vector<std::string> out;
    for (const auto& p : positions(t)) out.push_back(p.to_string());
    return out;
}

}  // namespace

TEST_SUITE("term") {
    TEST_CASE("positions") {
        CHECK(pos_strings(T("A")) == std::vector<std::string>{"ε"});
        CHECK(pos_strings(T("f(A,A)")) == std::vector<std::string>{"ε", "1", "2"});
        const auto p = pos_strings(T("g(f(A,A),f(A,A),A)"));
        CHECK(std::set<std::string>(p.begin(), p.end()) ==
              std::set<std::string>{"ε", "1", "2", "3", "1.1", "1.2", "2.1", "2.2"});
        CHECK(p.size() == 8);
    }

    TEST_CASE("positions match node count on random terms") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 200; ++i) {
            auto t = oracle::random_term(rng, 1 + i % 12);
            auto ps = positions(t);
            CHECK(ps.size() == t.size());
            CHECK(std::set<Position>(ps.begin(), ps.end()).size() == ps.size());
            for (const auto& p : ps) CHECK(subterm_at(t, p).size() <= t.size());
        }
    }

    TEST_CASE("subterm_at") {
        CHECK(subterm_at(T("f(A,B)"), Position{}) == T("f(A,B)"));
        CHECK(subterm_at(T("g(f(A,A),f(A,A),A)"), Position::parse("1.2")) == T("A"));
        CHECK(subterm_at(T("h(A_2,h(A_1,A_0))"), Position::parse("2")) == T("h(A_1,A_0)"));
        CHECK_THROWS_AS(subterm_at(T("f(A,A)"), Position::parse("3")), InvalidPosition);
        CHECK_THROWS_AS(subterm_at(T("A"), Position::parse("1")), InvalidPosition);
    }

    TEST_CASE("replace_at") {
        CHECK(replace_at(T("f(A,A)"), Position::parse("1"), T("f(A,A)")) == T("f(f(A,A),A)"));
        CHECK(replace_at(T("A"), Position{}, T("f(A,A)")) == T("f(A,A)"));
        CHECK_THROWS_AS(replace_at(T("A"), Position::parse("2"), T("A")), InvalidPosition);
    }

    TEST_CASE("replace then read back") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 200; ++i) {
            auto t = oracle::random_term(rng, 1 + i % 9);
            auto s = oracle::random_term(rng, 1 + i % 4);
            auto ps = positions(t);
            const auto& p = ps[i % ps.size()];
            auto r = replace_at(t, p, s);
            CHECK(subterm_at(r, p) == s);
            CHECK(r.size() == t.size() - subterm_at(t, p).size() + s.size());
        }
    }

    TEST_CASE("count_leaves") {
        CHECK(count_leaves(T("A"), {"A", 0}) == 1);
        CHECK(count_leaves(T("g(f(A,A),f(A,A),A)"), {"A", 0}) == 5);
        CHECK(count_leaves(T("f(A,A)"), {"B", 0}) == 0);
    }

    TEST_CASE("comb encode and decode") {
        RankedAlphabet sigma{comb_symbol(), {"A_1", 0}, {"A_2", 0}, {"A_3", 0}, {"A_v", 0}};
        std::vector<std::string> one{"v"};
        CHECK(comb_encode(one, sigma) == T("A_v"));
        std::vector<std::string> three{"3", "2", "1"};
        CHECK(comb_encode(three, sigma) == T("h(A_3,h(A_2,A_1))"));
        CHECK(comb_decode(T("h(A_3,h(A_2,A_1))")) == three);
        CHECK_FALSE(comb_decode(T("f(A,A)")));
        CHECK_FALSE(comb_decode(T("h(h(A_1,A_2),A_3)")));
        std::vector<std::string> missing{"9"};
        CHECK_THROWS_AS(comb_encode(missing, sigma), UnknownVertex);
        std::vector<std::string> pair{"1", "2"};
        CHECK_THROWS_AS(comb_encode(pair, RankedAlphabet{{"A_1", 0}, {"A_2", 0}}), AlienSymbol);
    }

    TEST_CASE("comb round trip") {
        RankedAlphabet sigma{comb_symbol(), {"A_1", 0}, {"A_2", 0}, {"A_3", 0}};
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<int> v(1, 3), len(1, 6);
        for (int i = 0; i < 100; ++i) {
            std::vector<std::string> w;
            for (int k = len(rng); k > 0; --k) w.push_back(std::to_string(v(rng)));
            auto t = comb_encode(w, sigma);
            CHECK(t.size() == 2 * w.size() - 1);
            CHECK(comb_decode(t) == w);
        }
    }

    TEST_CASE("arity and alphabet checks") {
        CHECK_THROWS_AS(Term(Symbol{"f", 2}, {T("A")}), std::invalid_argument);
        CHECK_THROWS_AS(check_alphabet(T("f(A,B)"), RankedAlphabet{{"f", 2}, {"A", 0}}), AlienSymbol);
        CHECK_NOTHROW(check_alphabet(T("f(A,A)"), RankedAlphabet{{"f", 2}, {"A", 0}}));
        RankedAlphabet a{{"f", 2}};
        CHECK_THROWS_AS(a.add({"f", 1}), AlphabetMismatch);
    }

    TEST_CASE("canonical order") {
        CHECK(T("A") < T("B"));
        CHECK(T("f(A,A)") < T("f(A,B)"));
        SizeThenCanonical less;
        CHECK(less(T("B"), T("f(A,A)")));
        CHECK(T("f(A,B)").hash() == T("f(A,B)").hash());
    }

    TEST_CASE("positions print and parse") {
        CHECK(Position::parse("ε").is_root());
        CHECK(Position::parse("1.2.3").to_string() == "1.2.3");
        CHECK(Position::parse("1").is_prefix_of(Position::parse("1.2")));
        CHECK_FALSE(Position::parse("2").is_prefix_of(Position::parse("1.2")));
    }

    TEST_CASE("instantiate fills holes") {
        auto c = T("f(x1,f(x2,x1))");
        auto t = instantiate(c, {{"x1", T("A")}, {"x2", T("B")}});
        CHECK(t == T("f(A,f(B,A))"));
    }
}
