#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "cli_runner.hpp"
#include "taged/text_format.hpp"

using namespace taged;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("taged_cli_test_" + name)).string();
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("count-paths") {
        auto r = run_cli("count-paths " + fixture("three_cycle.graph"));
        CHECK(r.status == 0);
        CHECK(r.out == "3\n");
        CHECK(run_cli("count-paths " + fixture("edgeless2.graph")).out == "0\n");
        CHECK(run_cli("count-paths " + fixture("complete4.graph")).out == "108\n");
    }

    TEST_CASE("decide") {
        for (const std::string method : {"counting", "search"}) {
            auto yes = run_cli("decide --method " + method + " " + fixture("chain.graph"));
            CHECK(yes.status == 0);
            CHECK(yes.out.starts_with("HAMILTONIAN\n"));
            auto no = run_cli("decide --method " + method + " " + fixture("two_cycle.graph"));
            CHECK(no.status == 1);
            CHECK(no.out.starts_with("NO-HAMILTONIAN\n"));
            auto one = run_cli("decide --method " + method + " " + fixture("single.graph"));
            CHECK(one.status == 0);
            CHECK(one.out.starts_with("HAMILTONIAN\n"));
        }
    }

    TEST_CASE("error exit codes") {
        CHECK(run_cli("decide " + fixture("malformed.graph")).status == 2);
        CHECK(run_cli("decide " + fixture("no_such_file.graph")).status == 2);
        CHECK(run_cli("decide " + fixture("overcap.graph")).status == 3);
        CHECK(run_cli("verify " + fixture("overcap.graph")).status == 3);
        CHECK(run_cli("decide --max-vertices 2 " + fixture("chain.graph")).status == 3);
        CHECK(run_cli("bogus-command").status == 2);
        CHECK(run_cli("decide --method magic " + fixture("chain.graph")).status == 2);
        CHECK(run_cli("enumerate " + fixture("a5.aut")).status == 2);
        CHECK(run_cli("accepts " + fixture("a5.aut") + " 'f(A,B)'").status == 2);
    }

    TEST_CASE("reduce writes the golden D_G") {
        auto out = temp_path("dg.taged");
        CHECK(run_cli("reduce " + fixture("two_cycle.graph") + " -o " + out).status == 0);
        CHECK(read_text_file(out) == read_text_file(fixture("dg_two_cycle.taged")));
        auto r = run_cli("accepts " + out + " 'f(h(A_1,h(A_2,A_1)),h(A_2,h(A_1,A_2)))'");
        CHECK(r.status == 0);
        CHECK(r.out == "ACCEPT\n");
        auto same = run_cli("accepts " + out + " 'f(h(A_1,h(A_2,A_1)),h(A_1,h(A_2,A_1)))'");
        CHECK(same.status == 1);
        CHECK(same.out == "REJECT\n");
        std::filesystem::remove(out);
    }

    TEST_CASE("reduce on a Hamiltonian graph leaves nothing to find") {
        auto out = temp_path("dg_chain.taged");
        auto g = fixture("three_cycle.graph");
        CHECK(run_cli("reduce " + g + " -o " + out).status == 0);
        auto d = parse_taged(read_text_file(out));
        CHECK_FALSE(taged_empty_bounded(d, 3 + 3 * 5));
        std::filesystem::remove(out);
    }

    TEST_CASE("every stage round-trips") {
        for (const std::string stage : {"am", "pg", "cg", "bg", "dg"}) {
            auto r = run_cli("reduce --stage " + stage + " " + fixture("two_cycle.graph"));
            REQUIRE(r.status == 0);
            if (stage == "dg")
                CHECK(print_taged(parse_taged(r.out)) == r.out);
            else
                CHECK(print_automaton(parse_automaton(r.out)) == r.out);
        }
    }

    TEST_CASE("accepts") {
        CHECK(run_cli("accepts " + fixture("a5.aut") + " 'g(f(A,A),f(A,A),A)'").out == "ACCEPT\n");
        auto no = run_cli("accepts " + fixture("a5.aut") + " 'f(A,A)'");
        CHECK(no.status == 1);
        CHECK(no.out == "REJECT\n");
        CHECK(run_cli("accepts " + fixture("neq.taged") + " 'f(A,A)'").out == "REJECT\n");
        auto w = run_cli("accepts --witness " + fixture("neq.taged") + " 'f(A,B)'");
        CHECK(w.status == 0);
        CHECK(w.out == "ACCEPT\nε:qf\n1:q\n2:q\n");
    }

    TEST_CASE("enumerate") {
        auto r = run_cli("enumerate --max-nodes 4 " + fixture("a1.aut"));
        CHECK(r.status == 0);
        CHECK(r.out == "A\n");
        auto e = run_cli("enumerate --max-nodes 20 " + fixture("empty.aut"));
        CHECK(e.status == 0);
        CHECK(e.out.empty());
        auto bg = temp_path("bg.aut");
        CHECK(run_cli("reduce --stage bg " + fixture("two_cycle.graph") + " -o " + bg).status == 0);
        auto b = run_cli("enumerate --max-nodes 8 " + bg);
        CHECK(b.out == "h(A_1,h(A_2,A_1))\nh(A_2,h(A_1,A_2))\n");
        CHECK(run_cli("enumerate --max-nodes 8 " + bg).out == b.out);
        CHECK(run_cli("enumerate --max-nodes 8 --max-buckets 1 " + bg).status == 3);
        std::filesystem::remove(bg);
    }

    TEST_CASE("verify") {
        auto r = run_cli("verify " + fixture("three_cycle.graph"));
        CHECK(r.status == 0);
        CHECK(r.out.find("ALL-PASS\n") != std::string::npos);
        CHECK(r.out.find("LEMMA cg-repeat PASS\n") != std::string::npos);
        auto rnd = run_cli("verify --random 4 --seed 5");
        CHECK(rnd.status == 0);
        CHECK(rnd.out.find("ALL-PASS") != std::string::npos);
        CHECK(run_cli("verify --random 4 --seed 5").out == rnd.out);
        CHECK(run_cli("verify").status == 2);
    }
}
