#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "taged/graph.hpp"
#include "taged/limits.hpp"
#include "taged/reduction.hpp"

namespace taged {

struct LemmaCheck {
    std::string id;
    bool pass = true;
    std::optional<std::string> counterexample;
    std::string detail;
};

struct VerificationReport {
    std::vector<LemmaCheck> checks;
    BigInt m_g;
    std::size_t bg_count = 0;
    bool hamiltonian = false;

    std::size_t failures() const;
    /// `LEMMA <id> PASS|FAIL [counterexample: <term>]` lines, then the
    /// `m_G=`, `bG_count=`, `hamiltonian=` summary.
    void write(std::ostream& out) const;
};

/// Builders used by the checks; tests swap in mutated constructions.
struct Constructions {
    std::function<TreeAutomaton(const Digraph&)> c_g = build_c_g;
    std::function<TreeAutomaton(const Digraph&)> p_g = build_p_g;
};

/// Runs every construction check against its brute-force oracle, in a fixed
/// order: hamiltonian-walk, walk-count, am-singleton, pg-language, cg-p1,
/// cg-pw, cg-repeat, bg-count, dg-decision. Combs up to 5 entries are
/// checked for the C_G lemmas. Throws ResourceLimit past the caps.
VerificationReport verify_constructions(const Digraph& g, const Limits& limits = {},
                                        const Constructions& build = {});

}  // namespace taged
