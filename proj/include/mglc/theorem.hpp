// Executable verdicts: each check pins one statement about monomial ideals
// to a finite computation and reports holds / fails / window-limited /
// not-applicable, with a witness whenever something fails.
//
// A verdict is `guaranteed` when the statement is a proved theorem for the
// given instance (hypotheses verified); a failing guaranteed verdict means
// an implementation bug or a genuine counterexample, and either must stop
// the presses. Exploratory verdicts (hypotheses not met) are informational.

#pragma once

#include <string>
#include <vector>

#include "mglc/engine.hpp"
#include "mglc/monomial.hpp"

namespace mglc {

// phi(x_i) = x_i^(k_i)
struct PowerEndomorphism {
    Expo k;

    bool cofinal() const; // all k_i >= 2, so the bracket chain is cofinal
    Expo power(int t) const;
};

enum class VerdictResult { holds, fails, window_limited, not_applicable };
std::string to_string(VerdictResult r);

struct Verdict {
    std::string claim;
    std::string instance;       // JSON object
    VerdictResult result = VerdictResult::holds;
    std::string witness;        // JSON, empty = null
    std::string window;         // JSON, empty = null
    bool guaranteed = false;    // not serialized; drives process exit codes

    std::string to_json() const;
};

// The semilinear action on one hm table: chamber c maps into succ[c] under
// alpha -> k*alpha, with the per-chamber matrix of the induced map.
struct ActionOnTable {
    CohomologyTable table; // on chambers closed under the ceiling division
    Expo k;
    std::vector<long long> succ;
    std::vector<ExactMatrix> mats;

    // true when some iterate of the action is the zero map
    bool has_zero_iterate() const;
};

ActionOnTable phi_action(const MonomialIdeal& a, const PowerEndomorphism& phi, int j);

// injectivity of Ext^i(R/a^[k^t],R) -> Ext^i(R/a^[k^(t+1)],R), one verdict
// per (t, i) with 0 <= t <= t_max and 0 <= i <= i_max
std::vector<Verdict> check_injectivity_chain(const MonomialIdeal& a, const PowerEndomorphism& phi,
                                             int t_max, int i_max);

// injectivity into the stabilized table at i = depth
Verdict check_depth_injectivity(const MonomialIdeal& a);

// the explicit splitting of phi-bar for square-free a, checked on a window
Verdict check_purity_splitting(const MonomialIdeal& a, const PowerEndomorphism& phi);

// degree-alpha pieces of H^j_m(R/a) spanned by shifted images of phi-bar
Verdict check_rspan_surjectivity(const MonomialIdeal& a, const PowerEndomorphism& phi, int j,
                                 long long window);

// chamber-automaton nilpotency of the action on H^(d-i)_m(R/a) versus the
// vanishing of H^i_a(R), one verdict per 0 <= i <= d
std::vector<Verdict> check_vanishing_criterion(const MonomialIdeal& a,
                                               const PowerEndomorphism& phi);

// H^i_a(S) = 0 iff H^(d-i)_m(S/a) = 0 for the Stanley-Reisner ideal of dl
std::vector<Verdict> check_vanishing_equivalence(const SimplicialComplex& dl,
                                                 long long field_char = 0);

// per-chamber dimension equality of Ext^i(R/a, R/b) and Tor_(d-i)(Ext^d, R/b)
Verdict check_ext_tor(const MonomialIdeal& a, const MonomialIdeal& b, int i);

// H^d_m(R/(x_1)) = 0 yet Ext^d(R/a_t, R/(x_1)) != 0 for a_t = (x_i^(2t))
Verdict check_example_3_2(int d, long long field_char = 0);

// Ext tables of the bracket power versus cohomology of the rescaled complex,
// plus the structural identity of the rescaled Taylor complex itself
Verdict check_phi_ext_iso(const MonomialIdeal& a, const Expo& k, int i);

} // namespace mglc
