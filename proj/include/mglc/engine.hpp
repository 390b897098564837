// Multigraded cohomology tables and the maps between them.
//
// Everything is computed from strands: a table is a chamber decomposition
// plus one dimension per chamber, and a map is one matrix per chamber of a
// common refinement. Strand evaluations are cached by survival profile, so
// chambers that slice the same sub-complex share all the linear algebra.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mglc/complexes.hpp"
#include "mglc/linalg.hpp"
#include "mglc/monomial.hpp"

namespace mglc {

struct CohomologyTable {
    std::string kind; // ext | hm | ha | tor | hochster
    int index = 0;
    ChamberDecomposition chambers;
    std::vector<long long> dims; // per chamber

    long long dim_at(const Expo& alpha) const { return dims[chambers.chamber_of(alpha)]; }
    bool is_zero() const;
    std::string to_json() const;
};

// Degree-preserving map of tables over one shared decomposition.
struct GradedModuleMap {
    CohomologyTable source, target; // both on the merged chambers
    std::vector<ExactMatrix> mats;  // per chamber

    bool injective_everywhere() const;
    bool surjective_everywhere() const;
    bool iso_everywhere() const;
};

// Caches strand evaluations of one template keyed by survival profile.
class StrandEvaluator {
public:
    explicit StrandEvaluator(StrandTemplate t) : t_(std::move(t)) {}
    const StrandTemplate& tmpl() const { return t_; }

    const FiniteComplex& complex_at(const Expo& alpha);
    const std::vector<long long>& dims_at(const Expo& alpha); // by storage position
    const SpotCohomology& spot_at(const Expo& alpha, int pos);
    const std::vector<std::vector<char>>& masks_at(const Expo& alpha);

private:
    struct Entry {
        std::vector<std::vector<char>> masks;
        FiniteComplex cx;
        std::vector<long long> dims;
        std::vector<std::unique_ptr<SpotCohomology>> spots;
    };
    Entry& entry_at(const Expo& alpha);
    StrandTemplate t_;
    std::map<std::string, Entry> cache_;
};

// Strand component of a summand-diagonal map (coefficient 1 on every summand
// alive on both sides). Summand counts per spot must agree.
ExactMatrix diagonal_transfer(const std::vector<std::vector<char>>& src_masks,
                              const std::vector<std::vector<char>>& dst_masks, int pos,
                              FieldSpec field);

// Verified induced map on cohomology of the summand-diagonal chain map
// between two strand evaluations (spot sizes must agree); every square of
// the chain map is checked, and results are cached by profile pair.
ExactMatrix induced_diagonal_map(StrandEvaluator& src, StrandEvaluator& dst,
                                 const Expo& alpha_src, const Expo& alpha_dst, int pos,
                                 std::map<std::string, ExactMatrix>& cache);

// ---------------------------------------------------------------------------
// tables

// Ext^i(R/b, R) from strands of the dualized Taylor complex.
CohomologyTable ext_table(const MonomialIdeal& b, int i);

// Ext^i(R/a, R/b) from strands of Hom(Taylor(a), R/b).
CohomologyTable ext_table(const MonomialIdeal& a, const MonomialIdeal& b, int i);

// H^j_m(R/b) from Cech strands on the variables with coefficients R/b.
CohomologyTable hm_table(const MonomialIdeal& b, int j);

// H^i_a(R) from Cech strands on the generators of a.
CohomologyTable ha_table(const MonomialIdeal& a, int i);

// Tor_j(Ext^d(R/a, R), R/b) for m-primary a: tensor the Taylor resolution of
// R/b with Ext^d realized degreewise through its strand bases; differentials
// are induced multiplication maps. This route shares nothing with the mixed
// ext_table above, so comparing them is a genuine two-path check.
CohomologyTable tor_table(const MonomialIdeal& a, const MonomialIdeal& b, int j);

// least i with Ext^i(R/a, R) nonzero; empty for the unit ideal (no nonzero Ext)
std::optional<int> depth_of(const MonomialIdeal& a);

// The natural map Ext^i(R/a^[k], R) -> Ext^i(R/a^[k'], R) for k <= k',
// dual to the comparison chain map of Taylor complexes.
GradedModuleMap ext_chain_map(const MonomialIdeal& a, const Expo& k, const Expo& k_prime, int i);

struct Stabilization {
    bool stabilized = false;
    Expo T;               // bracket exponent of the stable stage
    long long window = 0; // verified on the box [-window, window]^d
    GradedModuleMap into_stable; // Ext^i(R/a, R) -> Ext^i(R/a^[T], R)
};

// Doubles T until ext_table(a^[T], i) matches ha_table(a, i) on the
// verification window and the next chain map is an isomorphism there.
// The window is the fixed box [-W, W]^d with W = 1 + max exponent of a.
Stabilization ha_stabilization(const MonomialIdeal& a, int i, int max_doublings = 8);

// A point of the chamber inside the box [-w, w]^nvars, if one exists.
std::optional<Expo> chamber_window_point(const ChamberDecomposition& cd, long long chamber,
                                         long long w);

// ---------------------------------------------------------------------------
// simplicial oracles

// dim of reduced simplicial cohomology H~^q(X; K) (empty complex: K in q=-1)
long long reduced_cohomology_dim(const SimplicialComplex& x, int q, FieldSpec field);

// H^j_m(K[delta]) via reduced cohomology of links over the negative support.
CohomologyTable hochster_table(const SimplicialComplex& dl, const PolyRing& ring, int j);

} // namespace mglc
