// Complexes attached to a monomial ideal: the Taylor complex on its
// generators, duals and Frobenius-type rescalings of free complexes, Cech
// complexes, and the strand machinery that turns any of these into a finite
// complex of vector spaces in a fixed multidegree.
//
// The key fact used throughout: for a complex whose terms are twists of R or
// of R/b (or localizations of these), the degree alpha strand has every
// summand either 0 or a canonical copy of K, and every differential entry
// acts on those copies by its scalar coefficient. So a strand is described
// by a survival bit per summand plus the integer entries of the maps.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mglc/linalg.hpp"
#include "mglc/monomial.hpp"

namespace mglc {

// ---------------------------------------------------------------------------
// matrices over the polynomial ring, entries kept as sparse polynomials

struct SignedMonomial {
    long long coeff = 0;
    Expo expo;
    bool operator==(const SignedMonomial&) const = default;
};

class MonomialMatrix {
public:
    MonomialMatrix() = default;
    MonomialMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    void add_term(size_t i, size_t j, long long coeff, const Expo& expo);
    const std::vector<SignedMonomial>& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    MonomialMatrix mul(const MonomialMatrix& rhs) const;
    MonomialMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const MonomialMatrix&) const = default;

private:
    void normalize(size_t i, size_t j);
    size_t rows_ = 0, cols_ = 0;
    std::vector<std::vector<SignedMonomial>> e_; // row major, each cell a normalized polynomial
};

// ---------------------------------------------------------------------------
// graded free complexes

// Terms are twists: spot s is the direct sum of R(-beta) over beta in
// terms[s]. When homological, maps[i] goes from spot i+1 to spot i; when
// cohomological, from spot i to spot i+1. Matrix rows always index the
// target, columns the source.
struct GradedFreeComplex {
    PolyRing ring;
    bool homological = true;
    std::vector<std::vector<Expo>> terms;
    std::vector<MonomialMatrix> maps;
    std::vector<std::vector<uint32_t>> labels; // optional summand tags (subset masks)

    int length() const { return (int)terms.size() - 1; }
    // shapes, entry degrees, and that consecutive maps compose to zero
    void validate() const;
    bool operator==(const GradedFreeComplex&) const = default;
};

// Taylor complex on the minimal generators: spot s has one summand per
// size s subset S, twisted by lcm(S), with labels recording the subsets as
// bitmasks in increasing numeric order.
GradedFreeComplex taylor_complex(const MonomialIdeal& a);

// R-linear dual: orientation flips, twists negate, matrices transpose.
GradedFreeComplex dual_complex(const GradedFreeComplex& c);

// Rescale every twist and every entry exponent componentwise by k >= 1.
// Applied to a Taylor complex this lands exactly on the Taylor complex of
// the bracket power, since subset lcms scale componentwise.
GradedFreeComplex frobenius_functor(const GradedFreeComplex& c, const Expo& k);

// Chain map Taylor(a^[k_fine]) -> Taylor(a^[k_coarse]) over the identity of
// R/-surjection; diagonal in the subset bases, e_S goes to
// x^((k_fine - k_coarse) * lcm_S) e_S. Needs k_fine >= k_coarse >= 1.
std::vector<MonomialMatrix> comparison_chain_map(const MonomialIdeal& a, const Expo& k_coarse,
                                                 const Expo& k_fine);

// subsets of {0..n-1} of the given size, as bitmasks in increasing order
std::vector<uint32_t> subsets_of_size(int n, int size);

// ---------------------------------------------------------------------------
// chambers: boxes on which every strand of a template is constant

// Finitely many thresholds per coordinate cut Z^n into boxes; inside a box
// every comparison "alpha_i >= t" with t a threshold has constant truth
// value. Chambers are indexed mixed-radix, coordinate 0 fastest.
struct ChamberDecomposition {
    int nvars = 0;
    std::vector<std::vector<long long>> thresholds; // sorted, unique, per coordinate

    long long chamber_count() const;
    std::vector<size_t> decode(long long idx) const; // interval digit per coordinate
    long long chamber_of(const Expo& alpha) const;
    // closed interval of a digit; nullopt marks an unbounded side
    std::optional<long long> lower(int coord, size_t digit) const;
    std::optional<long long> upper(int coord, size_t digit) const;
    Expo rep(long long idx) const; // the point of the box nearest the origin

    void add_threshold(int coord, long long t);
    // close thresholds under t -> ceil(t / k_i), so that alpha -> k * alpha
    // maps every box into a single box
    void close_under_ceil_div(const Expo& k);
    static ChamberDecomposition merge(const ChamberDecomposition& a,
                                      const ChamberDecomposition& b);
};

// ---------------------------------------------------------------------------
// strands

// One summand of a strand template. Alive at alpha iff
//   alpha_i >= twist_i for every coordinate i not in `ignored`, and
//   for every killer g there is some i not in `ignored` with
//   alpha_i < twist_i + g_i.
// Free summand R(-twist): no killers, nothing ignored. Quotient summand
// (R/b)(-twist): killers are the generators of b. Cech summand
// (R/b)[1/m_S]: twist 0, `ignored` the support of m_S, killers again b.
struct StrandSummand {
    Expo twist;
    uint32_t ignored = 0;
    std::vector<Expo> killers;
    bool alive(const Expo& alpha) const;
};

struct StrandEntry {
    size_t row = 0, col = 0; // target and source summand
    long long coeff = 0;     // scalar action on the strand when both ends are alive
};

// A complex of monomial-shaped summands stored in cohomological order:
// entries[p] describes the map from storage spot p to p+1. A homological
// complex is stored reversed; position() converts a mathematical degree to
// the storage position, so H_j of a homological complex is the cohomology of
// the storage complex at position(j).
struct StrandTemplate {
    PolyRing ring;
    bool reversed = false;
    std::vector<std::vector<StrandSummand>> spots;
    std::vector<std::vector<StrandEntry>> entries;

    int length() const { return (int)spots.size() - 1; }
    int position(int math_degree) const {
        return reversed ? length() - math_degree : math_degree;
    }

    std::vector<std::vector<char>> masks_at(const Expo& alpha) const;
    std::string profile_key(const std::vector<std::vector<char>>& masks) const;
    FiniteComplex complex_at_masks(const std::vector<std::vector<char>>& masks) const;
    FiniteComplex complex_at(const Expo& alpha) const;
    ChamberDecomposition chambers() const;

    // free or quotient coefficients: strands of c with entries read off the
    // monomial matrices; coeffs = zero ideal means plain R coefficients
    static StrandTemplate from_free(const GradedFreeComplex& c, const MonomialIdeal& coeffs);
    // Cech complex on the generators of a, with coefficients R/coeffs
    static StrandTemplate from_cech(const MonomialIdeal& a, const MonomialIdeal& coeffs);
};

} // namespace mglc
