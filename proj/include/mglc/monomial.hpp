// Monomials, monomial ideals and the Stanley-Reisner dictionary.
//
// Exponent vectors double as multidegrees: entries are nonnegative for
// monomials, arbitrary integers for degrees. The ideal type keeps its
// generator list minimal and lex-sorted, so subset-indexed constructions
// (Taylor complexes and friends) are canonical.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mglc {

using Expo = std::vector<long long>;

// Thrown on malformed user input (bad JSON, non-prime characteristic, ...).
// The CLI maps it to exit code 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PolyRing {
    int nvars = 0;
    long long field_char = 0; // 0 = rationals, otherwise a prime
    bool operator==(const PolyRing&) const = default;
};

void validate_ring(const PolyRing& r);
bool is_prime(long long p);

bool divides(const Expo& a, const Expo& b); // a <= b componentwise
Expo lcm_of(const Expo& a, const Expo& b);
Expo scale(const Expo& k, const Expo& e); // componentwise product
Expo add(const Expo& a, const Expo& b);
Expo sub(const Expo& a, const Expo& b);
bool is_nonnegative(const Expo& e);
uint32_t support_mask(const Expo& e);
std::string expo_str(const Expo& e);

// Generators are stored minimal (an antichain under divisibility) and sorted
// lexicographically. gens empty = zero ideal, gens == {(0,...,0)} = unit ideal.
struct MonomialIdeal {
    PolyRing ring;
    std::vector<Expo> gens;

    static MonomialIdeal make(PolyRing ring, std::vector<Expo> raw);

    bool is_zero() const { return gens.empty(); }
    bool is_unit() const;
    bool contains(const Expo& m) const; // monomial membership
    bool is_squarefree() const;
    bool is_m_primary() const; // radical is the homogeneous maximal ideal
    long long max_exponent() const;
    bool operator==(const MonomialIdeal&) const = default;
};

// Per-variable bracket power: each generator exponent vector is scaled
// componentwise by k. Minimality of the generator list is preserved.
MonomialIdeal bracket_power(const MonomialIdeal& a, const Expo& k);
MonomialIdeal radical(const MonomialIdeal& a);

// the homogeneous maximal ideal (x_1, ..., x_d)
MonomialIdeal variables_ideal(const PolyRing& r);

// Faces are vertex bitmasks. The facet list is the inclusion-maximal faces,
// sorted. No facets = the void complex; a single empty facet = {emptyset}.
struct SimplicialComplex {
    int vertex_count = 0;
    std::vector<uint32_t> facets;

    static SimplicialComplex from_faces(int vertex_count, const std::vector<uint32_t>& faces);
    bool is_face(uint32_t f) const;
    bool is_void() const { return facets.empty(); }
    bool is_full_simplex() const;
    std::vector<uint32_t> all_faces() const; // sorted ascending
    std::vector<uint32_t> minimal_nonfaces() const;
    bool operator==(const SimplicialComplex&) const = default;
};

// Stanley-Reisner dictionary: generators of the ideal = minimal nonfaces.
MonomialIdeal stanley_reisner(const SimplicialComplex& dl, long long field_char = 0);
SimplicialComplex complex_of(const MonomialIdeal& squarefree_ideal);

// Faces of the dual are the complements of nonfaces; requires a proper
// complex (not void, not the full simplex). Involutive on proper complexes.
SimplicialComplex alexander_dual(const SimplicialComplex& dl);

SimplicialComplex link_of(const SimplicialComplex& dl, uint32_t face);
SimplicialComplex restrict_to(const SimplicialComplex& dl, uint32_t verts);

// Wire format:
//   {"num_vars": d, "field_char": c, "generators": [[e11,...,e1d], ...]}
MonomialIdeal ideal_from_json(const std::string& text);
std::string ideal_to_json(const MonomialIdeal& a);
MonomialIdeal load_ideal(const std::string& path);

} // namespace mglc
