// Test corpora: exhaustive square-free families via simplicial complex
// enumeration, and seeded random monomial ideals.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mglc/monomial.hpp"

namespace mglc {

struct CorpusSpec {
    int num_vars = 3;
    std::string mode = "all-squarefree"; // or "random-monomial"
    long long max_exponent = 3;
    int count = 0;        // random mode only
    uint64_t seed = 1;    // random mode only
    long long field_char = 0;
};

// Every simplicial complex on n labeled vertices, exactly once, as facet
// antichains in a fixed order. Includes the void complex and the full simplex.
std::vector<SimplicialComplex> enumerate_complexes(int n);

std::vector<MonomialIdeal> generate_corpus(const CorpusSpec& spec);

// Seeded helpers used by the checks and the acceptance suite.
MonomialIdeal random_ideal(const PolyRing& ring, long long max_exp, int max_gens, uint64_t seed);
MonomialIdeal random_m_primary(const PolyRing& ring, long long max_exp, uint64_t seed);

} // namespace mglc
