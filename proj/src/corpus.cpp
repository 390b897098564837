#include "mglc/corpus.hpp"

#include <random>

namespace mglc {

namespace {

// Partial antichains are extended by strictly larger masks, so every
// antichain is produced exactly once, in a canonical order.
void extend_antichain(int n, uint32_t next, std::vector<uint32_t>& chosen,
                      std::vector<SimplicialComplex>& out) {
    out.push_back(SimplicialComplex{n, chosen});
    for (uint32_t m = next; m < (1u << n); ++m) {
        bool ok = true;
        for (uint32_t c : chosen)
            if ((c & m) == c || (c & m) == m) { ok = false; break; }
        if (!ok) continue;
        chosen.push_back(m);
        extend_antichain(n, m + 1, chosen, out);
        chosen.pop_back();
    }
}

// std::uniform_int_distribution is not pinned down by the standard; plain
// modulo of mt19937_64 draws is, and bias is irrelevant here.
long long draw(std::mt19937_64& rng, long long n) {
    return (long long)(rng() % (uint64_t)n);
}

} // namespace

std::vector<SimplicialComplex> enumerate_complexes(int n) {
    if (n < 1 || n > 8) throw input_error("complex enumeration supports 1..8 vertices");
    std::vector<SimplicialComplex> out;
    std::vector<uint32_t> chosen;
    extend_antichain(n, 0, chosen, out);
    return out;
}

MonomialIdeal random_ideal(const PolyRing& ring, long long max_exp, int max_gens, uint64_t seed) {
    std::mt19937_64 rng(seed);
    int ngens = 1 + (int)draw(rng, max_gens);
    std::vector<Expo> gens;
    for (int g = 0; g < ngens; ++g) {
        Expo e(ring.nvars, 0);
        do {
            for (int i = 0; i < ring.nvars; ++i) e[i] = draw(rng, max_exp + 1);
        } while (support_mask(e) == 0);
        gens.push_back(e);
    }
    return MonomialIdeal::make(ring, std::move(gens));
}

MonomialIdeal random_m_primary(const PolyRing& ring, long long max_exp, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Expo> gens;
    for (int i = 0; i < ring.nvars; ++i) {
        Expo e(ring.nvars, 0);
        e[i] = 1 + draw(rng, max_exp);
        gens.push_back(e);
    }
    int extra = (int)draw(rng, ring.nvars + 1);
    for (int g = 0; g < extra; ++g) {
        Expo e(ring.nvars, 0);
        do {
            for (int i = 0; i < ring.nvars; ++i) e[i] = draw(rng, max_exp + 1);
        } while (support_mask(e) == 0);
        gens.push_back(e);
    }
    return MonomialIdeal::make(ring, std::move(gens));
}

std::vector<MonomialIdeal> generate_corpus(const CorpusSpec& spec) {
    PolyRing ring{spec.num_vars, spec.field_char};
    validate_ring(ring);
    std::vector<MonomialIdeal> out;
    if (spec.mode == "all-squarefree") {
        for (const SimplicialComplex& dl : enumerate_complexes(spec.num_vars))
            out.push_back(stanley_reisner(dl, spec.field_char));
    } else if (spec.mode == "random-monomial") {
        std::mt19937_64 rng(spec.seed);
        for (int i = 0; i < spec.count; ++i)
            out.push_back(random_ideal(ring, spec.max_exponent, spec.num_vars + 2, rng()));
    } else {
        throw input_error("corpus mode must be all-squarefree or random-monomial");
    }
    return out;
}

} // namespace mglc
