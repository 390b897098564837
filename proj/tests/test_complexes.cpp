#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "mglc/complexes.hpp"
#include "mglc/corpus.hpp"
#include "mglc/linalg.hpp"
#include "mglc/monomial.hpp"

using namespace mglc;

namespace {

const PolyRing Q1{1, 0};
const PolyRing Q2{2, 0};
const PolyRing Q3{3, 0};

MonomialIdeal ideal(const PolyRing& r, std::vector<Expo> gens) {
    return MonomialIdeal::make(r, std::move(gens));
}

MonomialIdeal zero_ideal(const PolyRing& r) { return MonomialIdeal::make(r, {}); }

Expo random_degree(std::mt19937_64& rng, int n, long long lo, long long hi) {
    Expo a(n);
    for (auto& v : a) v = lo + (long long)(rng() % (unsigned long long)(hi - lo + 1));
    return a;
}

MonomialIdeal random_ideal_any(std::mt19937_64& rng, const PolyRing& r, long long max_exp) {
    int count = 1 + (int)(rng() % 4);
    std::vector<Expo> gens;
    for (int t = 0; t < count; ++t) {
        Expo g = random_degree(rng, r.nvars, 0, max_exp);
        bool all_zero = true;
        for (long long v : g) all_zero &= (v == 0);
        if (all_zero) g[rng() % r.nvars] = 1;
        gens.push_back(g);
    }
    return MonomialIdeal::make(r, gens);
}

// The degree alpha piece of R/a is K exactly when x^alpha is outside a; the
// Taylor strand must resolve it, making this a membership-driven oracle for
// the whole complex.
void check_taylor_strand(const MonomialIdeal& a, const Expo& alpha) {
    StrandTemplate t = StrandTemplate::from_free(taylor_complex(a), zero_ideal(a.ring));
    FiniteComplex c = t.complex_at(alpha);
    long long expect_h0 = (is_nonnegative(alpha) && !a.contains(alpha)) ? 1 : 0;
    CHECK(c.cohomology_dim(t.position(0)) == expect_h0);
    for (int j = 1; j <= t.length(); ++j) CHECK(c.cohomology_dim(t.position(j)) == 0);
}

} // namespace

TEST_CASE("monomial matrix product, cancellation, transpose") {
    MonomialMatrix a(1, 1);
    a.add_term(0, 0, 1, {1, 0});
    a.add_term(0, 0, -1, {0, 1});
    MonomialMatrix b(1, 1);
    b.add_term(0, 0, 1, {0, 1});
    MonomialMatrix p = a.mul(b);
    REQUIRE(p.at(0, 0).size() == 2);
    CHECK(p.at(0, 0)[0] == SignedMonomial{-1, {0, 2}});
    CHECK(p.at(0, 0)[1] == SignedMonomial{1, {1, 1}});

    MonomialMatrix c(1, 1);
    c.add_term(0, 0, 1, {1, 1});
    c.add_term(0, 0, -1, {1, 1});
    CHECK(c.is_zero());
    CHECK(c.at(0, 0).empty());

    MonomialMatrix d(2, 1);
    d.add_term(1, 0, 3, {2});
    CHECK(d.transpose().at(0, 1) == std::vector<SignedMonomial>{{3, {2}}});
    CHECK(d.transpose().transpose() == d);
}

TEST_CASE("taylor complex of (xy, x^2) is the frozen two generator complex") {
    MonomialIdeal a = ideal(Q2, {{1, 1}, {2, 0}});
    REQUIRE(a.gens == std::vector<Expo>{{1, 1}, {2, 0}});
    GradedFreeComplex t = taylor_complex(a);
    t.validate();
    CHECK(t.homological);
    REQUIRE(t.terms.size() == 3);
    CHECK(t.terms[0] == std::vector<Expo>{{0, 0}});
    CHECK(t.terms[1] == std::vector<Expo>{{1, 1}, {2, 0}});
    CHECK(t.terms[2] == std::vector<Expo>{{2, 1}});
    CHECK(t.labels[1] == std::vector<uint32_t>{1, 2});
    // d1 = (x y, x^2), d2 = (-x, y)^T
    CHECK(t.maps[0].at(0, 0) == std::vector<SignedMonomial>{{1, {1, 1}}});
    CHECK(t.maps[0].at(0, 1) == std::vector<SignedMonomial>{{1, {2, 0}}});
    CHECK(t.maps[1].at(0, 0) == std::vector<SignedMonomial>{{-1, {1, 0}}});
    CHECK(t.maps[1].at(1, 0) == std::vector<SignedMonomial>{{1, {0, 1}}});
}

TEST_CASE("validate rejects degree mismatches and nonzero compositions") {
    MonomialIdeal a = ideal(Q2, {{1, 1}, {2, 0}});
    GradedFreeComplex t = taylor_complex(a);

    GradedFreeComplex wrong_degree = t;
    MonomialMatrix m0(1, 2);
    m0.add_term(0, 0, 1, {1, 1});
    m0.add_term(0, 1, 1, {2, 1}); // does not match the twist difference
    wrong_degree.maps[0] = m0;
    CHECK_THROWS_AS(wrong_degree.validate(), std::logic_error);

    GradedFreeComplex wrong_sign = t;
    MonomialMatrix m1(2, 1);
    m1.add_term(0, 0, 1, {1, 0}); // sign flip breaks d1 d2 = 0
    m1.add_term(1, 0, 1, {0, 1});
    wrong_sign.maps[1] = m1;
    CHECK_THROWS_AS(wrong_sign.validate(), std::logic_error);

    GradedFreeComplex short_maps = t;
    short_maps.maps.pop_back();
    CHECK_THROWS_AS(short_maps.validate(), std::logic_error);
}

TEST_CASE("taylor strands resolve the quotient in every degree") {
    std::mt19937_64 rng(101);
    // handpicked: zero ideal, unit ideal, principal, m-primary, non squarefree
    std::vector<MonomialIdeal> pool = {
        zero_ideal(Q2),
        ideal(Q2, {{0, 0}}),
        ideal(Q2, {{1, 1}}),
        ideal(Q2, {{2, 0}, {0, 2}, {1, 1}}),
        ideal(Q3, {{2, 1, 0}, {0, 1, 2}, {1, 0, 1}}),
    };
    for (const auto& a : pool)
        for (int trial = 0; trial < 30; ++trial)
            check_taylor_strand(a, random_degree(rng, a.ring.nvars, -2, 4));
    for (int round = 0; round < 12; ++round) {
        MonomialIdeal a = random_ideal_any(rng, round % 2 ? Q3 : Q2, 3);
        for (int trial = 0; trial < 15; ++trial)
            check_taylor_strand(a, random_degree(rng, a.ring.nvars, -2, 5));
    }
}

TEST_CASE("dual complex is an involution and shifts strands correctly") {
    std::mt19937_64 rng(103);
    for (int round = 0; round < 10; ++round) {
        MonomialIdeal a = random_ideal_any(rng, Q2, 3);
        GradedFreeComplex t = taylor_complex(a);
        GradedFreeComplex d = dual_complex(t);
        d.validate();
        CHECK(!d.homological);
        CHECK(dual_complex(d) == t);
    }

    // ext of R/(x) into R, read off the dual strand: one class in
    // cohomological degree 1, sitting in multidegree -1
    MonomialIdeal x = ideal(Q1, {{1}});
    StrandTemplate dual = StrandTemplate::from_free(dual_complex(taylor_complex(x)), zero_ideal(Q1));
    for (long long v = -3; v <= 3; ++v) {
        FiniteComplex c = dual.complex_at({v});
        CHECK(c.cohomology_dim(0) == 0);
        CHECK(c.cohomology_dim(1) == (v == -1 ? 1 : 0));
    }
}

TEST_CASE("frobenius rescaling of a taylor complex is the taylor complex of the bracket power") {
    std::mt19937_64 rng(107);
    for (int round = 0; round < 16; ++round) {
        const PolyRing& r = round % 2 ? Q3 : Q2;
        MonomialIdeal a = random_ideal_any(rng, r, 3);
        Expo k = random_degree(rng, r.nvars, 1, 3);
        GradedFreeComplex lhs = frobenius_functor(taylor_complex(a), k);
        GradedFreeComplex rhs = taylor_complex(bracket_power(a, k));
        lhs.validate();
        CHECK(lhs == rhs);
    }
    MonomialIdeal a = ideal(Q2, {{1, 1}, {2, 0}});
    CHECK(frobenius_functor(taylor_complex(a), {1, 1}) == taylor_complex(a));
    CHECK_THROWS_AS((void)frobenius_functor(taylor_complex(a), {0, 1}), input_error);
}

TEST_CASE("comparison chain maps commute with the differentials and compose") {
    std::mt19937_64 rng(109);
    for (int round = 0; round < 12; ++round) {
        const PolyRing& r = round % 2 ? Q3 : Q2;
        MonomialIdeal a = random_ideal_any(rng, r, 2);
        Expo k = random_degree(rng, r.nvars, 1, 2);
        Expo kk = lcm_of(k, random_degree(rng, r.nvars, 1, 3)); // componentwise max >= k
        GradedFreeComplex coarse = taylor_complex(bracket_power(a, k));
        GradedFreeComplex fine = taylor_complex(bracket_power(a, kk));
        std::vector<MonomialMatrix> f = comparison_chain_map(a, k, kk);
        REQUIRE((int)f.size() == coarse.length() + 1);
        for (int s = 1; s <= coarse.length(); ++s)
            CHECK(coarse.maps[s - 1].mul(f[s]) == f[s - 1].mul(fine.maps[s - 1]));

        Expo kkk = lcm_of(kk, random_degree(rng, r.nvars, 1, 4));
        std::vector<MonomialMatrix> g = comparison_chain_map(a, kk, kkk);
        std::vector<MonomialMatrix> h = comparison_chain_map(a, k, kkk);
        for (size_t s = 0; s < f.size(); ++s) CHECK(h[s] == f[s].mul(g[s]));
    }
    MonomialIdeal a = ideal(Q2, {{1, 1}});
    CHECK_THROWS_AS((void)comparison_chain_map(a, {2, 2}, {1, 1}), input_error);
}

TEST_CASE("cech strands: frozen local cohomology of small modules") {
    // H_(x) of R in one variable: a single class in degree <= -1, at spot 1
    MonomialIdeal x = ideal(Q1, {{1}});
    StrandTemplate cech = StrandTemplate::from_cech(x, zero_ideal(Q1));
    for (long long v = -4; v <= 3; ++v) {
        FiniteComplex c = cech.complex_at({v});
        CHECK(c.cohomology_dim(0) == 0);
        CHECK(c.cohomology_dim(1) == (v <= -1 ? 1 : 0));
    }

    // H_(x) of R/(x^2): torsion module, everything sits in H^0, degrees 0 and 1
    MonomialIdeal x2 = ideal(Q1, {{2}});
    StrandTemplate tor = StrandTemplate::from_cech(x2, x2);
    for (long long v = -2; v <= 4; ++v) {
        FiniteComplex c = tor.complex_at({v});
        CHECK(c.cohomology_dim(0) == ((v == 0 || v == 1) ? 1 : 0));
        CHECK(c.cohomology_dim(1) == 0);
    }

    // H_m of R in two variables: top cohomology spanned by degrees <= (-1,-1)
    MonomialIdeal m2 = ideal(Q2, {{1, 0}, {0, 1}});
    StrandTemplate local = StrandTemplate::from_cech(m2, zero_ideal(Q2));
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 40; ++trial) {
        Expo al = random_degree(rng, 2, -3, 2);
        FiniteComplex c = local.complex_at(al);
        CHECK(c.cohomology_dim(0) == 0);
        CHECK(c.cohomology_dim(1) == 0);
        CHECK(c.cohomology_dim(2) == ((al[0] <= -1 && al[1] <= -1) ? 1 : 0));
    }

    // H_m of R/(xy): one class whenever alpha <= 0 lives on a single axis
    MonomialIdeal xy = ideal(Q2, {{1, 1}});
    StrandTemplate axes = StrandTemplate::from_cech(m2, xy);
    for (int trial = 0; trial < 40; ++trial) {
        Expo al = random_degree(rng, 2, -3, 2);
        FiniteComplex c = axes.complex_at(al);
        bool on_axis = (al[0] <= 0 && al[1] <= 0) && (al[0] == 0 || al[1] == 0);
        CHECK(c.cohomology_dim(0) == 0);
        CHECK(c.cohomology_dim(1) == (on_axis ? 1 : 0));
        CHECK(c.cohomology_dim(2) == 0);
    }

    // localization of a torsion module vanishes: the inverted summand of
    // Cech(x^2) over R/(x^2) is dead in every degree
    for (long long v = -2; v <= 4; ++v) CHECK(tor.masks_at({v})[1][0] == 0);
}

TEST_CASE("zero and unit ideals have the expected cech strands") {
    StrandTemplate whole = StrandTemplate::from_cech(zero_ideal(Q2), zero_ideal(Q2));
    CHECK(whole.length() == 0);
    FiniteComplex c = whole.complex_at({2, 3});
    CHECK(c.cohomology_dim(0) == 1); // supported everywhere: H^0 is all of R
    CHECK(whole.complex_at({-1, 0}).cohomology_dim(0) == 0);

    StrandTemplate unit = StrandTemplate::from_cech(ideal(Q2, {{0, 0}}), zero_ideal(Q2));
    std::mt19937_64 rng(127);
    for (int trial = 0; trial < 20; ++trial) {
        FiniteComplex u = unit.complex_at(random_degree(rng, 2, -2, 2));
        for (int i = 0; i <= unit.length(); ++i) CHECK(u.cohomology_dim(i) == 0);
    }
}

TEST_CASE("chambers: frozen counts, coherence of rep and chamber_of") {
    // hm template of R/(x^2): thresholds 0 and 2, then doubling closure adds 1
    MonomialIdeal x = ideal(Q1, {{1}});
    MonomialIdeal x2 = ideal(Q1, {{2}});
    ChamberDecomposition cd = StrandTemplate::from_cech(x, x2).chambers();
    CHECK(cd.thresholds[0] == std::vector<long long>{0, 2});
    CHECK(cd.chamber_count() == 3);
    cd.close_under_ceil_div({2});
    CHECK(cd.thresholds[0] == std::vector<long long>{0, 1, 2});
    CHECK(cd.chamber_count() == 4);
    CHECK(cd.rep(0) == Expo{-1});
    CHECK(cd.rep(1) == Expo{0});
    CHECK(cd.rep(2) == Expo{1});
    CHECK(cd.rep(3) == Expo{2});
    CHECK(!cd.lower(0, 0).has_value());
    CHECK(cd.upper(0, 0) == -1);
    CHECK(cd.lower(0, 3) == 2);
    CHECK(!cd.upper(0, 3).has_value());

    // koszul-type template on two variables cuts the plane into nine boxes
    MonomialIdeal m2 = ideal(Q2, {{1, 0}, {0, 1}});
    StrandTemplate dual = StrandTemplate::from_free(dual_complex(taylor_complex(m2)), zero_ideal(Q2));
    ChamberDecomposition k2 = dual.chambers();
    CHECK(k2.chamber_count() == 9);
    CHECK(k2.thresholds[0] == std::vector<long long>{-1, 0});
    CHECK(k2.thresholds[1] == std::vector<long long>{-1, 0});

    for (long long idx = 0; idx < k2.chamber_count(); ++idx)
        CHECK(k2.chamber_of(k2.rep(idx)) == idx);
}

TEST_CASE("survival profiles are constant on chambers") {
    std::mt19937_64 rng(131);
    for (int round = 0; round < 12; ++round) {
        const PolyRing& r = round % 2 ? Q3 : Q2;
        MonomialIdeal a = random_ideal_any(rng, r, 3);
        MonomialIdeal b = (round % 3 == 0) ? zero_ideal(r) : random_ideal_any(rng, r, 2);
        StrandTemplate t = (round % 2 == 0)
                               ? StrandTemplate::from_cech(a, b)
                               : StrandTemplate::from_free(dual_complex(taylor_complex(a)), b);
        ChamberDecomposition cd = t.chambers();
        for (int trial = 0; trial < 20; ++trial) {
            long long idx = (long long)(rng() % (unsigned long long)cd.chamber_count());
            Expo rep = cd.rep(idx);
            CHECK(cd.chamber_of(rep) == idx);
            auto digits = cd.decode(idx);
            Expo probe = rep;
            for (int i = 0; i < r.nvars; ++i) {
                auto lo = cd.lower(i, digits[i]), hi = cd.upper(i, digits[i]);
                long long lo_v = lo ? *lo : rep[i] - 4;
                long long hi_v = hi ? *hi : rep[i] + 4;
                probe[i] = lo_v + (long long)(rng() % (unsigned long long)(hi_v - lo_v + 1));
            }
            CHECK(cd.chamber_of(probe) == idx);
            CHECK(t.masks_at(probe) == t.masks_at(rep));
        }
    }
}

TEST_CASE("chamber merge refines both inputs") {
    MonomialIdeal a = ideal(Q2, {{2, 0}, {0, 3}});
    MonomialIdeal b = ideal(Q2, {{1, 1}});
    ChamberDecomposition ca = StrandTemplate::from_cech(ideal(Q2, {{1, 0}, {0, 1}}), a).chambers();
    ChamberDecomposition cb = StrandTemplate::from_cech(ideal(Q2, {{1, 0}, {0, 1}}), b).chambers();
    ChamberDecomposition m = ChamberDecomposition::merge(ca, cb);
    for (int i = 0; i < 2; ++i) {
        for (long long t : ca.thresholds[i])
            CHECK(std::binary_search(m.thresholds[i].begin(), m.thresholds[i].end(), t));
        for (long long t : cb.thresholds[i])
            CHECK(std::binary_search(m.thresholds[i].begin(), m.thresholds[i].end(), t));
    }
}

TEST_CASE("strand templates over a finite field reduce coefficients") {
    PolyRing f2{2, 2};
    MonomialIdeal a = MonomialIdeal::make(f2, {{1, 1}, {2, 0}});
    StrandTemplate t = StrandTemplate::from_free(taylor_complex(a), MonomialIdeal::make(f2, {}));
    std::mt19937_64 rng(137);
    for (int trial = 0; trial < 25; ++trial) {
        Expo al = random_degree(rng, 2, -1, 4);
        FiniteComplex c = t.complex_at(al); // signs collapse mod 2; d d = 0 must survive
        long long expect_h0 = (is_nonnegative(al) && !a.contains(al)) ? 1 : 0;
        CHECK(c.cohomology_dim(t.position(0)) == expect_h0);
        for (int j = 1; j <= t.length(); ++j) CHECK(c.cohomology_dim(t.position(j)) == 0);
    }
}
