#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <random>
#include <vector>

#include "mglc/engine.hpp"
#include "mglc/monomial.hpp"
#include "mglc/theorem.hpp"

using namespace mglc;
using nlohmann::json;

namespace {

const PolyRing Q1{1, 0};
const PolyRing Q2{2, 0};
const PolyRing Q3{3, 0};

MonomialIdeal ideal(const PolyRing& r, std::vector<Expo> gens) {
    return MonomialIdeal::make(r, std::move(gens));
}

PowerEndomorphism endo(Expo k) { return PowerEndomorphism{std::move(k)}; }

MonomialIdeal random_ideal_any(std::mt19937_64& rng, const PolyRing& r, long long max_exp) {
    int count = 1 + (int)(rng() % 4);
    std::vector<Expo> gens;
    for (int t = 0; t < count; ++t) {
        Expo g(r.nvars);
        for (auto& v : g) v = (long long)(rng() % (unsigned long long)(max_exp + 1));
        bool all_zero = true;
        for (long long v : g) all_zero &= (v == 0);
        if (all_zero) g[rng() % r.nvars] = 1;
        gens.push_back(g);
    }
    return MonomialIdeal::make(r, gens);
}

std::vector<Expo> box_points(int d, long long w) {
    std::vector<Expo> out;
    Expo cur((size_t)d, -w);
    while (true) {
        out.push_back(cur);
        int i = 0;
        while (i < d && cur[(size_t)i] == w) cur[(size_t)i++] = -w;
        if (i == d) break;
        ++cur[(size_t)i];
    }
    return out;
}

} // namespace

TEST_CASE("power endomorphism basics") {
    CHECK(endo({2, 2}).cofinal());
    CHECK(endo({2, 3}).cofinal());
    CHECK_FALSE(endo({1, 2}).cofinal());
    CHECK_FALSE(endo({}).cofinal());
    CHECK(endo({2, 3}).power(0) == Expo{1, 1});
    CHECK(endo({2, 3}).power(3) == Expo{8, 27});
    CHECK_THROWS_AS(endo({2}).power(-1), input_error);
    CHECK_THROWS_AS(endo({2}).power(1000), input_error);
}

TEST_CASE("verdict json shape and determinism") {
    Verdict v = check_depth_injectivity(ideal(Q2, {{1, 0}, {0, 1}}));
    CHECK(v.result == VerdictResult::holds);
    CHECK(v.guaranteed);
    std::string s1 = v.to_json();
    std::string s2 = v.to_json();
    CHECK(s1 == s2);
    json j = json::parse(s1);
    CHECK(j["claim"] == "depth-injectivity");
    CHECK(j["result"] == "holds");
    CHECK(j["witness"].is_null());
    CHECK(j["window"]["W"] == 2);
    CHECK(j["instance"]["depth"] == 2);
    CHECK(j["instance"]["ideal"]["num_vars"] == 2);

    CHECK(to_string(VerdictResult::window_limited) == "window-limited");
    CHECK(to_string(VerdictResult::not_applicable) == "not-applicable");
}

TEST_CASE("phi action on H^0 of x^2") {
    // H^0_m(R/(x^2)) is spanned by 1 and x; phi-bar fixes 1 and kills x
    ActionOnTable act = phi_action(ideal(Q1, {{2}}), endo({2}), 0);
    const ChamberDecomposition& cd = act.table.chambers;
    CHECK(act.table.dim_at({0}) == 1);
    CHECK(act.table.dim_at({1}) == 1);
    CHECK(act.table.dim_at({-1}) == 0);
    CHECK(act.table.dim_at({2}) == 0);

    long long c0 = cd.chamber_of({0}), c1 = cd.chamber_of({1});
    CHECK(act.succ[(size_t)c0] == c0);
    CHECK(act.mats[(size_t)c0].rows() == 1);
    CHECK(act.mats[(size_t)c0].at(0, 0) == mpq_class(1));
    CHECK(act.succ[(size_t)c1] == cd.chamber_of({2}));
    CHECK(act.mats[(size_t)c1].rows() == 0);
    CHECK(act.mats[(size_t)c1].cols() == 1);

    // the identity loop at the origin survives every iterate
    CHECK_FALSE(act.has_zero_iterate());
}

TEST_CASE("phi action nilpotent on H^0 of (x^2, xy)") {
    // H^0_m is the one dimensional socle spanned by x, and phi-bar(x) = x^2 = 0
    MonomialIdeal a = ideal(Q2, {{2, 0}, {1, 1}});
    ActionOnTable act = phi_action(a, endo({2, 2}), 0);
    CHECK(act.table.dim_at({1, 0}) == 1);
    CHECK(act.table.dim_at({0, 0}) == 0);
    CHECK(act.table.dim_at({2, 0}) == 0);
    CHECK_FALSE(act.table.is_zero());
    CHECK(act.has_zero_iterate());
    CHECK(ha_table(a, 2).is_zero());

    // H^1_m(R/(x^2,xy)) carries the everlasting K[y] tail
    ActionOnTable tail = phi_action(a, endo({2, 2}), 1);
    CHECK(tail.table.dim_at({0, -1}) == 1);
    CHECK_FALSE(tail.has_zero_iterate());
    CHECK_FALSE(ha_table(a, 1).is_zero());
}

TEST_CASE("phi action composes functorially") {
    // matrices of phi^2 equal the composite of two phi steps at every degree
    for (const MonomialIdeal& a :
         {ideal(Q2, {{1, 1}}), ideal(Q2, {{2, 0}, {1, 1}}), ideal(Q2, {{1, 0}, {0, 2}})}) {
        PowerEndomorphism phi = endo({2, 2});
        PowerEndomorphism phi2 = endo({4, 4});
        for (int j = 0; j <= 2; ++j) {
            ActionOnTable one = phi_action(a, phi, j);
            ActionOnTable two = phi_action(a, phi2, j);
            for (const Expo& alpha : box_points(2, 2)) {
                long long c = one.table.chambers.chamber_of(alpha);
                long long cs = one.succ[(size_t)c];
                ExactMatrix composite = one.mats[(size_t)cs].mul(one.mats[(size_t)c]);
                long long c2 = two.table.chambers.chamber_of(alpha);
                CHECK(composite == two.mats[(size_t)c2]);
            }
        }
    }
}

TEST_CASE("hand built automata") {
    FieldSpec q{0};
    ActionOnTable act;
    act.table.dims = {1, 1};
    act.succ = {1, 1};
    ExactMatrix step(1, 1, q), zero(1, 1, q);
    step.set_int(0, 0, 1);

    act.mats = {step, zero};
    CHECK(act.has_zero_iterate());
    act.mats = {step, step};
    CHECK_FALSE(act.has_zero_iterate());

    // transient into a nilpotent 2x2 cycle
    act.table.dims = {1, 2};
    ExactMatrix into(2, 1, q), nil(2, 2, q);
    into.set_int(0, 0, 1);
    nil.set_int(0, 1, 1);
    act.mats = {into, nil};
    CHECK(act.has_zero_iterate());

    ActionOnTable empty;
    CHECK(empty.has_zero_iterate());
}

TEST_CASE("injectivity chain verdicts match the direct chain maps") {
    std::mt19937_64 rng(411);
    std::vector<MonomialIdeal> pool = {
        ideal(Q2, {{2, 0}, {1, 1}}),
        ideal(Q2, {{1, 1}}),
        ideal(Q2, {{1, 0}, {0, 1}}),
        ideal(Q2, {{2, 0}, {0, 3}}),
        ideal(Q3, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}),
    };
    for (int r = 0; r < 3; ++r) pool.push_back(random_ideal_any(rng, Q2, 3));

    for (const MonomialIdeal& a : pool) {
        int d = a.ring.nvars;
        Expo kv((size_t)d, 2);
        kv[0] = 3;
        PowerEndomorphism phi = endo(kv);
        std::vector<Verdict> vs = check_injectivity_chain(a, phi, 1, d);
        REQUIRE((int)vs.size() == 2 * (d + 1));
        size_t at = 0;
        for (int t = 0; t <= 1; ++t)
            for (int i = 0; i <= d; ++i, ++at) {
                GradedModuleMap m = ext_chain_map(a, phi.power(t), phi.power(t + 1), i);
                CHECK((vs[at].result == VerdictResult::holds) == m.injective_everywhere());
                CHECK(vs[at].guaranteed == (a.is_squarefree() && phi.cofinal()));
                json inst = json::parse(vs[at].instance);
                CHECK(inst["t"] == t);
                CHECK(inst["i"] == i);
                if (vs[at].result == VerdictResult::fails) {
                    json wit = json::parse(vs[at].witness);
                    CHECK(wit["kernel_vector"].is_array());
                    CHECK(!wit["kernel_vector"].empty());
                }
            }
    }
}

TEST_CASE("injectivity chain holds on square-free examples") {
    for (const MonomialIdeal& a :
         {ideal(Q3, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}), ideal(Q2, {{1, 0}, {0, 1}}),
          ideal(Q2, {{1, 1}})}) {
        for (const Verdict& v :
             check_injectivity_chain(a, endo(Expo((size_t)a.ring.nvars, 2)), 1, a.ring.nvars)) {
            CHECK(v.result == VerdictResult::holds);
            CHECK(v.guaranteed);
        }
    }
}

TEST_CASE("depth injectivity") {
    for (const MonomialIdeal& a :
         {ideal(Q2, {{2, 1}}), ideal(Q2, {{2, 0}, {1, 1}}), ideal(Q2, {{1, 0}, {0, 1}}),
          ideal(Q3, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}), ideal(Q2, {})}) {
        Verdict v = check_depth_injectivity(a);
        CHECK(v.result == VerdictResult::holds);
        CHECK(v.guaranteed);
        CHECK(!v.window.empty());
    }
    Verdict u = check_depth_injectivity(ideal(Q2, {{0, 0}}));
    CHECK(u.result == VerdictResult::not_applicable);
    CHECK_FALSE(u.guaranteed);
}

TEST_CASE("purity splitting") {
    Verdict sf = check_purity_splitting(ideal(Q3, {{1, 1, 0}, {0, 1, 1}}), endo({2, 3, 2}));
    CHECK(sf.result == VerdictResult::holds);
    CHECK(sf.guaranteed);
    CHECK(json::parse(sf.window)["W"] == 2);

    Verdict na = check_purity_splitting(ideal(Q1, {{2}}), endo({2}));
    CHECK(na.result == VerdictResult::not_applicable);
    CHECK_FALSE(na.guaranteed);
    CHECK(json::parse(na.witness)["generator"] == json::parse("[2]"));

    std::mt19937_64 rng(77);
    for (int r = 0; r < 5; ++r) {
        MonomialIdeal a = radical(random_ideal_any(rng, Q3, 3));
        Verdict v = check_purity_splitting(a, endo({2, 2, 2}));
        CHECK(v.result == VerdictResult::holds);
    }
    CHECK_THROWS_AS(check_purity_splitting(ideal(Q2, {{1, 1}}), endo({2})), input_error);
}

TEST_CASE("rspan surjectivity") {
    // every class of H^1_m(R/(xy)) is a monomial times a phi-bar image
    Verdict v = check_rspan_surjectivity(ideal(Q2, {{1, 1}}), endo({2, 2}), 1, 4);
    CHECK(v.result == VerdictResult::holds);
    CHECK_FALSE(v.guaranteed);
    CHECK(json::parse(v.window)["W"] == 4);

    CHECK(check_rspan_surjectivity(ideal(Q2, {{1, 1}}), endo({2, 2}), 0, 3).result ==
          VerdictResult::holds);
    CHECK(check_rspan_surjectivity(ideal(Q1, {{3}}), endo({2}), 0, 4).result ==
          VerdictResult::holds);
    CHECK(check_rspan_surjectivity(ideal(Q2, {{1, 0}, {0, 1}}), endo({3, 2}), 0, 3).result ==
          VerdictResult::holds);
    CHECK_THROWS_AS(check_rspan_surjectivity(ideal(Q1, {{1}}), endo({2}), 0, -1), input_error);
}

TEST_CASE("vanishing criterion") {
    for (const MonomialIdeal& a :
         {ideal(Q2, {{2, 0}, {1, 1}}), ideal(Q2, {{1, 1}}), ideal(Q2, {{2, 0}, {0, 2}}),
          ideal(Q2, {}), ideal(Q2, {{0, 0}}), ideal(Q3, {{1, 1, 0}, {2, 0, 1}})}) {
        std::vector<Verdict> vs = check_vanishing_criterion(a, endo(Expo((size_t)a.ring.nvars, 2)));
        REQUIRE((int)vs.size() == a.ring.nvars + 1);
        for (const Verdict& v : vs) {
            CHECK(v.result == VerdictResult::holds);
            CHECK(v.guaranteed);
        }
    }
    // non-cofinal exponents demote the verdicts to exploratory
    for (const Verdict& v : check_vanishing_criterion(ideal(Q2, {{1, 1}}), endo({1, 2})))
        CHECK_FALSE(v.guaranteed);
}

TEST_CASE("vanishing equivalence over all small complexes") {
    for (int n = 1; n <= 3; ++n) {
        std::vector<uint32_t> all;
        for (uint32_t m = 0; m < (1u << n); ++m) all.push_back(m);
        // every support-closed family arises from a facet list; enumerate by
        // picking arbitrary subsets of masks as candidate faces
        for (uint32_t pick = 0; pick < (1u << (1u << n)); ++pick) {
            std::vector<uint32_t> faces;
            for (uint32_t m = 0; m < (1u << n); ++m)
                if (pick & (1u << m)) faces.push_back(m);
            SimplicialComplex dl = SimplicialComplex::from_faces(n, faces);
            for (const Verdict& v : check_vanishing_equivalence(dl)) {
                CHECK(v.result == VerdictResult::holds);
                CHECK(v.guaranteed);
            }
            if (n == 3 && (pick % 7 == 0))
                for (const Verdict& v : check_vanishing_equivalence(dl, 2))
                    CHECK(v.result == VerdictResult::holds);
        }
    }
}

TEST_CASE("ext tor verdicts") {
    for (int i = 0; i <= 3; ++i) {
        Verdict v = check_ext_tor(ideal(Q2, {{1, 0}, {0, 1}}), ideal(Q2, {{1, 0}}), i);
        CHECK(v.result == VerdictResult::holds);
        CHECK(v.guaranteed);
    }
    CHECK(check_ext_tor(ideal(Q2, {{2, 0}, {1, 1}, {0, 2}}), ideal(Q2, {{1, 0}, {0, 1}}), 2)
              .result == VerdictResult::holds);
    CHECK_THROWS_AS(check_ext_tor(ideal(Q2, {{1, 1}}), ideal(Q2, {{1, 0}}), 1), input_error);
}

TEST_CASE("the depth sensitivity example") {
    for (int d = 1; d <= 3; ++d) {
        Verdict v = check_example_3_2(d);
        CHECK(v.result == VerdictResult::holds);
        CHECK(v.guaranteed);
        CHECK(json::parse(v.instance)["d"] == d);
    }
    CHECK(check_example_3_2(2, 5).result == VerdictResult::holds);
    CHECK_THROWS_AS(check_example_3_2(0), input_error);
}

TEST_CASE("phi ext iso") {
    CHECK(check_phi_ext_iso(ideal(Q3, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}), {2, 2, 2}, 2).result ==
          VerdictResult::holds);
    CHECK(check_phi_ext_iso(ideal(Q2, {{2, 0}, {0, 3}}), {2, 1}, 2).result ==
          VerdictResult::holds);
    std::mt19937_64 rng(1105);
    for (int r = 0; r < 6; ++r) {
        MonomialIdeal a = random_ideal_any(rng, Q2, 3);
        Expo k = {1 + (long long)(rng() % 3), 1 + (long long)(rng() % 3)};
        for (int i = 0; i <= 2; ++i) {
            Verdict v = check_phi_ext_iso(a, k, i);
            CHECK(v.result == VerdictResult::holds);
            CHECK(v.guaranteed);
        }
    }
    CHECK_THROWS_AS(check_phi_ext_iso(ideal(Q2, {{1, 1}}), {2}, 1), input_error);
    CHECK_THROWS_AS(check_phi_ext_iso(ideal(Q2, {{1, 1}}), {2, 0}, 1), input_error);
}
