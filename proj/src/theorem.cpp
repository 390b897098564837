#include "mglc/theorem.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <utility>

#include <json.hpp>

namespace mglc {

namespace {

using nlohmann::json;

MonomialIdeal zero_ideal(const PolyRing& r) { return MonomialIdeal::make(r, {}); }

void validate_power(const PolyRing& ring, const Expo& k) {
    if ((int)k.size() != ring.nvars) throw input_error("endomorphism exponents: wrong length");
    for (long long ki : k)
        if (ki < 1) throw input_error("endomorphism exponents must be >= 1");
}

json expo_json(const Expo& e) {
    json out = json::array();
    for (long long v : e) out.push_back(v);
    return out;
}

json ideal_json(const MonomialIdeal& a) { return json::parse(ideal_to_json(a)); }

// exact coordinates, rationals rendered as strings
json vector_json(const ExactMatrix& cols, size_t col) {
    json out = json::array();
    for (size_t i = 0; i < cols.rows(); ++i) out.push_back(cols.at(i, col).get_str());
    return out;
}

Verdict make_verdict(std::string claim, const json& instance, VerdictResult result,
                     const json& witness, const json& window, bool guaranteed) {
    Verdict v;
    v.claim = std::move(claim);
    v.instance = instance.dump();
    v.result = result;
    if (!witness.is_null()) v.witness = witness.dump();
    if (!window.is_null()) v.window = window.dump();
    v.guaranteed = guaranteed;
    return v;
}

long long floor_div(long long a, long long b) {
    // b >= 1
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

// descending odometer over the box [lo_i, hi_i]; false when some hi < lo
bool box_start_desc(const std::vector<long long>& lo, const std::vector<long long>& hi,
                    Expo& cur) {
    for (size_t i = 0; i < lo.size(); ++i)
        if (hi[i] < lo[i]) return false;
    cur.assign(hi.begin(), hi.end());
    return true;
}

bool box_next_desc(const std::vector<long long>& lo, const std::vector<long long>& hi, Expo& cur) {
    for (size_t i = 0; i < cur.size(); ++i) {
        if (cur[i] > lo[i]) {
            --cur[i];
            return true;
        }
        cur[i] = hi[i];
    }
    return false;
}

StrandTemplate dual_taylor_template(const MonomialIdeal& a) {
    return StrandTemplate::from_free(dual_complex(taylor_complex(a)), zero_ideal(a.ring));
}

} // namespace

bool PowerEndomorphism::cofinal() const {
    for (long long ki : k)
        if (ki < 2) return false;
    return !k.empty();
}

Expo PowerEndomorphism::power(int t) const {
    if (t < 0) throw input_error("negative endomorphism power");
    Expo out(k.size(), 1);
    for (int s = 0; s < t; ++s)
        for (size_t i = 0; i < k.size(); ++i) {
            out[i] *= k[i];
            if (out[i] > (1LL << 40)) throw input_error("endomorphism power overflows");
        }
    return out;
}

std::string to_string(VerdictResult r) {
    switch (r) {
    case VerdictResult::holds: return "holds";
    case VerdictResult::fails: return "fails";
    case VerdictResult::window_limited: return "window-limited";
    case VerdictResult::not_applicable: return "not-applicable";
    }
    return "unknown";
}

std::string Verdict::to_json() const {
    json out;
    out["claim"] = claim;
    out["instance"] = instance.empty() ? json(nullptr) : json::parse(instance);
    out["result"] = to_string(result);
    out["witness"] = witness.empty() ? json(nullptr) : json::parse(witness);
    out["window"] = window.empty() ? json(nullptr) : json::parse(window);
    return out.dump();
}

bool ActionOnTable::has_zero_iterate() const {
    long long n = (long long)succ.size();
    if (n == 0) return true;
    FieldSpec field = mats[0].field();
    for (long long c0 = 0; c0 < n; ++c0) {
        // walk until a chamber repeats; the tail is the cycle
        std::vector<long long> step_of(n, -1);
        std::vector<long long> order;
        long long cur = c0;
        while (step_of[cur] < 0) {
            step_of[cur] = (long long)order.size();
            order.push_back(cur);
            cur = succ[cur];
        }
        long long entry = step_of[cur];
        ExactMatrix trans = ExactMatrix::identity((size_t)table.dims[(size_t)c0], field);
        for (long long s = 0; s < entry; ++s) trans = mats[(size_t)order[(size_t)s]].mul(trans);
        long long centry = order[(size_t)entry];
        ExactMatrix cyc = ExactMatrix::identity((size_t)table.dims[(size_t)centry], field);
        for (long long s = entry; s < (long long)order.size(); ++s)
            cyc = mats[(size_t)order[(size_t)s]].mul(cyc);
        // kernels of cyc^s stabilize by s = dim, so this decides every iterate
        ExactMatrix acc = std::move(trans);
        for (long long s = 0; s < table.dims[(size_t)centry] && !acc.is_zero(); ++s)
            acc = cyc.mul(acc);
        if (!acc.is_zero()) return false;
    }
    return true;
}

ActionOnTable phi_action(const MonomialIdeal& a, const PowerEndomorphism& phi, int j) {
    validate_power(a.ring, phi.k);
    StrandTemplate t = StrandTemplate::from_cech(variables_ideal(a.ring), a);
    ChamberDecomposition cd = t.chambers();
    cd.close_under_ceil_div(phi.k);
    StrandEvaluator ev(t);
    FieldSpec field{a.ring.field_char};
    int pos = t.position(j);
    bool in_range = j >= 0 && pos >= 0 && pos <= t.length();

    ActionOnTable out;
    out.k = phi.k;
    out.table.kind = "hm";
    out.table.index = j;
    out.table.chambers = cd;
    std::map<std::string, ExactMatrix> cache;
    for (long long c = 0; c < cd.chamber_count(); ++c) {
        Expo r = cd.rep(c);
        Expo kr = scale(phi.k, r);
        out.succ.push_back(cd.chamber_of(kr));
        if (!in_range) {
            out.table.dims.push_back(0);
            out.mats.push_back(ExactMatrix(0, 0, field));
            continue;
        }
        out.table.dims.push_back(ev.dims_at(r)[(size_t)pos]);
        out.mats.push_back(induced_diagonal_map(ev, ev, r, kr, pos, cache));
    }
    return out;
}

std::vector<Verdict> check_injectivity_chain(const MonomialIdeal& a, const PowerEndomorphism& phi,
                                             int t_max, int i_max) {
    validate_power(a.ring, phi.k);
    if (t_max < 0 || i_max < 0) throw input_error("negative bound in injectivity check");
    bool guaranteed = a.is_squarefree() && phi.cofinal();
    std::vector<Verdict> out;
    for (int t = 0; t <= t_max; ++t) {
        MonomialIdeal at = bracket_power(a, phi.power(t));
        MonomialIdeal at1 = bracket_power(a, phi.power(t + 1));
        StrandTemplate ts = dual_taylor_template(at);
        StrandTemplate td = dual_taylor_template(at1);
        StrandEvaluator es(ts), ed(td);
        ChamberDecomposition cd = ChamberDecomposition::merge(ts.chambers(), td.chambers());
        int pmax = std::min(i_max, ts.length());

        // one verdict per profile pair covers every chamber slicing the same
        // pair of strand complexes; this is what keeps sweeps fast
        std::map<std::string, std::vector<char>> inj_of_profile;
        std::map<std::string, ExactMatrix> mcache;
        std::vector<long long> bad((size_t)pmax + 1, -1);
        for (long long c = 0; c < cd.chamber_count(); ++c) {
            Expo r = cd.rep(c);
            std::string key =
                ts.profile_key(es.masks_at(r)) + '|' + td.profile_key(ed.masks_at(r));
            auto it = inj_of_profile.find(key);
            if (it == inj_of_profile.end()) {
                std::vector<char> inj((size_t)pmax + 1, 1);
                for (int p = 0; p <= pmax; ++p) {
                    ExactMatrix m = induced_diagonal_map(es, ed, r, r, p, mcache);
                    inj[(size_t)p] = rank_of(m) == m.cols() ? 1 : 0;
                }
                it = inj_of_profile.emplace(std::move(key), std::move(inj)).first;
            }
            for (int i = 0; i <= pmax; ++i)
                if (!it->second[(size_t)i] && bad[(size_t)i] < 0) bad[(size_t)i] = c;
        }

        for (int i = 0; i <= i_max; ++i) {
            json inst;
            inst["ideal"] = ideal_json(a);
            inst["k"] = expo_json(phi.k);
            inst["t"] = t;
            inst["i"] = i;
            long long bc = i <= pmax ? bad[(size_t)i] : -1;
            if (bc < 0) {
                out.push_back(make_verdict("injectivity-chain", inst, VerdictResult::holds,
                                           nullptr, nullptr, guaranteed));
                continue;
            }
            Expo r = cd.rep(bc);
            ExactMatrix m = induced_diagonal_map(es, ed, r, r, i, mcache);
            ExactMatrix ker = kernel_basis(m);
            json wit;
            wit["alpha"] = expo_json(r);
            wit["source_dim"] = (long long)m.cols();
            wit["kernel_vector"] = vector_json(ker, 0);
            out.push_back(make_verdict("injectivity-chain", inst, VerdictResult::fails, wit,
                                       nullptr, guaranteed));
        }
    }
    return out;
}

Verdict check_depth_injectivity(const MonomialIdeal& a) {
    json inst;
    inst["ideal"] = ideal_json(a);
    if (a.is_unit()) {
        json wit;
        wit["reason"] = "the unit ideal has no nonzero Ext module";
        return make_verdict("depth-injectivity", inst, VerdictResult::not_applicable, wit,
                            nullptr, false);
    }
    int dep = *depth_of(a);
    inst["depth"] = dep;
    Stabilization st = ha_stabilization(a, dep);
    json win;
    win["W"] = st.window;
    win["T"] = expo_json(st.T);
    if (!st.stabilized) {
        json wit;
        wit["reason"] = "bracket powers did not stabilize within the doubling budget";
        return make_verdict("depth-injectivity", inst, VerdictResult::window_limited, wit, win,
                            false);
    }
    const GradedModuleMap& m = st.into_stable;
    for (long long c = 0; c < m.source.chambers.chamber_count(); ++c) {
        if (!chamber_window_point(m.source.chambers, c, st.window)) continue;
        const ExactMatrix& mat = m.mats[(size_t)c];
        if (rank_of(mat) == mat.cols()) continue;
        json wit;
        wit["alpha"] = expo_json(m.source.chambers.rep(c));
        wit["source_dim"] = (long long)mat.cols();
        wit["kernel_vector"] = vector_json(kernel_basis(mat), 0);
        return make_verdict("depth-injectivity", inst, VerdictResult::fails, wit, win, true);
    }
    return make_verdict("depth-injectivity", inst, VerdictResult::holds, nullptr, win, true);
}

Verdict check_purity_splitting(const MonomialIdeal& a, const PowerEndomorphism& phi) {
    validate_power(a.ring, phi.k);
    json inst;
    inst["ideal"] = ideal_json(a);
    inst["k"] = expo_json(phi.k);
    if (!a.is_squarefree()) {
        json wit;
        wit["reason"] = "the monomial splitting needs a square-free ideal";
        for (const Expo& g : a.gens)
            if (*std::max_element(g.begin(), g.end()) > 1) {
                wit["generator"] = expo_json(g);
                break;
            }
        return make_verdict("purity-splitting", inst, VerdictResult::not_applicable, wit,
                            nullptr, false);
    }

    // the splitting x^g -> x^(g/k) is well defined on R/a iff membership in a
    // is preserved backwards: x^b outside a forces x^(k*b) outside a. Both
    // sides are constant on boxes with thresholds below maxexp + 1, so the
    // box [0, W]^d sees every case.
    long long w = 1 + a.max_exponent();
    json win;
    win["W"] = w;
    int d = a.ring.nvars;
    std::vector<long long> lo((size_t)d, 0), hi((size_t)d, w);
    Expo beta;
    if (box_start_desc(lo, hi, beta)) {
        do {
            if (!a.contains(beta) && a.contains(scale(phi.k, beta))) {
                json wit;
                wit["beta"] = expo_json(beta);
                return make_verdict("purity-splitting", inst, VerdictResult::fails, wit, win,
                                    true);
            }
        } while (box_next_desc(lo, hi, beta));
    }
    return make_verdict("purity-splitting", inst, VerdictResult::holds, nullptr, win, true);
}

Verdict check_rspan_surjectivity(const MonomialIdeal& a, const PowerEndomorphism& phi, int j,
                                 long long window) {
    validate_power(a.ring, phi.k);
    if (window < 0) throw input_error("negative window");
    json inst;
    inst["ideal"] = ideal_json(a);
    inst["k"] = expo_json(phi.k);
    inst["j"] = j;
    json win;
    win["W"] = window;

    StrandTemplate t = StrandTemplate::from_cech(variables_ideal(a.ring), a);
    StrandEvaluator ev(t);
    FieldSpec field{a.ring.field_char};
    int pos = t.position(j);
    if (j < 0 || pos < 0 || pos > t.length())
        return make_verdict("rspan-surjectivity", inst, VerdictResult::holds, nullptr, win,
                            false);

    int d = a.ring.nvars;
    std::map<std::string, ExactMatrix> cache;
    std::vector<long long> lo((size_t)d, -window), hi((size_t)d, window);
    Expo alpha;
    if (!box_start_desc(lo, hi, alpha))
        return make_verdict("rspan-surjectivity", inst, VerdictResult::holds, nullptr, win,
                            false);
    do {
        long long hdim = ev.dims_at(alpha)[(size_t)pos];
        if (hdim == 0) continue;
        RankAccumulator acc((size_t)hdim, field);
        bool spanned = false;
        // images of degree beta arrive via phi-bar into degree k*beta, then
        // multiplication by x^(alpha - k*beta); scan beta from the top so the
        // spanning classes show up early
        std::vector<long long> blo((size_t)d, -window), bhi((size_t)d);
        for (int v = 0; v < d; ++v)
            bhi[(size_t)v] = std::min(window, floor_div(alpha[(size_t)v], phi.k[(size_t)v]));
        Expo beta;
        if (box_start_desc(blo, bhi, beta)) {
            do {
                if (ev.dims_at(beta)[(size_t)pos] == 0) continue;
                Expo kb = scale(phi.k, beta);
                ExactMatrix comp =
                    induced_diagonal_map(ev, ev, kb, alpha, pos, cache)
                        .mul(induced_diagonal_map(ev, ev, beta, kb, pos, cache));
                for (size_t col = 0; col < comp.cols() && !spanned; ++col) {
                    std::vector<mpq_class> v((size_t)hdim);
                    for (size_t row = 0; row < comp.rows(); ++row) v[row] = comp.at(row, col);
                    acc.add(std::move(v));
                    spanned = acc.rank() == (size_t)hdim;
                }
            } while (!spanned && box_next_desc(blo, bhi, beta));
        }
        if (!spanned) {
            // a larger window can only add spanning images, so a miss here
            // never certifies a counterexample
            json wit;
            wit["alpha"] = expo_json(alpha);
            wit["dim"] = hdim;
            wit["spanned"] = (long long)acc.rank();
            return make_verdict("rspan-surjectivity", inst, VerdictResult::window_limited, wit,
                                win, false);
        }
    } while (box_next_desc(lo, hi, alpha));
    return make_verdict("rspan-surjectivity", inst, VerdictResult::holds, nullptr, win, false);
}

std::vector<Verdict> check_vanishing_criterion(const MonomialIdeal& a,
                                               const PowerEndomorphism& phi) {
    validate_power(a.ring, phi.k);
    int d = a.ring.nvars;
    bool cof = phi.cofinal();
    std::vector<Verdict> out;
    for (int i = 0; i <= d; ++i) {
        ActionOnTable act = phi_action(a, phi, d - i);
        bool zero_iter = act.has_zero_iterate();
        bool ha_zero = ha_table(a, i).is_zero();
        json inst;
        inst["ideal"] = ideal_json(a);
        inst["k"] = expo_json(phi.k);
        inst["cofinal"] = cof;
        inst["i"] = i;
        json wit;
        if (zero_iter != ha_zero) {
            wit["action_nilpotent"] = zero_iter;
            wit["ha_zero"] = ha_zero;
        }
        out.push_back(make_verdict("vanishing-criterion", inst,
                                   zero_iter == ha_zero ? VerdictResult::holds
                                                        : VerdictResult::fails,
                                   zero_iter == ha_zero ? json(nullptr) : wit, nullptr, cof));
    }
    return out;
}

std::vector<Verdict> check_vanishing_equivalence(const SimplicialComplex& dl,
                                                 long long field_char) {
    MonomialIdeal a = stanley_reisner(dl, field_char);
    int d = dl.vertex_count;
    std::vector<Verdict> out;
    for (int i = 0; i <= d; ++i) {
        bool za = ha_table(a, i).is_zero();
        bool zm = hm_table(a, d - i).is_zero();
        json inst;
        inst["facets"] = json::array();
        for (uint32_t f : dl.facets) inst["facets"].push_back(f);
        inst["num_vars"] = d;
        inst["field_char"] = field_char;
        inst["i"] = i;
        json wit;
        if (za != zm) {
            wit["ha_zero"] = za;
            wit["hm_zero"] = zm;
        }
        out.push_back(make_verdict("vanishing-equivalence", inst,
                                   za == zm ? VerdictResult::holds : VerdictResult::fails,
                                   za == zm ? json(nullptr) : wit, nullptr, true));
    }
    return out;
}

Verdict check_ext_tor(const MonomialIdeal& a, const MonomialIdeal& b, int i) {
    json inst;
    inst["ideal_a"] = ideal_json(a);
    inst["ideal_b"] = ideal_json(b);
    inst["i"] = i;
    int d = a.ring.nvars;
    CohomologyTable lhs = ext_table(a, b, i);
    CohomologyTable rhs = tor_table(a, b, d - i);
    ChamberDecomposition cd = ChamberDecomposition::merge(lhs.chambers, rhs.chambers);
    for (long long c = 0; c < cd.chamber_count(); ++c) {
        Expo r = cd.rep(c);
        long long le = lhs.dim_at(r), rt = rhs.dim_at(r);
        if (le == rt) continue;
        json wit;
        wit["alpha"] = expo_json(r);
        wit["ext"] = le;
        wit["tor"] = rt;
        return make_verdict("ext-tor", inst, VerdictResult::fails, wit, nullptr, true);
    }
    return make_verdict("ext-tor", inst, VerdictResult::holds, nullptr, nullptr, true);
}

Verdict check_example_3_2(int d, long long field_char) {
    if (d < 1) throw input_error("the example needs at least one variable");
    PolyRing ring{d, field_char};
    validate_ring(ring);
    Expo e1((size_t)d, 0);
    e1[0] = 1;
    MonomialIdeal b = MonomialIdeal::make(ring, {e1});
    json inst;
    inst["d"] = d;
    inst["field_char"] = field_char;

    bool hm_zero = hm_table(b, d).is_zero();
    bool ext_nonzero = true;
    json wit;
    wit["hm_zero"] = hm_zero;
    for (int t = 1; t <= 2; ++t) {
        std::vector<Expo> gens;
        for (int v = 0; v < d; ++v) {
            Expo g((size_t)d, 0);
            g[(size_t)v] = 2 * t;
            gens.push_back(std::move(g));
        }
        MonomialIdeal at = MonomialIdeal::make(ring, std::move(gens));
        bool nz = !ext_table(at, b, d).is_zero();
        wit["ext_nonzero_t" + std::to_string(t)] = nz;
        ext_nonzero = ext_nonzero && nz;
    }
    bool ok = hm_zero && ext_nonzero;
    return make_verdict("depth-sensitivity-example", inst,
                        ok ? VerdictResult::holds : VerdictResult::fails,
                        ok ? json(nullptr) : wit, nullptr, true);
}

Verdict check_phi_ext_iso(const MonomialIdeal& a, const Expo& k, int i) {
    validate_power(a.ring, k);
    json inst;
    inst["ideal"] = ideal_json(a);
    inst["k"] = expo_json(k);
    inst["i"] = i;

    bool structural =
        frobenius_functor(taylor_complex(a), k) == taylor_complex(bracket_power(a, k));

    CohomologyTable lhs = ext_table(bracket_power(a, k), i);

    // other route: rescale the dualized complex first, then take strands
    StrandTemplate t =
        StrandTemplate::from_free(frobenius_functor(dual_complex(taylor_complex(a)), k),
                                  zero_ideal(a.ring));
    StrandEvaluator ev(t);
    CohomologyTable rhs;
    rhs.kind = "ext";
    rhs.index = i;
    rhs.chambers = t.chambers();
    int pos = t.position(i);
    bool in_range = i >= 0 && pos >= 0 && pos <= t.length();
    for (long long c = 0; c < rhs.chambers.chamber_count(); ++c)
        rhs.dims.push_back(in_range ? ev.dims_at(rhs.chambers.rep(c))[(size_t)pos] : 0);

    if (!structural) {
        json wit;
        wit["structural_identity"] = false;
        return make_verdict("phi-ext-iso", inst, VerdictResult::fails, wit, nullptr, true);
    }
    ChamberDecomposition cd = ChamberDecomposition::merge(lhs.chambers, rhs.chambers);
    for (long long c = 0; c < cd.chamber_count(); ++c) {
        Expo r = cd.rep(c);
        long long le = lhs.dim_at(r), rt = rhs.dim_at(r);
        if (le == rt) continue;
        json wit;
        wit["alpha"] = expo_json(r);
        wit["bracket_ext"] = le;
        wit["rescaled_ext"] = rt;
        return make_verdict("phi-ext-iso", inst, VerdictResult::fails, wit, nullptr, true);
    }
    return make_verdict("phi-ext-iso", inst, VerdictResult::holds, nullptr, nullptr, true);
}

} // namespace mglc
