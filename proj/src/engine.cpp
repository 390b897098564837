#include "mglc/engine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace mglc {

namespace {

MonomialIdeal zero_ideal(const PolyRing& r) { return MonomialIdeal::make(r, {}); }

// table whose chamber dims are the strand cohomology of t in one math degree
CohomologyTable table_of(std::string kind, int index, const StrandTemplate& t, int math_degree) {
    StrandEvaluator ev(t);
    ChamberDecomposition cd = ev.tmpl().chambers();
    int pos = ev.tmpl().position(math_degree);
    bool in_range = pos >= 0 && pos <= ev.tmpl().length();
    CohomologyTable out{std::move(kind), index, cd, {}};
    out.dims.reserve((size_t)cd.chamber_count());
    for (long long c = 0; c < cd.chamber_count(); ++c)
        out.dims.push_back(in_range ? ev.dims_at(cd.rep(c))[(size_t)pos] : 0);
    return out;
}

StrandTemplate ext_template(const MonomialIdeal& a, const MonomialIdeal& coeffs) {
    return StrandTemplate::from_free(dual_complex(taylor_complex(a)), coeffs);
}

bool tables_agree_on_window(const CohomologyTable& x, const CohomologyTable& y, long long w) {
    ChamberDecomposition cd = ChamberDecomposition::merge(x.chambers, y.chambers);
    for (long long c = 0; c < cd.chamber_count(); ++c) {
        auto pt = chamber_window_point(cd, c, w);
        if (pt && x.dim_at(*pt) != y.dim_at(*pt)) return false;
    }
    return true;
}

bool map_iso_on_window(const GradedModuleMap& m, long long w) {
    const ChamberDecomposition& cd = m.source.chambers;
    for (long long c = 0; c < cd.chamber_count(); ++c) {
        if (!chamber_window_point(cd, c, w)) continue;
        long long r = (long long)rank_of(m.mats[(size_t)c]);
        if (r != m.source.dims[(size_t)c] || r != m.target.dims[(size_t)c]) return false;
    }
    return true;
}

} // namespace

std::optional<Expo> chamber_window_point(const ChamberDecomposition& cd, long long chamber,
                                         long long w) {
    auto digits = cd.decode(chamber);
    Expo pt = cd.rep(chamber);
    for (int v = 0; v < cd.nvars; ++v) {
        auto lo = cd.lower(v, digits[v]);
        auto hi = cd.upper(v, digits[v]);
        if ((lo && *lo > w) || (hi && *hi < -w)) return std::nullopt;
        pt[(size_t)v] = std::min(std::max(pt[(size_t)v], -w), w);
    }
    return pt;
}

bool CohomologyTable::is_zero() const {
    return std::all_of(dims.begin(), dims.end(), [](long long v) { return v == 0; });
}

std::string CohomologyTable::to_json() const {
    nlohmann::json out;
    out["kind"] = kind;
    out["i"] = index;
    auto arr = nlohmann::json::array();
    for (long long c = 0; c < chambers.chamber_count(); ++c) {
        auto digits = chambers.decode(c);
        auto ivals = nlohmann::json::array();
        for (int v = 0; v < chambers.nvars; ++v) {
            auto lo = chambers.lower(v, digits[v]);
            auto hi = chambers.upper(v, digits[v]);
            ivals.push_back({lo ? nlohmann::json(*lo) : nlohmann::json(nullptr),
                             hi ? nlohmann::json(*hi) : nlohmann::json(nullptr)});
        }
        arr.push_back({{"intervals", ivals},
                       {"rep", chambers.rep(c)},
                       {"dim", dims[(size_t)c]}});
    }
    out["chambers"] = arr;
    return out.dump();
}

bool GradedModuleMap::injective_everywhere() const {
    for (size_t c = 0; c < mats.size(); ++c)
        if ((long long)rank_of(mats[c]) != source.dims[c]) return false;
    return true;
}

bool GradedModuleMap::surjective_everywhere() const {
    for (size_t c = 0; c < mats.size(); ++c)
        if ((long long)rank_of(mats[c]) != target.dims[c]) return false;
    return true;
}

bool GradedModuleMap::iso_everywhere() const {
    return injective_everywhere() && surjective_everywhere();
}

StrandEvaluator::Entry& StrandEvaluator::entry_at(const Expo& alpha) {
    auto masks = t_.masks_at(alpha);
    std::string key = t_.profile_key(masks);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        FiniteComplex cx = t_.complex_at_masks(masks);
        std::vector<long long> dims = cx.cohomology_dims();
        Entry e{std::move(masks), std::move(cx), std::move(dims), {}};
        e.spots.resize(t_.spots.size());
        it = cache_.emplace(std::move(key), std::move(e)).first;
    }
    return it->second;
}

const FiniteComplex& StrandEvaluator::complex_at(const Expo& alpha) { return entry_at(alpha).cx; }

const std::vector<long long>& StrandEvaluator::dims_at(const Expo& alpha) {
    return entry_at(alpha).dims;
}

const std::vector<std::vector<char>>& StrandEvaluator::masks_at(const Expo& alpha) {
    return entry_at(alpha).masks;
}

const SpotCohomology& StrandEvaluator::spot_at(const Expo& alpha, int pos) {
    Entry& e = entry_at(alpha);
    if (pos < 0 || pos >= (int)e.spots.size())
        throw std::logic_error("spot_at: position out of range");
    if (!e.spots[(size_t)pos])
        e.spots[(size_t)pos] = std::make_unique<SpotCohomology>(cohomology_basis(e.cx, pos));
    return *e.spots[(size_t)pos];
}

ExactMatrix diagonal_transfer(const std::vector<std::vector<char>>& src_masks,
                              const std::vector<std::vector<char>>& dst_masks, int pos,
                              FieldSpec field) {
    const auto& s = src_masks[(size_t)pos];
    const auto& d = dst_masks[(size_t)pos];
    if (s.size() != d.size()) throw std::logic_error("diagonal_transfer: summand counts differ");
    std::vector<size_t> si(s.size()), di(d.size());
    size_t ns = 0, nd = 0;
    for (size_t j = 0; j < s.size(); ++j) { si[j] = ns; if (s[j]) ++ns; }
    for (size_t j = 0; j < d.size(); ++j) { di[j] = nd; if (d[j]) ++nd; }
    ExactMatrix m(nd, ns, field);
    for (size_t j = 0; j < s.size(); ++j)
        if (s[j] && d[j]) m.set_int(di[j], si[j], 1);
    return m;
}

ExactMatrix induced_diagonal_map(StrandEvaluator& src, StrandEvaluator& dst,
                                 const Expo& alpha_src, const Expo& alpha_dst, int pos,
                                 std::map<std::string, ExactMatrix>& cache) {
    const auto& ms = src.masks_at(alpha_src);
    const auto& md = dst.masks_at(alpha_dst);
    std::string key = src.tmpl().profile_key(ms);
    key += '>';
    key += dst.tmpl().profile_key(md);
    key += '@';
    key += std::to_string(pos);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const FiniteComplex& cs = src.complex_at(alpha_src);
    const FiniteComplex& cd = dst.complex_at(alpha_dst);
    if (cs.length() != cd.length())
        throw std::logic_error("induced_diagonal_map: lengths differ");
    int top = cs.length();
    std::vector<ExactMatrix> f((size_t)top + 1);
    for (int p = 0; p <= top; ++p)
        f[(size_t)p] = diagonal_transfer(ms, md, p, cs.field());
    for (int p = 0; p < top; ++p)
        if (!(f[(size_t)p + 1].mul(cs.map(p)) == cd.map(p).mul(f[(size_t)p])))
            throw std::logic_error("induced_diagonal_map: squares do not commute");
    ExactMatrix r =
        induced_on_cohomology(src.spot_at(alpha_src, pos), dst.spot_at(alpha_dst, pos), f[(size_t)pos]);
    cache.emplace(std::move(key), r);
    return r;
}

CohomologyTable ext_table(const MonomialIdeal& b, int i) {
    return table_of("ext", i, ext_template(b, zero_ideal(b.ring)), i);
}

CohomologyTable ext_table(const MonomialIdeal& a, const MonomialIdeal& b, int i) {
    if (!(a.ring == b.ring)) throw input_error("ext_table: ideals live in different rings");
    return table_of("ext", i, ext_template(a, b), i);
}

CohomologyTable hm_table(const MonomialIdeal& b, int j) {
    return table_of("hm", j, StrandTemplate::from_cech(variables_ideal(b.ring), b), j);
}

CohomologyTable ha_table(const MonomialIdeal& a, int i) {
    return table_of("ha", i, StrandTemplate::from_cech(a, zero_ideal(a.ring)), i);
}

CohomologyTable tor_table(const MonomialIdeal& a, const MonomialIdeal& b, int j) {
    if (!(a.ring == b.ring)) throw input_error("tor_table: ideals live in different rings");
    if (!a.is_m_primary()) throw input_error("tor_table: first ideal must be m-primary");
    const PolyRing& ring = a.ring;
    FieldSpec field{ring.field_char};
    int d = ring.nvars;

    // degreewise model of M = Ext^d(R/a, R) through its strand bases
    StrandTemplate mt = ext_template(a, zero_ideal(ring));
    StrandEvaluator ev(mt);
    int mpos = mt.position(d);
    bool in_range = mpos >= 0 && mpos <= mt.length();

    GradedFreeComplex tb = taylor_complex(b);
    int rb = (int)tb.terms.size() - 1;

    // chambers: Ext thresholds shifted by every subset twist of Taylor(b)
    ChamberDecomposition base = mt.chambers();
    ChamberDecomposition cd;
    cd.nvars = ring.nvars;
    cd.thresholds.resize((size_t)ring.nvars);
    for (int v = 0; v < ring.nvars; ++v)
        for (long long t : base.thresholds[(size_t)v])
            for (const auto& spot : tb.terms)
                for (const Expo& beta : spot) cd.add_threshold(v, t + beta[(size_t)v]);

    CohomologyTable out{"tor", j, cd, {}};
    std::map<std::string, ExactMatrix> cache;
    for (long long c = 0; c < cd.chamber_count(); ++c) {
        if (!in_range || j < 0 || j > rb) {
            out.dims.push_back(0);
            continue;
        }
        Expo alpha = cd.rep(c);
        // block offsets per homological spot of Taylor(b)
        std::vector<std::vector<long long>> offs((size_t)rb + 1);
        std::vector<long long> total((size_t)rb + 1, 0);
        for (int s = 0; s <= rb; ++s)
            for (const Expo& beta : tb.terms[(size_t)s]) {
                offs[(size_t)s].push_back(total[(size_t)s]);
                total[(size_t)s] += ev.dims_at(sub(alpha, beta))[(size_t)mpos];
            }
        // store cohomologically: position p holds homological spot rb - p
        std::vector<long long> dims((size_t)rb + 1);
        for (int p = 0; p <= rb; ++p) dims[(size_t)p] = total[(size_t)(rb - p)];
        std::vector<ExactMatrix> maps;
        for (int p = 0; p < rb; ++p) {
            int s = rb - p; // storage map p -> p+1 is the differential spot s -> s-1
            ExactMatrix m((size_t)total[(size_t)s - 1], (size_t)total[(size_t)s], field);
            const MonomialMatrix& dmat = tb.maps[(size_t)s - 1];
            for (size_t rt = 0; rt < dmat.rows(); ++rt)
                for (size_t cs = 0; cs < dmat.cols(); ++cs) {
                    const auto& cell = dmat.at(rt, cs);
                    if (cell.empty()) continue;
                    if (cell.size() != 1)
                        throw std::logic_error("tor_table: non-monomial Taylor entry");
                    Expo gs = sub(alpha, tb.terms[(size_t)s][cs]);
                    Expo gt = sub(alpha, tb.terms[(size_t)s - 1][rt]);
                    // induced multiplication by x^(lcm_S - lcm_T) on Ext^d strands
                    ExactMatrix ind = induced_diagonal_map(ev, ev, gs, gt, mpos, cache);
                    for (size_t r2 = 0; r2 < ind.rows(); ++r2)
                        for (size_t c2 = 0; c2 < ind.cols(); ++c2) {
                            const mpq_class& v = ind.at(r2, c2);
                            if (v == 0) continue;
                            size_t row = (size_t)offs[(size_t)s - 1][rt] + r2;
                            size_t col = (size_t)offs[(size_t)s][cs] + c2;
                            m.set(row, col, cell[0].coeff < 0 ? mpq_class(-v) : v);
                        }
                }
            maps.push_back(std::move(m));
        }
        FiniteComplex block(field, dims, maps); // construction rechecks d.d = 0
        out.dims.push_back(block.cohomology_dim(rb - j));
    }
    return out;
}

std::optional<int> depth_of(const MonomialIdeal& a) {
    if (a.is_unit()) return std::nullopt;
    StrandTemplate t = ext_template(a, zero_ideal(a.ring));
    StrandEvaluator ev(t);
    ChamberDecomposition cd = ev.tmpl().chambers();
    for (int i = 0; i <= t.length(); ++i)
        for (long long c = 0; c < cd.chamber_count(); ++c)
            if (ev.dims_at(cd.rep(c))[(size_t)t.position(i)] != 0) return i;
    throw std::logic_error("depth_of: no nonzero ext up to the resolution length");
}

GradedModuleMap ext_chain_map(const MonomialIdeal& a, const Expo& k, const Expo& k_prime, int i) {
    if ((int)k.size() != a.ring.nvars || (int)k_prime.size() != a.ring.nvars)
        throw input_error("ext_chain_map: bracket exponent has wrong length");
    for (size_t v = 0; v < k.size(); ++v)
        if (k[v] < 1 || k_prime[v] < k[v])
            throw input_error("ext_chain_map: need k' >= k >= 1 componentwise");

    StrandTemplate ts = ext_template(bracket_power(a, k), zero_ideal(a.ring));
    StrandTemplate td = ext_template(bracket_power(a, k_prime), zero_ideal(a.ring));
    if (ts.length() != td.length()) throw std::logic_error("ext_chain_map: lengths differ");
    StrandEvaluator es(ts), ed(td);
    ChamberDecomposition cd = ChamberDecomposition::merge(ts.chambers(), td.chambers());
    int pos = ts.position(i);
    bool in_range = pos >= 0 && pos <= ts.length();
    FieldSpec field{a.ring.field_char};

    GradedModuleMap out;
    out.source = CohomologyTable{"ext", i, cd, {}};
    out.target = CohomologyTable{"ext", i, cd, {}};
    std::map<std::string, ExactMatrix> cache;
    for (long long c = 0; c < cd.chamber_count(); ++c) {
        if (!in_range) {
            out.source.dims.push_back(0);
            out.target.dims.push_back(0);
            out.mats.push_back(ExactMatrix(0, 0, field));
            continue;
        }
        Expo alpha = cd.rep(c);
        out.source.dims.push_back(es.dims_at(alpha)[(size_t)pos]);
        out.target.dims.push_back(ed.dims_at(alpha)[(size_t)pos]);
        out.mats.push_back(induced_diagonal_map(es, ed, alpha, alpha, pos, cache));
    }
    return out;
}

Stabilization ha_stabilization(const MonomialIdeal& a, int i, int max_doublings) {
    CohomologyTable ha = ha_table(a, i);
    Expo ones((size_t)a.ring.nvars, 1);
    Expo t = ones;
    // Fixed verification box. A box that grew with the stage could never be
    // caught: every dual-Taylor strand is dead past the largest twist, while
    // H^i_a keeps going, so the corner would lag forever.
    long long w = 1 + a.max_exponent();
    for (int round = 0;; ++round) {
        MonomialIdeal at = bracket_power(a, t);
        bool ok = tables_agree_on_window(ext_table(at, i), ha, w);
        if (ok) {
            Expo t2 = t;
            for (auto& v : t2) v *= 2;
            ok = map_iso_on_window(ext_chain_map(a, t, t2, i), w);
        }
        if (ok || round >= max_doublings) {
            Stabilization s;
            s.stabilized = ok;
            s.T = t;
            s.window = w;
            s.into_stable = ext_chain_map(a, ones, t, i);
            return s;
        }
        for (auto& v : t) v *= 2;
    }
}

long long reduced_cohomology_dim(const SimplicialComplex& x, int q, FieldSpec field) {
    if (x.is_void()) return 0;
    auto faces = x.all_faces();
    int top = 0;
    for (uint32_t f : faces) top = std::max(top, std::popcount(f));
    if (q + 1 < 0 || q + 1 > top) return 0;
    std::vector<std::vector<uint32_t>> by_size((size_t)top + 1);
    for (uint32_t f : faces) by_size[(size_t)std::popcount(f)].push_back(f);
    std::vector<long long> dims((size_t)top + 1);
    for (int p = 0; p <= top; ++p) dims[(size_t)p] = (long long)by_size[(size_t)p].size();
    std::vector<ExactMatrix> maps;
    for (int p = 0; p < top; ++p) {
        const auto& lo = by_size[(size_t)p];
        const auto& hi = by_size[(size_t)p + 1];
        ExactMatrix m(hi.size(), lo.size(), field);
        for (size_t col = 0; col < lo.size(); ++col)
            for (int v = 0; v < x.vertex_count; ++v) {
                if (lo[col] >> v & 1) continue;
                uint32_t f = lo[col] | (1u << v);
                auto it = std::lower_bound(hi.begin(), hi.end(), f);
                if (it == hi.end() || *it != f) continue;
                long long sign = std::popcount(lo[col] & ((1u << v) - 1)) % 2 == 0 ? 1 : -1;
                m.set_int((size_t)(it - hi.begin()), col, sign);
            }
        maps.push_back(std::move(m));
    }
    return FiniteComplex(field, dims, maps).cohomology_dim(q + 1);
}

CohomologyTable hochster_table(const SimplicialComplex& dl, const PolyRing& ring, int j) {
    validate_ring(ring);
    if (ring.nvars != dl.vertex_count)
        throw input_error("hochster_table: vertex count does not match the ring");
    FieldSpec field{ring.field_char};
    ChamberDecomposition cd;
    cd.nvars = ring.nvars;
    cd.thresholds.assign((size_t)ring.nvars, {0, 1});
    CohomologyTable out{"hochster", j, cd, {}};
    for (long long c = 0; c < cd.chamber_count(); ++c) {
        Expo alpha = cd.rep(c);
        long long dim = 0;
        bool nonpos = std::all_of(alpha.begin(), alpha.end(), [](long long v) { return v <= 0; });
        if (nonpos && !dl.is_void()) {
            uint32_t w = 0;
            for (int v = 0; v < ring.nvars; ++v)
                if (alpha[(size_t)v] < 0) w |= 1u << v;
            if (dl.is_face(w))
                dim = reduced_cohomology_dim(link_of(dl, w), j - std::popcount(w) - 1, field);
        }
        out.dims.push_back(dim);
    }
    return out;
}

} // namespace mglc
