#include "mglc/monomial.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mglc {

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

void validate_ring(const PolyRing& r) {
    if (r.nvars < 1 || r.nvars > 30)
        throw input_error("num_vars must be between 1 and 30");
    if (r.field_char != 0 && !is_prime(r.field_char))
        throw input_error("field_char must be 0 or a prime");
}

bool divides(const Expo& a, const Expo& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Expo lcm_of(const Expo& a, const Expo& b) {
    Expo r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

Expo scale(const Expo& k, const Expo& e) {
    Expo r(e.size());
    for (size_t i = 0; i < e.size(); ++i) r[i] = k[i] * e[i];
    return r;
}

Expo add(const Expo& a, const Expo& b) {
    Expo r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Expo sub(const Expo& a, const Expo& b) {
    Expo r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

bool is_nonnegative(const Expo& e) {
    for (long long v : e)
        if (v < 0) return false;
    return true;
}

uint32_t support_mask(const Expo& e) {
    uint32_t m = 0;
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) m |= 1u << i;
    return m;
}

std::string expo_str(const Expo& e) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) os << ',';
        os << e[i];
    }
    os << ')';
    return os.str();
}

MonomialIdeal MonomialIdeal::make(PolyRing ring, std::vector<Expo> raw) {
    validate_ring(ring);
    for (const Expo& g : raw) {
        if ((int)g.size() != ring.nvars)
            throw input_error("generator length does not match num_vars");
        if (!is_nonnegative(g))
            throw input_error("generator exponents must be nonnegative");
    }
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    std::vector<Expo> kept;
    for (size_t i = 0; i < raw.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < raw.size() && !redundant; ++j)
            if (j != i && divides(raw[j], raw[i])) redundant = true;
        if (!redundant) kept.push_back(raw[i]);
    }
    return MonomialIdeal{ring, std::move(kept)};
}

bool MonomialIdeal::is_unit() const {
    return gens.size() == 1 && support_mask(gens[0]) == 0;
}

bool MonomialIdeal::contains(const Expo& m) const {
    for (const Expo& g : gens)
        if (divides(g, m)) return true;
    return false;
}

bool MonomialIdeal::is_squarefree() const {
    for (const Expo& g : gens)
        for (long long v : g)
            if (v > 1) return false;
    return true;
}

bool MonomialIdeal::is_m_primary() const {
    // the radical is (x_1,...,x_d) iff every variable power lies in the ideal
    for (int i = 0; i < ring.nvars; ++i) {
        bool pure = false;
        for (const Expo& g : gens)
            if (support_mask(g) == (1u << i)) { pure = true; break; }
        if (!pure) return false;
    }
    return true;
}

long long MonomialIdeal::max_exponent() const {
    long long m = 0;
    for (const Expo& g : gens)
        for (long long v : g) m = std::max(m, v);
    return m;
}

MonomialIdeal bracket_power(const MonomialIdeal& a, const Expo& k) {
    if ((int)k.size() != a.ring.nvars)
        throw input_error("bracket exponent length does not match num_vars");
    for (long long v : k)
        if (v < 1) throw input_error("bracket exponents must be >= 1");
    std::vector<Expo> gens;
    gens.reserve(a.gens.size());
    for (const Expo& g : a.gens) gens.push_back(scale(k, g));
    // scaling by k >= 1 preserves divisibility both ways, so the antichain
    // property and the lex order of the stored generators survive untouched
    return MonomialIdeal{a.ring, std::move(gens)};
}

MonomialIdeal radical(const MonomialIdeal& a) {
    std::vector<Expo> gens;
    for (const Expo& g : a.gens) {
        Expo r(g.size());
        for (size_t i = 0; i < g.size(); ++i) r[i] = g[i] > 0 ? 1 : 0;
        gens.push_back(std::move(r));
    }
    return MonomialIdeal::make(a.ring, std::move(gens));
}

MonomialIdeal variables_ideal(const PolyRing& r) {
    std::vector<Expo> gens;
    for (int i = 0; i < r.nvars; ++i) {
        Expo g((size_t)r.nvars, 0);
        g[i] = 1;
        gens.push_back(std::move(g));
    }
    return MonomialIdeal::make(r, std::move(gens));
}

SimplicialComplex SimplicialComplex::from_faces(int vertex_count, const std::vector<uint32_t>& faces) {
    std::vector<uint32_t> facets;
    for (uint32_t f : faces) {
        bool maximal = true;
        for (uint32_t g : faces)
            if (g != f && (f & g) == f) { maximal = false; break; }
        if (maximal) facets.push_back(f);
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    return SimplicialComplex{vertex_count, std::move(facets)};
}

bool SimplicialComplex::is_face(uint32_t f) const {
    for (uint32_t g : facets)
        if ((f & g) == f) return true;
    return false;
}

bool SimplicialComplex::is_full_simplex() const {
    uint32_t full = (vertex_count >= 32) ? ~0u : ((1u << vertex_count) - 1);
    return facets.size() == 1 && facets[0] == full;
}

std::vector<uint32_t> SimplicialComplex::all_faces() const {
    std::vector<uint32_t> out;
    for (uint32_t f = 0; f < (1u << vertex_count); ++f)
        if (is_face(f)) out.push_back(f);
    return out;
}

std::vector<uint32_t> SimplicialComplex::minimal_nonfaces() const {
    std::vector<uint32_t> out;
    for (uint32_t f = 0; f < (1u << vertex_count); ++f) {
        if (is_face(f)) continue;
        bool minimal = true;
        for (int i = 0; i < vertex_count && minimal; ++i)
            if ((f >> i) & 1)
                if (!is_face(f & ~(1u << i))) minimal = false;
        if (minimal) out.push_back(f);
    }
    return out;
}

MonomialIdeal stanley_reisner(const SimplicialComplex& dl, long long field_char) {
    PolyRing ring{dl.vertex_count, field_char};
    std::vector<Expo> gens;
    for (uint32_t f : dl.minimal_nonfaces()) {
        Expo g(dl.vertex_count, 0);
        for (int i = 0; i < dl.vertex_count; ++i)
            if ((f >> i) & 1) g[i] = 1;
        gens.push_back(std::move(g));
    }
    return MonomialIdeal::make(ring, std::move(gens));
}

SimplicialComplex complex_of(const MonomialIdeal& a) {
    if (!a.is_squarefree())
        throw input_error("complex_of requires a square-free ideal");
    int d = a.ring.nvars;
    std::vector<uint32_t> faces;
    for (uint32_t f = 0; f < (1u << d); ++f) {
        Expo m(d, 0);
        for (int i = 0; i < d; ++i)
            if ((f >> i) & 1) m[i] = 1;
        if (!a.contains(m)) faces.push_back(f);
    }
    return SimplicialComplex::from_faces(d, faces);
}

SimplicialComplex alexander_dual(const SimplicialComplex& dl) {
    if (dl.is_void() || dl.is_full_simplex())
        throw input_error("alexander_dual requires a proper complex");
    uint32_t full = (1u << dl.vertex_count) - 1;
    // maximal faces of the dual = complements of minimal nonfaces
    std::vector<uint32_t> facets;
    for (uint32_t f : dl.minimal_nonfaces()) facets.push_back(full & ~f);
    std::sort(facets.begin(), facets.end());
    return SimplicialComplex{dl.vertex_count, std::move(facets)};
}

SimplicialComplex link_of(const SimplicialComplex& dl, uint32_t face) {
    std::vector<uint32_t> faces;
    for (uint32_t f : dl.all_faces())
        if ((f & face) == 0 && dl.is_face(f | face)) faces.push_back(f);
    return SimplicialComplex::from_faces(dl.vertex_count, faces);
}

SimplicialComplex restrict_to(const SimplicialComplex& dl, uint32_t verts) {
    std::vector<uint32_t> faces;
    for (uint32_t f : dl.all_faces())
        if ((f & verts) == f) faces.push_back(f);
    return SimplicialComplex::from_faces(dl.vertex_count, faces);
}

MonomialIdeal ideal_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("num_vars") || !j.contains("field_char") || !j.contains("generators"))
        throw input_error("ideal JSON needs num_vars, field_char, generators");
    PolyRing ring;
    if (!j["num_vars"].is_number_integer() || !j["field_char"].is_number_integer())
        throw input_error("num_vars and field_char must be integers");
    ring.nvars = j["num_vars"].get<int>();
    ring.field_char = j["field_char"].get<long long>();
    std::vector<Expo> gens;
    if (!j["generators"].is_array())
        throw input_error("generators must be an array of exponent vectors");
    for (const auto& row : j["generators"]) {
        if (!row.is_array())
            throw input_error("each generator must be an array of integers");
        Expo g;
        for (const auto& v : row) {
            if (!v.is_number_integer())
                throw input_error("generator exponents must be integers");
            g.push_back(v.get<long long>());
        }
        gens.push_back(std::move(g));
    }
    return MonomialIdeal::make(ring, std::move(gens));
}

std::string ideal_to_json(const MonomialIdeal& a) {
    nlohmann::json j;
    j["num_vars"] = a.ring.nvars;
    j["field_char"] = a.ring.field_char;
    j["generators"] = nlohmann::json::array();
    for (const Expo& g : a.gens) j["generators"].push_back(g);
    return j.dump();
}

MonomialIdeal load_ideal(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open ideal file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ideal_from_json(ss.str());
}

} // namespace mglc
