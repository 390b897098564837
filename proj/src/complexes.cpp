#include "mglc/complexes.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace mglc {

namespace {

Expo zero_expo(int n) { return Expo((size_t)n, 0); }

Expo subset_lcm(const MonomialIdeal& a, uint32_t mask) {
    Expo l = zero_expo(a.ring.nvars);
    for (size_t j = 0; j < a.gens.size(); ++j)
        if (mask >> j & 1) l = lcm_of(l, a.gens[j]);
    return l;
}

long long ceil_div(long long t, long long k) {
    if (t >= 0) return (t + k - 1) / k;
    return -((-t) / k);
}

void check_scaling(const PolyRing& ring, const Expo& k) {
    if ((int)k.size() != ring.nvars) throw input_error("scaling vector has wrong length");
    for (long long v : k)
        if (v < 1) throw input_error("scaling exponents must be positive");
}

} // namespace

// ---------------------------------------------------------------------------
// MonomialMatrix

void MonomialMatrix::add_term(size_t i, size_t j, long long coeff, const Expo& expo) {
    e_[i * cols_ + j].push_back({coeff, expo});
    normalize(i, j);
}

void MonomialMatrix::normalize(size_t i, size_t j) {
    auto& cell = e_[i * cols_ + j];
    std::sort(cell.begin(), cell.end(),
              [](const SignedMonomial& a, const SignedMonomial& b) { return a.expo < b.expo; });
    std::vector<SignedMonomial> out;
    for (const SignedMonomial& t : cell) {
        if (!out.empty() && out.back().expo == t.expo)
            out.back().coeff += t.coeff;
        else
            out.push_back(t);
        if (out.back().coeff == 0) out.pop_back();
    }
    cell = std::move(out);
}

MonomialMatrix MonomialMatrix::mul(const MonomialMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::logic_error("monomial matrix product shape mismatch");
    MonomialMatrix out(rows_, rhs.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const auto& left = e_[i * cols_ + k];
            if (left.empty()) continue;
            for (size_t j = 0; j < rhs.cols_; ++j) {
                const auto& right = rhs.e_[k * rhs.cols_ + j];
                for (const SignedMonomial& a : left)
                    for (const SignedMonomial& b : right)
                        out.e_[i * rhs.cols_ + j].push_back({a.coeff * b.coeff, add(a.expo, b.expo)});
            }
        }
    for (size_t i = 0; i < out.rows_; ++i)
        for (size_t j = 0; j < out.cols_; ++j) out.normalize(i, j);
    return out;
}

MonomialMatrix MonomialMatrix::transpose() const {
    MonomialMatrix out(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out.e_[j * rows_ + i] = e_[i * cols_ + j];
    return out;
}

bool MonomialMatrix::is_zero() const {
    for (const auto& cell : e_)
        if (!cell.empty()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// GradedFreeComplex

void GradedFreeComplex::validate() const {
    if (terms.empty()) throw std::logic_error("complex has no terms");
    if (maps.size() + 1 != terms.size())
        throw std::logic_error("complex needs one map per adjacent pair of terms");
    for (size_t i = 0; i < maps.size(); ++i) {
        size_t src = homological ? i + 1 : i;
        size_t dst = homological ? i : i + 1;
        if (maps[i].rows() != terms[dst].size() || maps[i].cols() != terms[src].size())
            throw std::logic_error("map shape mismatch at spot " + std::to_string(i));
        for (size_t r = 0; r < maps[i].rows(); ++r)
            for (size_t c = 0; c < maps[i].cols(); ++c) {
                Expo want = sub(terms[src][c], terms[dst][r]);
                for (const SignedMonomial& t : maps[i].at(r, c)) {
                    if (t.expo != want)
                        throw std::logic_error("entry degree mismatch at spot " + std::to_string(i));
                    if (!is_nonnegative(t.expo))
                        throw std::logic_error("entry with negative exponent at spot " +
                                               std::to_string(i));
                }
            }
    }
    for (size_t i = 0; i + 1 < maps.size(); ++i) {
        MonomialMatrix prod = homological ? maps[i].mul(maps[i + 1]) : maps[i + 1].mul(maps[i]);
        if (!prod.is_zero())
            throw std::logic_error("maps do not compose to zero at spot " + std::to_string(i));
    }
}

std::vector<uint32_t> subsets_of_size(int n, int size) {
    std::vector<uint32_t> out;
    for (uint32_t m = 0; m < (1u << n); ++m)
        if (std::popcount(m) == size) out.push_back(m);
    return out;
}

GradedFreeComplex taylor_complex(const MonomialIdeal& a) {
    int r = (int)a.gens.size();
    if (r > 20) throw input_error("too many generators for a Taylor complex");
    GradedFreeComplex c;
    c.ring = a.ring;
    c.homological = true;
    for (int s = 0; s <= r; ++s) {
        std::vector<uint32_t> masks = subsets_of_size(r, s);
        std::vector<Expo> twists;
        twists.reserve(masks.size());
        for (uint32_t m : masks) twists.push_back(subset_lcm(a, m));
        c.labels.push_back(std::move(masks));
        c.terms.push_back(std::move(twists));
    }
    for (int s = 1; s <= r; ++s) {
        MonomialMatrix d(c.terms[s - 1].size(), c.terms[s].size());
        for (size_t col = 0; col < c.labels[s].size(); ++col) {
            uint32_t S = c.labels[s][col];
            for (int j = 0; j < r; ++j) {
                if (!(S >> j & 1)) continue;
                uint32_t T = S & ~(1u << j);
                size_t row = (size_t)(std::lower_bound(c.labels[s - 1].begin(),
                                                       c.labels[s - 1].end(), T) -
                                      c.labels[s - 1].begin());
                long long sign = (std::popcount(T & ((1u << j) - 1)) % 2 == 0) ? 1 : -1;
                d.add_term(row, col, sign, sub(c.terms[s][col], c.terms[s - 1][row]));
            }
        }
        c.maps.push_back(std::move(d));
    }
    return c;
}

GradedFreeComplex dual_complex(const GradedFreeComplex& c) {
    GradedFreeComplex out;
    out.ring = c.ring;
    out.homological = !c.homological;
    out.labels = c.labels;
    for (const auto& spot : c.terms) {
        std::vector<Expo> twists;
        twists.reserve(spot.size());
        for (const Expo& b : spot) twists.push_back(sub(zero_expo(c.ring.nvars), b));
        out.terms.push_back(std::move(twists));
    }
    for (const auto& m : c.maps) out.maps.push_back(m.transpose());
    return out;
}

GradedFreeComplex frobenius_functor(const GradedFreeComplex& c, const Expo& k) {
    check_scaling(c.ring, k);
    GradedFreeComplex out = c;
    for (auto& spot : out.terms)
        for (Expo& b : spot) b = scale(k, b);
    for (auto& m : out.maps) {
        MonomialMatrix scaled(m.rows(), m.cols());
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j)
                for (const SignedMonomial& t : m.at(i, j))
                    scaled.add_term(i, j, t.coeff, scale(k, t.expo));
        m = std::move(scaled);
    }
    return out;
}

std::vector<MonomialMatrix> comparison_chain_map(const MonomialIdeal& a, const Expo& k_coarse,
                                                 const Expo& k_fine) {
    check_scaling(a.ring, k_coarse);
    check_scaling(a.ring, k_fine);
    for (size_t i = 0; i < k_fine.size(); ++i)
        if (k_fine[i] < k_coarse[i])
            throw input_error("comparison map needs componentwise k_fine >= k_coarse");
    Expo diff = sub(k_fine, k_coarse);
    int r = (int)a.gens.size();
    std::vector<MonomialMatrix> f;
    for (int s = 0; s <= r; ++s) {
        std::vector<uint32_t> masks = subsets_of_size(r, s);
        MonomialMatrix comp(masks.size(), masks.size());
        for (size_t t = 0; t < masks.size(); ++t)
            comp.add_term(t, t, 1, scale(diff, subset_lcm(a, masks[t])));
        f.push_back(std::move(comp));
    }
    return f;
}

// ---------------------------------------------------------------------------
// ChamberDecomposition

long long ChamberDecomposition::chamber_count() const {
    long long n = 1;
    for (const auto& t : thresholds) n *= (long long)t.size() + 1;
    return n;
}

std::vector<size_t> ChamberDecomposition::decode(long long idx) const {
    std::vector<size_t> digits(thresholds.size());
    for (size_t i = 0; i < thresholds.size(); ++i) {
        long long base = (long long)thresholds[i].size() + 1;
        digits[i] = (size_t)(idx % base);
        idx /= base;
    }
    return digits;
}

long long ChamberDecomposition::chamber_of(const Expo& alpha) const {
    long long idx = 0, stride = 1;
    for (size_t i = 0; i < thresholds.size(); ++i) {
        const auto& t = thresholds[i];
        size_t digit = (size_t)(std::upper_bound(t.begin(), t.end(), alpha[i]) - t.begin());
        idx += stride * (long long)digit;
        stride *= (long long)t.size() + 1;
    }
    return idx;
}

std::optional<long long> ChamberDecomposition::lower(int coord, size_t digit) const {
    if (digit == 0) return std::nullopt;
    return thresholds[coord][digit - 1];
}

std::optional<long long> ChamberDecomposition::upper(int coord, size_t digit) const {
    if (digit == thresholds[coord].size()) return std::nullopt;
    return thresholds[coord][digit] - 1;
}

Expo ChamberDecomposition::rep(long long idx) const {
    std::vector<size_t> digits = decode(idx);
    Expo out(thresholds.size(), 0);
    for (size_t i = 0; i < thresholds.size(); ++i) {
        auto lo = lower((int)i, digits[i]);
        auto hi = upper((int)i, digits[i]);
        long long v = 0;
        if (lo && v < *lo) v = *lo;
        if (hi && v > *hi) v = *hi;
        out[i] = v;
    }
    return out;
}

void ChamberDecomposition::add_threshold(int coord, long long t) {
    auto& v = thresholds[coord];
    auto it = std::lower_bound(v.begin(), v.end(), t);
    if (it == v.end() || *it != t) v.insert(it, t);
}

void ChamberDecomposition::close_under_ceil_div(const Expo& k) {
    for (size_t i = 0; i < thresholds.size(); ++i) {
        if (k[i] < 1) throw input_error("scaling exponents must be positive");
        std::vector<long long> work = thresholds[i];
        while (!work.empty()) {
            long long t = work.back();
            work.pop_back();
            long long next = ceil_div(t, k[i]);
            auto& v = thresholds[i];
            if (!std::binary_search(v.begin(), v.end(), next)) {
                add_threshold((int)i, next);
                work.push_back(next);
            }
        }
    }
}

ChamberDecomposition ChamberDecomposition::merge(const ChamberDecomposition& a,
                                                 const ChamberDecomposition& b) {
    if (a.nvars != b.nvars) throw std::logic_error("chamber merge dimension mismatch");
    ChamberDecomposition out = a;
    for (int i = 0; i < b.nvars; ++i)
        for (long long t : b.thresholds[i]) out.add_threshold(i, t);
    return out;
}

// ---------------------------------------------------------------------------
// strands

bool StrandSummand::alive(const Expo& alpha) const {
    for (size_t i = 0; i < alpha.size(); ++i)
        if (!(ignored >> i & 1) && alpha[i] < twist[i]) return false;
    for (const Expo& g : killers) {
        bool escapes = false;
        for (size_t i = 0; i < alpha.size() && !escapes; ++i)
            escapes = !(ignored >> i & 1) && alpha[i] < twist[i] + g[i];
        if (!escapes) return false;
    }
    return true;
}

std::vector<std::vector<char>> StrandTemplate::masks_at(const Expo& alpha) const {
    if ((int)alpha.size() != ring.nvars) throw input_error("degree has wrong length");
    std::vector<std::vector<char>> masks(spots.size());
    for (size_t p = 0; p < spots.size(); ++p) {
        masks[p].resize(spots[p].size());
        for (size_t s = 0; s < spots[p].size(); ++s) masks[p][s] = spots[p][s].alive(alpha) ? 1 : 0;
    }
    return masks;
}

std::string StrandTemplate::profile_key(const std::vector<std::vector<char>>& masks) const {
    std::string key;
    for (const auto& m : masks) {
        for (char c : m) key.push_back(c ? '1' : '0');
        key.push_back('|');
    }
    return key;
}

FiniteComplex StrandTemplate::complex_at_masks(const std::vector<std::vector<char>>& masks) const {
    FieldSpec field{ring.field_char};
    std::vector<long long> dims(spots.size());
    std::vector<std::vector<size_t>> index(spots.size());
    for (size_t p = 0; p < spots.size(); ++p) {
        index[p].assign(spots[p].size(), 0);
        size_t n = 0;
        for (size_t s = 0; s < spots[p].size(); ++s)
            if (masks[p][s]) index[p][s] = n++;
        dims[p] = (long long)n;
    }
    std::vector<ExactMatrix> maps;
    for (size_t p = 0; p + 1 < spots.size(); ++p) {
        ExactMatrix m((size_t)dims[p + 1], (size_t)dims[p], field);
        for (const StrandEntry& e : entries[p])
            if (masks[p][e.col] && masks[p + 1][e.row])
                m.set_int(index[p + 1][e.row], index[p][e.col], e.coeff);
        maps.push_back(std::move(m));
    }
    return FiniteComplex(field, std::move(dims), std::move(maps));
}

FiniteComplex StrandTemplate::complex_at(const Expo& alpha) const {
    return complex_at_masks(masks_at(alpha));
}

ChamberDecomposition StrandTemplate::chambers() const {
    ChamberDecomposition out;
    out.nvars = ring.nvars;
    out.thresholds.resize((size_t)ring.nvars);
    for (const auto& spot : spots)
        for (const StrandSummand& s : spot)
            for (int i = 0; i < ring.nvars; ++i) {
                if (s.ignored >> i & 1) continue;
                out.add_threshold(i, s.twist[i]);
                for (const Expo& g : s.killers) out.add_threshold(i, s.twist[i] + g[i]);
            }
    return out;
}

StrandTemplate StrandTemplate::from_free(const GradedFreeComplex& c, const MonomialIdeal& coeffs) {
    c.validate();
    if (coeffs.ring.nvars != c.ring.nvars)
        throw std::logic_error("coefficient ring dimension mismatch");
    StrandTemplate t;
    t.ring = c.ring;
    t.reversed = c.homological;
    int top = c.length();
    auto spot_of = [&](int p) { return t.reversed ? top - p : p; };
    for (int p = 0; p <= top; ++p) {
        std::vector<StrandSummand> spot;
        for (const Expo& b : c.terms[(size_t)spot_of(p)])
            spot.push_back({b, 0, coeffs.gens});
        t.spots.push_back(std::move(spot));
    }
    for (int p = 0; p < top; ++p) {
        // storage map p -> p+1 is c.maps[top-p-1] when homological, else c.maps[p]
        const MonomialMatrix& m = c.maps[(size_t)(t.reversed ? top - p - 1 : p)];
        std::vector<StrandEntry> ent;
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t col = 0; col < m.cols(); ++col) {
                const auto& cell = m.at(r, col);
                if (cell.empty()) continue;
                if (cell.size() != 1)
                    throw std::logic_error("strand templates need monomial map entries");
                ent.push_back({r, col, cell[0].coeff});
            }
        t.entries.push_back(std::move(ent));
    }
    return t;
}

StrandTemplate StrandTemplate::from_cech(const MonomialIdeal& a, const MonomialIdeal& coeffs) {
    if (coeffs.ring.nvars != a.ring.nvars)
        throw std::logic_error("coefficient ring dimension mismatch");
    int r = (int)a.gens.size();
    if (r > 20) throw input_error("too many generators for a Cech complex");
    StrandTemplate t;
    t.ring = a.ring;
    t.reversed = false;
    std::vector<std::vector<uint32_t>> masks;
    for (int s = 0; s <= r; ++s) {
        masks.push_back(subsets_of_size(r, s));
        std::vector<StrandSummand> spot;
        for (uint32_t m : masks.back()) {
            uint32_t inverted = 0;
            for (int j = 0; j < r; ++j)
                if (m >> j & 1) inverted |= support_mask(a.gens[j]);
            spot.push_back({zero_expo(a.ring.nvars), inverted, coeffs.gens});
        }
        t.spots.push_back(std::move(spot));
    }
    for (int s = 0; s < r; ++s) {
        std::vector<StrandEntry> ent;
        for (size_t row = 0; row < masks[s + 1].size(); ++row) {
            uint32_t T = masks[s + 1][row];
            for (int j = 0; j < r; ++j) {
                if (!(T >> j & 1)) continue;
                uint32_t S = T & ~(1u << j);
                size_t col = (size_t)(std::lower_bound(masks[s].begin(), masks[s].end(), S) -
                                      masks[s].begin());
                long long sign = (std::popcount(S & ((1u << j) - 1)) % 2 == 0) ? 1 : -1;
                ent.push_back({row, col, sign});
            }
        }
        t.entries.push_back(std::move(ent));
    }
    return t;
}

} // namespace mglc
