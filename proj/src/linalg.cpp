#include "mglc/linalg.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace mglc {

ExactMatrix::ExactMatrix(size_t rows, size_t cols, FieldSpec field)
    : rows_(rows), cols_(cols), field_(field), a_(rows * cols, mpq_class(0)) {}

ExactMatrix ExactMatrix::identity(size_t n, FieldSpec field) {
    ExactMatrix m(n, n, field);
    for (size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
    return m;
}

mpq_class field_reduce(const FieldSpec& f, const mpq_class& v) {
    if (f.characteristic == 0) return v;
    mpz_class p(static_cast<long>(f.characteristic));
    mpz_class num = v.get_num() % p;
    if (num < 0) num += p;
    if (v.get_den() != 1) {
        mpz_class den = v.get_den() % p;
        if (den < 0) den += p;
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
            throw std::logic_error("non-invertible denominator mod p");
        num = (num * inv) % p;
    }
    return mpq_class(num);
}

mpq_class field_invert(const FieldSpec& f, const mpq_class& v) {
    if (f.characteristic == 0) return 1 / v;
    mpz_class p(static_cast<long>(f.characteristic)), inv;
    mpz_class num = v.get_num() % p;
    if (num < 0) num += p;
    if (mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()) == 0)
        throw std::logic_error("division by zero in GF(p)");
    return mpq_class(inv);
}

mpq_class ExactMatrix::reduce(const mpq_class& v) const { return field_reduce(field_, v); }

void ExactMatrix::set(size_t i, size_t j, const mpq_class& v) {
    mpq_class t = reduce(v);
    t.canonicalize(); // two-argument mpq_class constructions may arrive unreduced
    a_[i * cols_ + j] = t;
}

void ExactMatrix::set_int(size_t i, size_t j, long long v) {
    a_[i * cols_ + j] = reduce(mpq_class(static_cast<long>(v)));
}

mpq_class ExactMatrix::invert(const mpq_class& v) const { return field_invert(field_, v); }

ExactMatrix ExactMatrix::mul(const ExactMatrix& rhs) const {
    if (cols_ != rhs.rows_ || !(field_ == rhs.field_))
        throw std::logic_error("matrix product shape mismatch");
    ExactMatrix out(rows_, rhs.cols_, field_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const mpq_class& v = a_[i * cols_ + k];
            if (v == 0) continue;
            for (size_t j = 0; j < rhs.cols_; ++j) {
                const mpq_class& w = rhs.a_[k * rhs.cols_ + j];
                if (w == 0) continue;
                out.a_[i * rhs.cols_ + j] += v * w;
            }
        }
    if (field_.characteristic != 0)
        for (auto& v : out.a_) v = out.reduce(v);
    return out;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix out(cols_, rows_, field_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out.a_[j * rows_ + i] = a_[i * cols_ + j];
    return out;
}

bool ExactMatrix::is_zero() const {
    for (const auto& v : a_)
        if (v != 0) return false;
    return true;
}

std::vector<size_t> ExactMatrix::rref_inplace() {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t col = 0; col < cols_ && r < rows_; ++col) {
        size_t sel = r;
        while (sel < rows_ && a_[sel * cols_ + col] == 0) ++sel;
        if (sel == rows_) continue;
        if (sel != r)
            for (size_t j = col; j < cols_; ++j) std::swap(a_[sel * cols_ + j], a_[r * cols_ + j]);
        mpq_class inv = invert(a_[r * cols_ + col]);
        for (size_t j = col; j < cols_; ++j) {
            a_[r * cols_ + j] = reduce(a_[r * cols_ + j] * inv);
        }
        for (size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            const mpq_class f = a_[i * cols_ + col];
            if (f == 0) continue;
            for (size_t j = col; j < cols_; ++j)
                a_[i * cols_ + j] = reduce(a_[i * cols_ + j] - f * a_[r * cols_ + j]);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

size_t rank_of(ExactMatrix m) { return m.rref_inplace().size(); }

ExactMatrix kernel_basis(const ExactMatrix& m) {
    ExactMatrix r = m;
    std::vector<size_t> pivots = r.rref_inplace();
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : pivots) is_pivot[p] = true;
    size_t nullity = m.cols() - pivots.size();
    ExactMatrix out(m.cols(), nullity, m.field());
    size_t col = 0;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        out.set_int(f, col, 1);
        for (size_t t = 0; t < pivots.size(); ++t)
            out.set(pivots[t], col, -r.at(t, f));
        ++col;
    }
    return out;
}

ExactMatrix image_basis(const ExactMatrix& m) {
    ExactMatrix t = m.transpose();
    std::vector<size_t> pivots = t.rref_inplace();
    size_t rk = pivots.size();
    ExactMatrix out(m.rows(), rk, m.field());
    for (size_t j = 0; j < rk; ++j)
        for (size_t i = 0; i < m.rows(); ++i) out.set(i, j, t.at(j, i));
    return out;
}

bool RankAccumulator::add(std::vector<mpq_class> v) {
    for (const auto& [piv, row] : rows_) {
        if (v[piv] == 0) continue;
        const mpq_class f = v[piv];
        for (size_t j = piv; j < dim_; ++j) v[j] = field_reduce(field_, v[j] - f * row[j]);
    }
    size_t piv = 0;
    while (piv < dim_ && v[piv] == 0) ++piv;
    if (piv == dim_) return false;
    mpq_class inv = field_invert(field_, v[piv]);
    for (size_t j = piv; j < dim_; ++j) v[j] = field_reduce(field_, v[j] * inv);
    rows_.emplace_back(piv, std::move(v));
    // keep rows sorted by pivot so reduction stays one pass
    for (size_t i = rows_.size(); i > 1 && rows_[i - 1].first < rows_[i - 2].first; --i)
        std::swap(rows_[i - 1], rows_[i - 2]);
    return true;
}

FiniteComplex::FiniteComplex(FieldSpec field, std::vector<long long> dims,
                             std::vector<ExactMatrix> maps)
    : field_(field), dims_(std::move(dims)), maps_(std::move(maps)) {
    if (maps_.size() + 1 != dims_.size())
        throw std::logic_error("complex needs one map per adjacent pair of terms");
    for (size_t i = 0; i < maps_.size(); ++i)
        if ((long long)maps_[i].rows() != dims_[i + 1] || (long long)maps_[i].cols() != dims_[i])
            throw std::logic_error("complex map shape mismatch at spot " + std::to_string(i));
    for (size_t i = 0; i + 1 < maps_.size(); ++i)
        if (!maps_[i + 1].mul(maps_[i]).is_zero())
            throw std::logic_error("maps do not compose to zero at spot " + std::to_string(i));
    map_ranks_.reserve(maps_.size());
    for (const auto& m : maps_) map_ranks_.push_back(rank_of(m));
}

long long FiniteComplex::cohomology_dim(int i) const {
    if (i < 0 || i >= (int)dims_.size()) return 0;
    long long rk_out = (i < (int)maps_.size()) ? (long long)map_ranks_[i] : 0;
    long long rk_in = (i > 0) ? (long long)map_ranks_[i - 1] : 0;
    return dims_[i] - rk_out - rk_in;
}

std::vector<long long> FiniteComplex::cohomology_dims() const {
    std::vector<long long> out(dims_.size());
    for (int i = 0; i < (int)dims_.size(); ++i) out[i] = cohomology_dim(i);
    return out;
}

std::vector<mpq_class> SpotCohomology::express(const std::vector<mpq_class>& w) const {
    if (w.size() != space_dim) throw std::logic_error("express: wrong vector length");
    std::vector<mpq_class> c(image_dim + h_dim, mpq_class(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < space_dim; ++j)
            if (solver.at(i, j) != 0 && w[j] != 0) c[i] += solver.at(i, j) * w[j];
    for (auto& v : c) v = solver.reduce(v);
    // the data promise w in the span of E; verify to catch basis mixups
    for (size_t i = 0; i < space_dim; ++i) {
        mpq_class acc(0);
        for (size_t j = 0; j < c.size(); ++j)
            if (E.at(i, j) != 0 && c[j] != 0) acc += E.at(i, j) * c[j];
        if (solver.reduce(acc - w[i]) != 0)
            throw std::logic_error("express: vector not in the recorded span");
    }
    return c;
}

SpotCohomology cohomology_basis(const FiniteComplex& c, int i) {
    SpotCohomology out;
    out.space_dim = (size_t)c.dim(i);
    FieldSpec field = c.field();

    ExactMatrix kern = (i < c.length())
                           ? kernel_basis(c.map(i))
                           : ExactMatrix::identity(out.space_dim, field);
    ExactMatrix img = (i > 0) ? image_basis(c.map(i - 1)) : ExactMatrix(out.space_dim, 0, field);
    out.image_dim = img.cols();

    // greedy scan of [img | kern]: kernel columns that add a new pivot become
    // the representatives of a basis of ker/im
    RankAccumulator acc(out.space_dim, field);
    for (size_t j = 0; j < img.cols(); ++j) {
        std::vector<mpq_class> v(out.space_dim);
        for (size_t r = 0; r < out.space_dim; ++r) v[r] = img.at(r, j);
        acc.add(std::move(v));
    }
    std::vector<size_t> chosen;
    for (size_t j = 0; j < kern.cols(); ++j) {
        std::vector<mpq_class> v(out.space_dim);
        for (size_t r = 0; r < out.space_dim; ++r) v[r] = kern.at(r, j);
        if (acc.add(std::move(v))) chosen.push_back(j);
    }
    out.h_dim = chosen.size();

    out.E = ExactMatrix(out.space_dim, out.image_dim + out.h_dim, field);
    for (size_t j = 0; j < out.image_dim; ++j)
        for (size_t r = 0; r < out.space_dim; ++r) out.E.set(r, j, img.at(r, j));
    for (size_t j = 0; j < out.h_dim; ++j)
        for (size_t r = 0; r < out.space_dim; ++r)
            out.E.set(r, out.image_dim + j, kern.at(r, chosen[j]));

    // left inverse via RREF of [E | I]; E has full column rank by construction
    size_t m = out.image_dim + out.h_dim, n = out.space_dim;
    ExactMatrix aug(n, m + n, field);
    for (size_t i2 = 0; i2 < n; ++i2) {
        for (size_t j = 0; j < m; ++j) aug.set(i2, j, out.E.at(i2, j));
        aug.set_int(i2, m + i2, 1);
    }
    aug.rref_inplace();
    out.solver = ExactMatrix(m, n, field);
    for (size_t i2 = 0; i2 < m; ++i2)
        for (size_t j = 0; j < n; ++j) out.solver.set(i2, j, aug.at(i2, m + j));
    return out;
}

ExactMatrix induced_on_cohomology(const SpotCohomology& src, const SpotCohomology& dst,
                                  const ExactMatrix& f_i) {
    if (f_i.rows() != dst.space_dim || f_i.cols() != src.space_dim)
        throw std::logic_error("induced map: component shape mismatch");
    ExactMatrix out(dst.h_dim, src.h_dim, f_i.field());
    std::vector<mpq_class> w(dst.space_dim);
    for (size_t q = 0; q < src.h_dim; ++q) {
        for (size_t r = 0; r < dst.space_dim; ++r) {
            mpq_class acc(0);
            for (size_t c = 0; c < src.space_dim; ++c) {
                const mpq_class& fv = f_i.at(r, c);
                if (fv != 0) acc += fv * src.E.at(c, src.image_dim + q);
            }
            w[r] = f_i.reduce(acc);
        }
        std::vector<mpq_class> coords = dst.express(w);
        for (size_t r = 0; r < dst.h_dim; ++r) out.set(r, q, coords[dst.image_dim + r]);
    }
    return out;
}

ExactMatrix induced_map_on_cohomology(const FiniteComplex& c, const FiniteComplex& d,
                                      const std::vector<ExactMatrix>& f, int i) {
    if (c.length() != d.length())
        throw std::logic_error("chain map needs complexes of equal length");
    if ((int)f.size() != c.length() + 1)
        throw std::logic_error("chain map needs one component per term");
    for (int s = 0; s < c.length(); ++s) {
        // f_{s+1} d_C = d_D f_s
        if (!(f[s + 1].mul(c.map(s)) == d.map(s).mul(f[s])))
            throw std::logic_error("chain map does not commute at spot " + std::to_string(s));
    }
    return induced_on_cohomology(cohomology_basis(c, i), cohomology_basis(d, i), f[i]);
}

} // namespace mglc
