// Exact dense linear algebra over Q (GMP rationals) and GF(p), plus finite
// complexes of vector spaces and induced maps on cohomology.
//
// Everything here is deterministic: elimination always picks the first
// nonzero pivot in row/column order, so echelon forms, kernel bases and
// induced-map matrices are reproducible byte for byte.

#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace mglc {

struct FieldSpec {
    long long characteristic = 0; // 0 = rationals, otherwise a prime
    bool operator==(const FieldSpec&) const = default;
};

// Residues in GF(p) are carried as integers in [0, p) inside mpq values.
mpq_class field_reduce(const FieldSpec& f, const mpq_class& v);
mpq_class field_invert(const FieldSpec& f, const mpq_class& v);

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(size_t rows, size_t cols, FieldSpec field);
    static ExactMatrix identity(size_t n, FieldSpec field);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    const mpq_class& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    void set(size_t i, size_t j, const mpq_class& v);
    void set_int(size_t i, size_t j, long long v);

    ExactMatrix mul(const ExactMatrix& rhs) const;
    ExactMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const ExactMatrix&) const = default;

    // in-place Gauss-Jordan; returns pivot column indices
    std::vector<size_t> rref_inplace();

    mpq_class reduce(const mpq_class& v) const; // mod p when characteristic > 0
    mpq_class invert(const mpq_class& v) const;

private:
    size_t rows_ = 0, cols_ = 0;
    FieldSpec field_;
    std::vector<mpq_class> a_;
};

size_t rank_of(ExactMatrix m);

// Columns span the kernel; column j has a leading 1 at the j-th free
// coordinate of the RREF, so the basis is echelon and canonical.
ExactMatrix kernel_basis(const ExactMatrix& m);

// Echelon basis of the column space (RREF of the transpose, transposed back).
ExactMatrix image_basis(const ExactMatrix& m);

// Incremental column-span rank; add() reports whether the vector was new.
class RankAccumulator {
public:
    explicit RankAccumulator(size_t dim, FieldSpec field) : dim_(dim), field_(field) {}
    bool add(std::vector<mpq_class> v);
    size_t rank() const { return rows_.size(); }

private:
    size_t dim_;
    FieldSpec field_;
    std::vector<std::pair<size_t, std::vector<mpq_class>>> rows_; // (pivot, reduced vector)
};

// A cochain complex of finite dimensional spaces: maps[i] : C^i -> C^{i+1}.
// Construction verifies shapes and that consecutive maps compose to zero.
class FiniteComplex {
public:
    FiniteComplex() = default;
    FiniteComplex(FieldSpec field, std::vector<long long> dims, std::vector<ExactMatrix> maps);

    int length() const { return (int)dims_.size() - 1; } // top spot index
    long long dim(int i) const { return (i < 0 || i >= (int)dims_.size()) ? 0 : dims_[i]; }
    const ExactMatrix& map(int i) const { return maps_[i]; } // 0 <= i < length
    const FieldSpec& field() const { return field_; }

    long long cohomology_dim(int i) const;
    std::vector<long long> cohomology_dims() const; // all spots at once
    bool operator==(const FiniteComplex&) const = default;

private:
    FieldSpec field_;
    std::vector<long long> dims_;
    std::vector<ExactMatrix> maps_;
    std::vector<size_t> map_ranks_; // cached at construction
};

// Basis data for H^i: E = [image basis | chosen kernel representatives] and a
// left inverse of E, so classes are expressed by one matrix-vector product.
struct SpotCohomology {
    size_t space_dim = 0;
    size_t image_dim = 0; // b
    size_t h_dim = 0;     // h, dim of cohomology
    ExactMatrix E;        // space_dim x (b+h)
    ExactMatrix solver;   // (b+h) x space_dim, solver * E = I
    // coordinates of a kernel vector w in the chosen basis of H^i
    std::vector<mpq_class> express(const std::vector<mpq_class>& w) const;
};

SpotCohomology cohomology_basis(const FiniteComplex& c, int i);

// Matrix of H^i(f) given the spot data of source and target and the chain map
// component f_i; f is assumed to commute with the differentials.
ExactMatrix induced_on_cohomology(const SpotCohomology& src, const SpotCohomology& dst,
                                  const ExactMatrix& f_i);

// Full check-and-compute variant: verifies every square of the chain map.
ExactMatrix induced_map_on_cohomology(const FiniteComplex& c, const FiniteComplex& d,
                                      const std::vector<ExactMatrix>& f, int i);

} // namespace mglc
