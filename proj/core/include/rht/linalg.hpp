#pragma once

#include "rht/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace rht {

/// Sparse vector: (index, nonzero coefficient) pairs sorted by index.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sv_add(const SparseVec& a, const SparseVec& b);
SparseVec sv_scale(const SparseVec& a, const Rational& c);
/// a + c*b
SparseVec sv_axpy(const SparseVec& a, const Rational& c, const SparseVec& b);
Rational sv_coeff(const SparseVec& v, int index);
/// Scales so the first nonzero coefficient is 1. No-op on zero vectors.
SparseVec sv_normalize(const SparseVec& v);
bool sv_is_zero(const SparseVec& v);

/// Sparse exact matrix in row-major storage built from triplets.
class SparseMat {
public:
    SparseMat() : rows_(0), cols_(0) {}
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    struct Triplet {
        int row;
        int col;
        Rational value;
    };
    static SparseMat from_triplets(int rows, int cols, const std::vector<Triplet>& ts);
    static SparseMat from_rows(int cols, std::vector<SparseVec> rows);
    static SparseMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const SparseVec& row(int r) const { return data_[r]; }

    /// Accumulates into (r,c); erases the entry when the sum is zero.
    void add_at(int r, int c, const Rational& v);
    void set(int r, int c, const Rational& v);
    Rational at(int r, int c) const;

    SparseMat transpose() const;
    SparseMat mul(const SparseMat& o) const;
    /// Matrix * column vector, both sparse.
    SparseVec apply(const SparseVec& x) const;

    int nnz() const;
    bool operator==(const SparseMat& o) const = default;

private:
    int rows_, cols_;
    std::vector<SparseVec> data_;
};

/// Reduced row echelon form. Rows ordered by pivot column; pivots are 1.
struct RrefResult {
    std::vector<SparseVec> rows;
    std::vector<int> pivot_cols;
    int rank = 0;
};

/// Fraction-free Gaussian elimination with earliest-column pivoting
/// (first remaining row owning the leftmost nonzero column wins), followed
/// by back-substitution. Deterministic for fixed input.
RrefResult rref(const SparseMat& m);

int rank(const SparseMat& m);

/// Kernel basis from the RREF free columns, ordered by free column index.
/// Each vector has coefficient 1 on its free column.
std::vector<SparseVec> kernel_basis(const SparseMat& m);

/// Row space of the transpose, i.e. a canonical basis of the column space,
/// as vectors in the target space.
std::vector<SparseVec> image_basis(const SparseMat& m);

/// Particular solution of M x = b with all free variables set to zero.
std::optional<SparseVec> solve(const SparseMat& m, const SparseVec& b);

/// Incrementally maintained RREF row span; used for complements,
/// membership tests and deterministic representative selection.
class RowSpan {
public:
    explicit RowSpan(int cols) : cols_(cols) {}

    /// Reduces v against the span. Returns the residue (zero if v is in it).
    SparseVec reduce(const SparseVec& v) const;
    /// Reduce-then-insert. Returns true if v enlarged the span.
    bool insert(const SparseVec& v);
    bool contains(const SparseVec& v) const { return sv_is_zero(reduce(v)); }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseVec>& rows() const { return rows_; }

    /// Coordinates of v in the inserted generating set, if v lies in the
    /// span. Only valid when constructed with track_coordinates = true.
    std::optional<std::vector<Rational>> coordinates(const SparseVec& v) const;
    static RowSpan with_coordinates(int cols) {
        RowSpan s(cols);
        s.track_ = true;
        return s;
    }

private:
    int cols_;
    bool track_ = false;
    int inserted_ = 0;
    std::vector<SparseVec> rows_;      // RREF rows, sorted by pivot col
    std::vector<int> pivots_;
    std::vector<SparseVec> coords_;    // row i of the change-of-basis, in insertion coords
};

} // namespace rht
