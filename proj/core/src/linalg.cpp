#include "rht/linalg.hpp"

#include "rht/errors.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace rht {

SparseVec sv_axpy(const SparseVec& a, const Rational& c, const SparseVec& b) {
    if (c.is_zero()) return a;
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rational v = c * b[j].second;
            if (!v.is_zero()) out.emplace_back(b[j].first, std::move(v));
            ++j;
        } else {
            Rational v = a[i].second + c * b[j].second;
            if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec sv_add(const SparseVec& a, const SparseVec& b) { return sv_axpy(a, Rational(1), b); }

SparseVec sv_scale(const SparseVec& a, const Rational& c) {
    if (c.is_zero()) return {};
    SparseVec out = a;
    for (auto& [idx, v] : out) v *= c;
    return out;
}

Rational sv_coeff(const SparseVec& v, int index) {
    auto it = std::lower_bound(v.begin(), v.end(), index,
                               [](const auto& p, int i) { return p.first < i; });
    if (it != v.end() && it->first == index) return it->second;
    return Rational(0);
}

SparseVec sv_normalize(const SparseVec& v) {
    if (v.empty()) return v;
    return sv_scale(v, v.front().second.inverse());
}

bool sv_is_zero(const SparseVec& v) { return v.empty(); }

SparseMat SparseMat::from_triplets(int rows, int cols, const std::vector<Triplet>& ts) {
    SparseMat m(rows, cols);
    for (const auto& t : ts) m.add_at(t.row, t.col, t.value);
    return m;
}

SparseMat SparseMat::from_rows(int cols, std::vector<SparseVec> rows) {
    SparseMat m(static_cast<int>(rows.size()), cols);
    m.data_ = std::move(rows);
    return m;
}

SparseMat SparseMat::identity(int n) {
    SparseMat m(n, n);
    for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
    return m;
}

void SparseMat::add_at(int r, int c, const Rational& v) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    if (v.is_zero()) return;
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& p, int i) { return p.first < i; });
    if (it != row.end() && it->first == c) {
        it->second += v;
        if (it->second.is_zero()) row.erase(it);
    } else {
        row.insert(it, {c, v});
    }
}

void SparseMat::set(int r, int c, const Rational& v) {
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& p, int i) { return p.first < i; });
    if (it != row.end() && it->first == c) row.erase(it);
    if (!v.is_zero()) add_at(r, c, v);
}

Rational SparseMat::at(int r, int c) const { return sv_coeff(data_[r], c); }

SparseMat SparseMat::transpose() const {
    SparseMat t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
    return t;
}

SparseMat SparseMat::mul(const SparseMat& o) const {
    if (cols_ != o.rows_) throw Error("SparseMat::mul: shape mismatch");
    SparseMat out(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r) {
        SparseVec acc;
        for (const auto& [k, v] : data_[r]) acc = sv_axpy(acc, v, o.data_[k]);
        out.data_[r] = std::move(acc);
    }
    return out;
}

SparseVec SparseMat::apply(const SparseVec& x) const {
    // out = M x: accumulate columns of M; work through the transpose-free way:
    // out[r] = sum_k M[r,k] x[k]. Column access is awkward row-major, so
    // accumulate row dot products lazily via a map keyed by row.
    std::map<int, Rational> acc;
    for (int r = 0; r < rows_; ++r) {
        Rational dot(0);
        const auto& row = data_[r];
        size_t i = 0, j = 0;
        while (i < row.size() && j < x.size()) {
            if (row[i].first < x[j].first) ++i;
            else if (x[j].first < row[i].first) ++j;
            else { dot += row[i].second * x[j].second; ++i; ++j; }
        }
        if (!dot.is_zero()) acc[r] = dot;
    }
    SparseVec out(acc.begin(), acc.end());
    return out;
}

int SparseMat::nnz() const {
    int n = 0;
    for (const auto& r : data_) n += static_cast<int>(r.size());
    return n;
}

namespace {

// Forward elimination in place: returns echelon rows (unnormalized) and
// pivot columns. The update row_j := p*row_j - q*row_i keeps arithmetic
// denominator-free when inputs are integral; entries stay exact Rationals
// regardless.
void echelon(std::vector<SparseVec>& rows, std::vector<int>& pivot_cols) {
    size_t done = 0;
    while (true) {
        int best_col = -1;
        size_t best_row = 0;
        for (size_t r = done; r < rows.size(); ++r) {
            if (rows[r].empty()) continue;
            int lead = rows[r].front().first;
            if (best_col == -1 || lead < best_col) {
                best_col = lead;
                best_row = r;
            }
        }
        if (best_col == -1) break;
        std::swap(rows[done], rows[best_row]);
        const Rational p = rows[done].front().second;
        for (size_t r = done + 1; r < rows.size(); ++r) {
            if (rows[r].empty() || rows[r].front().first != best_col) continue;
            const Rational q = rows[r].front().second;
            rows[r] = sv_axpy(sv_scale(rows[r], p), -q, rows[done]);
        }
        pivot_cols.push_back(best_col);
        ++done;
    }
    rows.resize(done);
}

} // namespace

RrefResult rref(const SparseMat& m) {
    std::vector<SparseVec> rows;
    rows.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r)
        if (!m.row(r).empty()) rows.push_back(m.row(r));

    RrefResult res;
    echelon(rows, res.pivot_cols);
    res.rank = static_cast<int>(rows.size());

    // Normalize pivots to 1 and clear above.
    for (int i = res.rank - 1; i >= 0; --i) {
        rows[i] = sv_normalize(rows[i]);
        for (int j = 0; j < i; ++j) {
            Rational c = sv_coeff(rows[j], res.pivot_cols[i]);
            if (!c.is_zero()) rows[j] = sv_axpy(rows[j], -c, rows[i]);
        }
    }
    res.rows = std::move(rows);
    return res;
}

int rank(const SparseMat& m) {
    std::vector<SparseVec> rows;
    for (int r = 0; r < m.rows(); ++r)
        if (!m.row(r).empty()) rows.push_back(m.row(r));
    std::vector<int> pivots;
    echelon(rows, pivots);
    return static_cast<int>(rows.size());
}

std::vector<SparseVec> kernel_basis(const SparseMat& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivot_cols) is_pivot[c] = true;

    std::vector<SparseVec> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        SparseVec v;
        v.emplace_back(f, Rational(1));
        for (int i = 0; i < r.rank; ++i) {
            Rational c = sv_coeff(r.rows[i], f);
            if (!c.is_zero()) v.emplace_back(r.pivot_cols[i], -c);
        }
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<SparseVec> image_basis(const SparseMat& m) {
    RrefResult r = rref(m.transpose());
    return r.rows;
}

std::optional<SparseVec> solve(const SparseMat& m, const SparseVec& b) {
    // Echelon form of [M | b]; inconsistent iff a pivot lands in the b column.
    std::vector<SparseVec> rows;
    for (int r = 0; r < m.rows(); ++r) {
        SparseVec row = m.row(r);
        Rational bv = sv_coeff(b, r);
        if (!bv.is_zero()) row.emplace_back(m.cols(), bv);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    std::vector<int> pivots;
    echelon(rows, pivots);
    for (int c : pivots)
        if (c == m.cols()) return std::nullopt;

    // Back-substitute pivot variables; free variables stay zero.
    std::map<int, Rational> xm;
    for (int i = static_cast<int>(rows.size()) - 1; i >= 0; --i) {
        const int pc = pivots[i];
        Rational rhs = sv_coeff(rows[i], m.cols());
        for (const auto& [c, v] : rows[i]) {
            if (c == pc || c == m.cols()) continue;
            auto it = xm.find(c);
            if (it != xm.end()) rhs -= v * it->second;
        }
        Rational xv = rhs / rows[i].front().second;
        if (!xv.is_zero()) xm.emplace(pc, std::move(xv));
    }
    return SparseVec(xm.begin(), xm.end());
}

SparseVec RowSpan::reduce(const SparseVec& v) const {
    SparseVec r = v;
    for (size_t i = 0; i < rows_.size() && !r.empty(); ++i) {
        Rational c = sv_coeff(r, pivots_[i]);
        if (!c.is_zero()) r = sv_axpy(r, -c, rows_[i]);
    }
    return r;
}

bool RowSpan::insert(const SparseVec& v) {
    SparseVec r = v;
    SparseVec coord;
    if (track_) coord.emplace_back(inserted_, Rational(1));
    for (size_t i = 0; i < rows_.size() && !r.empty(); ++i) {
        Rational c = sv_coeff(r, pivots_[i]);
        if (!c.is_zero()) {
            r = sv_axpy(r, -c, rows_[i]);
            if (track_) coord = sv_axpy(coord, -c, coords_[i]);
        }
    }
    ++inserted_;
    if (r.empty()) return false;
    Rational lead = r.front().second;
    r = sv_normalize(r);
    if (track_) coord = sv_scale(coord, lead.inverse());
    // Keep full RREF shape: clear this pivot from existing rows.
    int pc = r.front().first;
    for (size_t i = 0; i < rows_.size(); ++i) {
        Rational c = sv_coeff(rows_[i], pc);
        if (!c.is_zero()) {
            rows_[i] = sv_axpy(rows_[i], -c, r);
            if (track_) coords_[i] = sv_axpy(coords_[i], -c, coord);
        }
    }
    // Insert keeping pivot order.
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pc);
    size_t idx = static_cast<size_t>(pos - pivots_.begin());
    pivots_.insert(pos, pc);
    rows_.insert(rows_.begin() + idx, std::move(r));
    if (track_) coords_.insert(coords_.begin() + idx, std::move(coord));
    return true;
}

std::optional<std::vector<Rational>> RowSpan::coordinates(const SparseVec& v) const {
    if (!track_) throw Error("RowSpan: coordinates requested without tracking");
    SparseVec r = v;
    SparseVec coord;
    for (size_t i = 0; i < rows_.size() && !r.empty(); ++i) {
        Rational c = sv_coeff(r, pivots_[i]);
        if (!c.is_zero()) {
            r = sv_axpy(r, -c, rows_[i]);
            coord = sv_axpy(coord, c, coords_[i]);
        }
    }
    if (!r.empty()) return std::nullopt;
    std::vector<Rational> out(inserted_, Rational(0));
    for (const auto& [i, c] : coord) out[i] = c;
    return out;
}

} // namespace rht
