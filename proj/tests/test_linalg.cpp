#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rht/linalg.hpp"

#include <random>

using namespace rht;

namespace {

SparseMat random_matrix(std::mt19937& rng, int rows, int cols, int density_pct) {
    std::uniform_int_distribution<int> val(-4, 4), pct(0, 99);
    SparseMat m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (pct(rng) < density_pct) m.add_at(r, c, Rational(val(rng)));
    return m;
}

SparseVec mat_vec(const SparseMat& m, const SparseVec& x) { return m.apply(x); }

} // namespace

TEST_CASE("rref hand case") {
    // [1 2 | 3 ; 2 4 | 6 ; 0 1 | 1]
    SparseMat m = SparseMat::from_triplets(3, 3,
                                           {{0, 0, Rational(1)},
                                            {0, 1, Rational(2)},
                                            {0, 2, Rational(3)},
                                            {1, 0, Rational(2)},
                                            {1, 1, Rational(4)},
                                            {1, 2, Rational(6)},
                                            {2, 1, Rational(1)},
                                            {2, 2, Rational(1)}});
    RrefResult r = rref(m);
    CHECK(r.rank == 2);
    CHECK(r.pivot_cols == std::vector<int>{0, 1});
    // row0 = (1, 0, 1), row1 = (0, 1, 1)
    CHECK(sv_coeff(r.rows[0], 2) == Rational(1));
    CHECK(sv_coeff(r.rows[1], 2) == Rational(1));
}

TEST_CASE("rank-nullity on random matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + trial % 7, cols = 1 + (trial * 3) % 8;
        SparseMat m = random_matrix(rng, rows, cols, 45);
        auto ker = kernel_basis(m);
        CHECK(static_cast<int>(ker.size()) + rank(m) == cols);
        for (const auto& k : ker) CHECK(sv_is_zero(mat_vec(m, k)));
    }
}

TEST_CASE("image basis spans applied columns") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        SparseMat m = random_matrix(rng, 4, 5, 50);
        auto img = image_basis(m);
        CHECK(static_cast<int>(img.size()) == rank(m));
        RowSpan span(m.rows());
        for (const auto& v : img) span.insert(v);
        for (int c = 0; c < m.cols(); ++c) {
            SparseVec col = mat_vec(m, {{c, Rational(1)}});
            CHECK(span.contains(col));
        }
    }
}

TEST_CASE("solve finds particular solutions exactly") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> val(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        SparseMat m = random_matrix(rng, 4, 6, 40);
        SparseVec x0;
        for (int c = 0; c < 6; ++c) {
            int v = val(rng);
            if (v != 0) x0.emplace_back(c, Rational(v));
        }
        SparseVec b = mat_vec(m, x0);
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        CHECK(mat_vec(m, *x) == b);
    }
}

TEST_CASE("solve detects inconsistency") {
    // x = 0 and x = 1
    SparseMat m = SparseMat::from_triplets(2, 1, {{0, 0, Rational(1)}, {1, 0, Rational(1)}});
    CHECK_FALSE(solve(m, {{1, Rational(1)}}).has_value());
    CHECK(solve(m, {{0, Rational(1)}, {1, Rational(1)}}).has_value());
}

TEST_CASE("rref is idempotent") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        SparseMat m = random_matrix(rng, 5, 5, 40);
        RrefResult r1 = rref(m);
        SparseMat reduced = SparseMat::from_rows(5, r1.rows);
        RrefResult r2 = rref(reduced);
        CHECK(r1.rows == r2.rows);
    }
}

TEST_CASE("RowSpan coordinates recover membership combinations") {
    RowSpan span = RowSpan::with_coordinates(4);
    SparseVec v1{{0, Rational(1)}, {1, Rational(2)}};
    SparseVec v2{{1, Rational(1)}, {3, Rational(1)}};
    span.insert(v1);
    span.insert(v2);
    SparseVec w = sv_axpy(sv_scale(v1, Rational(3)), Rational(-2), v2);
    auto coords = span.coordinates(w);
    REQUIRE(coords.has_value());
    CHECK((*coords)[0] == Rational(3));
    CHECK((*coords)[1] == Rational(-2));
    CHECK_FALSE(span.coordinates({{2, Rational(1)}}).has_value());
}

TEST_CASE("matrix product associates with apply") {
    std::mt19937 rng(23);
    SparseMat a = random_matrix(rng, 3, 4, 60), b = random_matrix(rng, 4, 5, 60);
    SparseMat ab = a.mul(b);
    for (int c = 0; c < 5; ++c) {
        SparseVec e{{c, Rational(1)}};
        CHECK(ab.apply(e) == a.apply(b.apply(e)));
    }
}
