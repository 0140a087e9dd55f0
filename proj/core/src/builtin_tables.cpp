#include "rht/errors.hpp"
#include "rht/json_io.hpp"
#include "rht/ring_table.hpp"

namespace rht {

// Frozen golden data for the (0,5) table, generated once with the keel
// engine and checked in (also shipped as data/m0_5.ring.json).
const char* m05_table_json();

namespace {

StableGraph one_edge_04(int partner) {
    // legs {1, partner} on vertex 0, the rest on vertex 1
    StableGraph g;
    g.vertices = {{0}, {0}};
    for (int l = 1; l <= 4; ++l) g.half_edges.push_back({(l == 1 || l == partner) ? 0 : 1, l});
    g.half_edges.push_back({0, 0});
    g.half_edges.push_back({1, 0});
    g.edges.emplace_back(4, 5);
    return g;
}

RingTable make_m03() {
    RingTable t;
    t.name = "Mbar(0,3)";
    t.gn = {{0, 3}};
    t.top_degree = 0;
    GradedVectorSpace space(2);
    space.add("1", 0);
    t.ring = std::make_shared<Cdga>(Cdga::tabulated(std::move(space), {}, {}, 2));
    t.transposition_actions.resize(2); // identity
    return t;
}

RingTable make_m04() {
    RingTable t;
    t.name = "Mbar(0,4)";
    t.gn = {{0, 4}};
    t.top_degree = 2;
    GradedVectorSpace space(6);
    space.add("1", 0);
    space.add("h", 2);
    t.ring = std::make_shared<Cdga>(Cdga::tabulated(std::move(space), {}, {}, 6));
    // The symmetric group permutes the three boundary points, which are all
    // rationally equivalent to h; the action on cohomology is trivial.
    t.transposition_actions.resize(3);

    for (int partner = 2; partner <= 4; ++partner) {
        BoundaryBlock b;
        auto canon = canonicalize(one_edge_04(partner));
        b.graph = canon.graph;
        b.code = canon.code;
        // stratum = Mbar(0,3) x Mbar(0,3): H = Q in degree 0
        b.restriction.resize(3);
        b.restriction[0] = SparseMat::from_triplets(1, 1, {{0, 0, Rational(1)}});
        b.restriction[1] = SparseMat(0, 0);
        b.restriction[2] = SparseMat(0, 1); // h restricts to zero
        b.gysin.resize(1);
        b.gysin[0] = SparseMat::from_triplets(1, 1, {{0, 0, Rational(1)}}); // 1 -> h
        t.boundary.emplace(b.code, std::move(b));
    }
    return t;
}

RingTable make_m11() {
    RingTable t;
    t.name = "Mbar(1,1)";
    t.gn = {{1, 1}};
    t.top_degree = 2;
    GradedVectorSpace space(6);
    space.add("1", 0);
    space.add("w", 2);
    t.ring = std::make_shared<Cdga>(Cdga::tabulated(std::move(space), {}, {}, 6));
    t.transposition_actions.resize(0); // n = 1

    // One boundary point: the loop graph. The Gysin map sends 1 to w with
    // coefficient 1; this orbifold normalization is pinned by the assembled
    // M_{1,1} model having H = Q concentrated in degree 0.
    StableGraph loop;
    loop.vertices = {{0}};
    loop.half_edges = {{0, 1}, {0, 0}, {0, 0}};
    loop.edges.emplace_back(1, 2);
    BoundaryBlock b;
    auto canon = canonicalize(loop);
    b.graph = canon.graph;
    b.code = canon.code;
    b.restriction.resize(3);
    b.restriction[0] = SparseMat::from_triplets(1, 1, {{0, 0, Rational(1)}});
    b.restriction[1] = SparseMat(0, 0);
    b.restriction[2] = SparseMat(0, 1);
    b.gysin.resize(1);
    b.gysin[0] = SparseMat::from_triplets(1, 1, {{0, 0, Rational(1)}});
    t.boundary.emplace(b.code, std::move(b));
    return t;
}

} // namespace

RingTable builtin_table(int g, int n) {
    if (g == 0 && n == 3) return make_m03();
    if (g == 0 && n == 4) return make_m04();
    if (g == 0 && n == 5) {
        std::string text = m05_table_json();
        if (!text.empty()) return ring_table_from_json_text(text);
        return keel_ring(5); // bootstrap path while the frozen table is absent
    }
    if (g == 1 && n == 1) return make_m11();
    throw UsageError("builtin_table: no built-in table for (" + std::to_string(g) + "," +
                     std::to_string(n) +
                     "); load one with load_table or, for genus 0, use keel_ring");
}

} // namespace rht
