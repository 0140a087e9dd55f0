#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rht {

/// Stable labeled n-graph: vertices carry genera, half-edges attach to
/// vertices, interior edges pair half-edges (loops and multi-edges allowed),
/// and legs are unpaired half-edges carrying distinct labels 1..n.
struct StableGraph {
    struct Vertex {
        int genus = 0;
    };
    struct HalfEdge {
        int vertex = 0;
        int leg = 0; // 0 = interior half-edge; >0 = leg label
    };

    std::vector<Vertex> vertices;
    std::vector<HalfEdge> half_edges;
    std::vector<std::pair<int, int>> edges; // (h1, h2), interior half-edge ids

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_legs() const;
    /// First Betti number #edges - #vertices + 1 (connected graphs).
    int b1() const { return num_edges() - num_vertices() + 1; }
    /// g(G) = b1 + sum of vertex genera. Throws on disconnected input.
    int genus() const;

    int valence(int v) const;     // incident half-edges; a loop counts twice
    int loops_at(int v) const;
    /// Leg labels incident to v, ascending.
    std::vector<int> legs_at(int v) const;
    /// Per-vertex (genus, valence) in vertex order.
    std::vector<std::pair<int, int>> vertex_profile() const;

    bool is_connected() const;
    /// 2g(v) - 2 + n(v) > 0 at every vertex.
    bool is_stable() const;
    /// Throws ValidationError describing the first structural defect.
    void validate() const;

    /// Half-edge ids at v ordered legs-first (by label), then interior
    /// half-edges by id. This is the local puncture numbering used when the
    /// vertex is matched with a moduli ring table.
    std::vector<int> flags_at(int v) const;
};

/// Printable isomorphism-class certificate. Equal codes iff the graphs are
/// isomorphic as labeled graphs (legs fixed pointwise, genera preserved).
using CanonicalCode = std::string;

/// Vertex/half-edge relabeling from one graph onto another.
struct GraphIso {
    std::vector<int> vertex_map;
    std::vector<int> half_edge_map;
};

struct CanonicalForm {
    StableGraph graph; // normal form: legs first, edges sorted
    GraphIso iso;      // input -> normal form
    CanonicalCode code;
};

CanonicalForm canonicalize(const StableGraph& g);
CanonicalCode canonical_code(const StableGraph& g);

/// Raw edge contraction: merges the endpoints (or removes a loop and bumps
/// the genus). Returns the contracted graph plus tracking maps into it;
/// removed half-edges map to -1.
struct Contraction {
    StableGraph graph;
    std::vector<int> vertex_map;
    std::vector<int> half_edge_map;
    int merged_vertex = 0;
};
Contraction contract_edge_tracked(const StableGraph& g, int edge_index);
StableGraph contract_edge(const StableGraph& g, int edge_index);

/// Automorphisms fix legs pointwise and preserve genera and incidence.
struct GraphAut {
    std::vector<int> vertex_perm;
    std::vector<int> half_edge_perm;
};
struct AutGroup {
    long long order = 1;
    std::vector<GraphAut> generators;
};
AutGroup automorphisms(const StableGraph& g);

/// All automorphisms as explicit half-edge/vertex permutation pairs.
/// Intended for invariant computations at desk scale.
std::vector<GraphAut> all_automorphisms(const StableGraph& g);

/// One representative per isomorphism class of stable labeled n-graphs of
/// genus g, in normal form, sorted by (edge count, canonical code).
/// max_edges is a resource guard: enumeration whose natural edge bound
/// 3g-3+n exceeds it fails outright rather than returning a partial list.
std::vector<StableGraph> enumerate_stable_graphs(int g, int n,
                                                 std::optional<int> max_edges = std::nullopt);

} // namespace rht
