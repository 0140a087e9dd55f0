#pragma once

#include "rht/cdga.hpp"
#include "rht/stable_graph.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rht {

/// Restriction/Gysin data for one boundary inclusion, keyed by the canonical
/// code of the one-edge stable graph it corresponds to. Matrices are indexed
/// against the tensor ring of the vertex tables in canonical vertex order,
/// with factor punctures numbered by the vertex's local flag order.
struct BoundaryBlock {
    StableGraph graph; // canonical one-edge graph
    CanonicalCode code;
    /// restriction[t]: degree-t table coords -> degree-t stratum coords
    std::vector<SparseMat> restriction;
    /// gysin[t]: degree-t stratum coords -> degree-(t+2) table coords
    std::vector<SparseMat> gysin;
};

/// Cohomology ring of a compactified moduli space (or any named space):
/// a zero-differential CDGA plus boundary restriction/Gysin data and the
/// puncture-relabeling action.
struct RingTable {
    std::string name;
    std::optional<std::pair<int, int>> gn;
    std::shared_ptr<const Cdga> ring; // zero differential
    int top_degree = 0;
    std::map<CanonicalCode, BoundaryBlock> boundary;
    /// Action of the adjacent transposition (i, i+1), i = 1..n-1, as
    /// per-degree matrices. Empty vector means the identity action.
    std::vector<std::vector<SparseMat>> transposition_actions;

    int dim(int degree) const { return ring->dim(degree); }
    std::vector<int> betti() const;

    /// Matrix of the relabeling action for an arbitrary puncture permutation
    /// perm (perm[i] = image of puncture i+1, 1-based values) in one degree.
    SparseMat action_matrix(const std::vector<int>& perm, int degree) const;
    bool action_is_identity() const;
};

/// Exact built-in tables for (0,3), (0,4), (0,5) and (1,1).
/// Unknown (g,n) raises UsageError directing the caller to load_table or
/// keel_ring.
RingTable builtin_table(int g, int n);

/// H*(Mbar_{0,n}) presented by boundary divisor classes D_S modulo the
/// standard relations, computed degree by degree with exact linear algebra.
/// Supported for 3 <= n <= 6. degree_cap limits how far normal forms are
/// computed (default: full top degree 2(n-3)).
RingTable keel_ring(int n, std::optional<int> degree_cap = std::nullopt);

/// Graded tensor product with Koszul signs. Basis elements are tuples of
/// factor basis elements; names join factor names with "|".
struct TensorRing {
    RingTable table;
    std::vector<const RingTable*> factors;
    std::vector<std::vector<int>> tuples; // basis id -> per-factor basis ids
    std::map<std::vector<int>, int> ids;  // tuple -> basis id

    int id_of(const std::vector<int>& tuple) const;
};
TensorRing tensor_ring(const std::vector<const RingTable*>& factors);

/// Validation used by load_table and on built-ins: ring axioms (zero
/// differential), Poincare-type dimension symmetry for compact tables with
/// known (g,n), Gysin degree shifts, the projection formula on all tabulated
/// pairs, and restriction multiplicativity.
CdgaDiagnostics validate_table(const RingTable& t);

class RingTableProvider;
/// validate_table plus the boundary identities (projection formula,
/// restriction multiplicativity), which need the stratum factor tables.
CdgaDiagnostics validate_table_with_provider(const RingTable& t, RingTableProvider& provider);

/// Source of vertex tables for model assembly.
class RingTableProvider {
public:
    virtual ~RingTableProvider() = default;
    /// Stable reference, cached by the provider.
    virtual const RingTable& table(int g, int n) = 0;
};

class BuiltinProvider : public RingTableProvider {
public:
    const RingTable& table(int g, int n) override;

private:
    std::map<std::pair<int, int>, RingTable> cache_;
};

class KeelProvider : public RingTableProvider {
public:
    const RingTable& table(int g, int n) override;

private:
    std::map<int, RingTable> cache_;
};

} // namespace rht
