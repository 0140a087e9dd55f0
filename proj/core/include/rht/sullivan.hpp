#pragma once

#include "rht/cdga.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rht {

/// A free minimal algebra together with its structure morphism into the
/// target and the stage it certifies.
struct MinimalModel {
    std::shared_ptr<const Cdga> model; // free-presented
    CdgaMorphism to_target;
    int stage = 0;
};

/// Stage-by-stage k-minimal model of a connected, simply connected CDGA
/// (H^0 = Q, H^1 = 0): at each degree j <= k adjoin closed generators
/// hitting coker(H^j(M) -> H^j(A)), then generators whose differentials
/// kill ker(H^{j+1}(M) -> H^{j+1}(A)). Generators are named v{degree}_{index}.
/// Requires k + 2 <= A.k_max().
MinimalModel k_minimal_model(const Cdga& a, int k);

struct MinimalityCheck {
    bool minimal = false;
    std::string witness; // offending generator when not minimal
};
/// Checks: free-presented, M^1 = 0 (no generators below degree 2), and
/// d(M) contained in M+ . M+ (no linear terms in any generator differential).
MinimalityCheck is_minimal(const Cdga& m);

struct QuasiIsoReport {
    bool ok = false;
    struct Row {
        int degree;
        int dim_source, dim_target;
        int map_rank;
        bool iso_needed; // degree <= k: isomorphism; degree k+1: injection
        bool passed;
    };
    std::vector<Row> rows;
    std::string table() const;
};
/// Isomorphism on H^q for q <= k and injection on H^{k+1}.
QuasiIsoReport verify_k_quasi_iso(const CdgaMorphism& f, int k);

/// Cohomology of A as a tabulated zero-differential CDGA (basis = chosen
/// representatives, products projected), plus the report used to build it.
struct CohomologyRing {
    std::shared_ptr<const Cdga> ring;
    CohomologyReport report;
};
CohomologyRing cohomology_ring(const Cdga& a, int max_degree);

struct KFreeResult {
    bool ok = false;
    int failing_degree = -1;
    /// Chosen generating space V: (name, degree, class in H as an element).
    std::vector<std::tuple<std::string, int, Element>> basis;
};
/// Greedy complement-of-decomposables basis V^i for i <= k, then the
/// isomorphism/injection check for S(V) -> H. H must have zero differential.
KFreeResult k_free_basis(const Cdga& h, int k);

struct FormalityCertificate {
    bool ok = false;
    KFreeResult basis;
    MinimalModel to_algebra;         // S(V) -> A
    std::optional<CdgaMorphism> to_cohomology; // S(V) -> H(A)
    std::string obstruction;         // set when !ok
};
/// Constructive k-formality: lifts a k-free basis of H(A) to cocycles of A.
/// S(V) with zero differential is then simultaneously a k-minimal model of A
/// and of H(A).
FormalityCertificate prop_k_formal_model(const Cdga& a, int k);

struct MasseyResult {
    enum class Verdict { Zero, Nonzero, Undefined } verdict = Verdict::Undefined;
    Element representative;             // cocycle in A
    std::vector<Element> indeterminacy; // basis of the indeterminacy subspace in H coords
    std::string detail;
};
/// Triple Massey product <[a],[b],[c]>: defined when ab and bc are exact;
/// representative a.v - (-1)^{|a|} u.c with du = ab, dv = bc; the verdict
/// tests membership in exact + indeterminacy by exact linear algebra.
MasseyResult massey_triple(const Cdga& a, const Element& alpha, const Element& beta,
                           const Element& gamma);

/// Colimit of a compatible increasing chain of minimal models; returns the
/// largest stage after verifying each embeds in the next (same generator
/// prefix with equal differentials and compatible structure maps).
MinimalModel union_of_models(const std::vector<MinimalModel>& models);

/// Free polynomial model on kappa_i (degree 2i, 2i <= k) and c1_1..c1_n
/// (degree 2), zero differential, with its immediate k-formality certificate.
struct StableModel {
    std::shared_ptr<const Cdga> algebra;
    FormalityCertificate certificate;
    int punctures = 0;
    int stage = 0;
};
StableModel stable_model(int n, int k, std::optional<int> k_max = std::nullopt);

/// (g_formality, g_cohomology_stability) = (2k+3, 2k+1).
std::pair<int, int> stable_range(int k);

} // namespace rht
