#pragma once

#include "rht/cdga.hpp"
#include "rht/ring_table.hpp"
#include "rht/stable_graph.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rht {

/// Strata data for the complement of a normal crossings divisor with r
/// components: one ring table per nonempty intersection D_S, restriction
/// maps to the covers D_{S+i}, and Gysin maps to the faces D_{S-i}.
/// Subsets absent from the map are empty intersections.
struct StrataDescription {
    struct Stratum {
        RingTable table;
        /// restriction to D_{S+i}, keyed by the added component i (1..r);
        /// per-degree matrices, degree t -> t.
        std::map<int, std::vector<SparseMat>> restrictions;
        /// Gysin to D_{S-i}, keyed by the removed component i; degree t -> t+2.
        std::map<int, std::vector<SparseMat>> gysin;
    };
    int r = 0;
    std::map<std::vector<int>, Stratum> strata; // key: sorted subset of 1..r

    /// Structural validation: D_empty present, map shapes consistent,
    /// restriction squares commute, restrictions multiplicative.
    void validate() const;
};

/// The bigraded first-page algebra of a normal-crossings complement, with
/// the shuffle-signed product and the Gysin differential, realized as a
/// total-degree CDGA whose basis carries (p, q) tags.
class MorganBigraded {
public:
    struct BasisTag {
        int p = 0, q = 0;
        std::string stratum; // subset "{1,3}" or a graph canonical code
        std::string label;   // originating tensor/ring basis name
    };

    const Cdga& total() const { return *total_; }
    std::shared_ptr<const Cdga> total_ptr() const { return total_; }
    const std::vector<BasisTag>& tags() const { return tags_; }
    std::optional<std::pair<int, int>> gn() const { return gn_; }

    int dim(int p, int q) const;
    /// All (p,q) blocks with nonzero dimension, sorted by (p, q).
    std::vector<std::pair<int, int>> blocks() const;
    /// Basis ids (into total()) of one block.
    std::vector<int> block_ids(int p, int q) const;
    int top_total_degree() const { return top_; }

    /// Dimensions of the row-wise cohomology at (p, q):
    /// ker(d: A^{p,q} -> A^{p+1,q}) / im(A^{p-1,q}).
    int e2_dim(int p, int q) const;

private:
    friend class ModelBuilder;
    std::shared_ptr<const Cdga> total_;
    std::vector<BasisTag> tags_;
    std::optional<std::pair<int, int>> gn_;
    int top_ = 0;
    std::map<std::pair<int, int>, std::vector<int>> blocks_;
};

/// Generic normal-crossings model from explicit strata data.
MorganBigraded build_nc_model(const StrataDescription& desc, int k_max);

/// Moduli model: the sum over stable labeled n-graphs of Aut-invariant
/// tensor products of vertex tables, with the edge-contraction differential.
MorganBigraded build_moduli_model(int g, int n, RingTableProvider& provider, int k_max);

/// Total-degree CDGA of the model (the model is already carried that way;
/// this accessor matches the operation vocabulary).
std::shared_ptr<const Cdga> to_cdga(const MorganBigraded& m);

struct E2CheckReport {
    bool pass = false;
    std::vector<int> computed;
    std::vector<int> expected;
    std::string table() const; // printable discrepancy table
};
E2CheckReport e2_check(const MorganBigraded& m, const std::vector<int>& expected);

struct ColumnSupportReport {
    struct Entry {
        int p, q, dim;
        bool in_stable_range; // p+q <= (g-1)/2 when (g,n) is known
    };
    std::vector<Entry> survivors;
    bool flagged = false; // some p != 0 survivor inside the stable range
    std::string table() const;
};
ColumnSupportReport column_support_report(const MorganBigraded& m, int degree_bound);

} // namespace rht
