#pragma once

#include "rht/linalg.hpp"
#include "rht/rational.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace rht {

struct BasisElement {
    std::string name;
    int degree = 0;
};

/// Finite-dimensional-per-degree graded vector space with named basis
/// elements, truncated above k_max. Immutable once handed to a Cdga.
class GradedVectorSpace {
public:
    explicit GradedVectorSpace(int k_max = 0);

    int k_max() const { return k_max_; }
    int total_dim() const { return static_cast<int>(elems_.size()); }
    int dim(int degree) const;
    const std::vector<int>& degree_indices(int degree) const;

    const BasisElement& at(int id) const { return elems_[id]; }
    int degree(int id) const { return elems_[id].degree; }
    const std::string& name(int id) const { return elems_[id].name; }
    /// Position of id within its degree block.
    int position_in_degree(int id) const { return pos_in_degree_[id]; }
    /// Global id by (degree, position).
    int id_at(int degree, int position) const { return degree_indices(degree)[position]; }

    /// -1 if no basis element has this name.
    int find(const std::string& name) const;

    /// Appends a basis element; throws on duplicate name or degree out of range.
    int add(std::string name, int degree);

    bool operator==(const GradedVectorSpace& o) const;

private:
    int k_max_;
    std::vector<BasisElement> elems_;
    std::vector<std::vector<int>> by_degree_;
    std::vector<int> pos_in_degree_;
    std::unordered_map<std::string, int> by_name_;
    static const std::vector<int> empty_;
};

/// Sparse linear combination of basis elements of some GradedVectorSpace,
/// stored as (global id, coefficient) sorted by id.
class Element {
public:
    Element() = default;
    static Element basis(int id) { return Element(SparseVec{{id, Rational(1)}}); }
    static Element from_sparse(SparseVec v) { return Element(std::move(v)); }

    bool is_zero() const { return terms_.empty(); }
    const SparseVec& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }

    Element operator+(const Element& o) const { return Element(sv_add(terms_, o.terms_)); }
    Element operator-(const Element& o) const { return Element(sv_axpy(terms_, Rational(-1), o.terms_)); }
    Element operator*(const Rational& c) const { return Element(sv_scale(terms_, c)); }
    Element& operator+=(const Element& o) {
        terms_ = sv_add(terms_, o.terms_);
        return *this;
    }
    Element& add_scaled(const Rational& c, const Element& o) {
        terms_ = sv_axpy(terms_, c, o.terms_);
        return *this;
    }
    bool operator==(const Element& o) const = default;

    Rational coeff(int id) const { return sv_coeff(terms_, id); }

    /// Degree if all terms share one; -1 for zero; throws on mixed degrees.
    int homogeneous_degree(const GradedVectorSpace& space) const;

    /// Coordinates within a single degree block (throws if terms leave it).
    SparseVec degree_coords(const GradedVectorSpace& space, int degree) const;
    static Element from_degree_coords(const GradedVectorSpace& space, int degree, const SparseVec& coords);

    std::string str(const GradedVectorSpace& space) const;

private:
    explicit Element(SparseVec terms) : terms_(std::move(terms)) {}
    SparseVec terms_;
};

} // namespace rht
