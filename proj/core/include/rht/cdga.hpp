#pragma once

#include "rht/graded.hpp"
#include "rht/linalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rht {

/// Exponent-vector polynomial over a generator list: each term is a sorted
/// list of (generator index, exponent) with a rational coefficient. This is
/// the id-stable form differentials are specified in.
using GenMonomial = std::vector<std::pair<int, int>>;
using GenPolynomial = std::vector<std::pair<GenMonomial, Rational>>;

struct GeneratorSpec {
    std::string name;
    int degree = 0;
    GenPolynomial d;       // differential, in earlier-listed generators
    std::string d_text;    // original source text when parsed, for serialization
};

/// Parses "3/2*a^2*b - c + 1" style polynomials against a generator list.
/// Only names present in `gens` are accepted.
GenPolynomial parse_polynomial(const std::string& text, const std::vector<GeneratorSpec>& gens);
std::string polynomial_text(const GenPolynomial& p, const std::vector<GeneratorSpec>& gens);

/// Commutative differential graded algebra over the rationals with Koszul
/// signs, truncated at k_max. Structure constants are tabulated; algebras
/// built from generators additionally remember their free presentation.
///
/// Immutable after construction; all operations are const.
class Cdga {
public:
    enum class Kind { Tabulated, Free };

    /// Free graded-commutative algebra on the given generators, truncated at
    /// k_max, with monomial basis in Koszul normal form (sorted generator
    /// multisets, odd generators square to zero) and the derivation extending
    /// the generator differentials. Throws on malformed differentials,
    /// degree mismatches, or d*d != 0.
    static Cdga free_algebra(std::vector<GeneratorSpec> gens, int k_max);

    /// Tabulated algebra from explicit structure constants.
    /// products: (i, j, k, c) means basis_i * basis_j contains c * basis_k.
    /// differentials: (i, j, c) means d(basis_i) contains c * basis_j.
    struct ProductEntry {
        int i, j, k;
        Rational c;
    };
    struct DifferentialEntry {
        int i, j;
        Rational c;
    };
    static Cdga tabulated(GradedVectorSpace basis, const std::vector<ProductEntry>& products,
                          const std::vector<DifferentialEntry>& differentials, int k_max);

    Kind kind() const { return kind_; }
    const GradedVectorSpace& space() const { return space_; }
    int k_max() const { return space_.k_max(); }
    int dim(int degree) const { return space_.dim(degree); }
    int unit() const { return unit_; }

    /// Basis product; zero element when absent; throws DegreeOverflowError
    /// when deg(i)+deg(j) > k_max.
    const Element& product(int i, int j) const;
    /// Bilinear extension of the basis product.
    Element multiply(const Element& a, const Element& b) const;

    const Element& d(int id) const { return d_[id]; }
    Element d(const Element& a) const;
    /// Matrix of d: degree q -> q+1 in degree-position coordinates.
    SparseMat d_matrix(int q) const;

    bool is_free_presented() const { return kind_ == Kind::Free; }
    const std::vector<GeneratorSpec>& generators() const;
    /// Monomial exponents of a basis element (free algebras only).
    const GenMonomial& monomial(int id) const;
    /// Basis id of a normal-form monomial, -1 if outside the truncation.
    int monomial_id(const GenMonomial& m) const;
    /// Element for an arbitrary polynomial (free algebras only).
    Element polynomial_element(const GenPolynomial& p) const;

    /// Koszul-signed product of two normal-form monomials. Returns
    /// (sign, merged monomial); sign 0 when an odd generator repeats.
    std::pair<int, GenMonomial> merge_monomials(const GenMonomial& a, const GenMonomial& b) const;

private:
    Cdga() = default;
    void index_products();

    Kind kind_ = Kind::Tabulated;
    GradedVectorSpace space_{0};
    int unit_ = -1;
    std::map<std::pair<int, int>, Element> products_;
    std::vector<Element> d_;
    // free presentation
    std::vector<GeneratorSpec> gens_;
    std::vector<GenMonomial> monomials_;
    std::map<GenMonomial, int> monomial_ids_;

    static const Element zero_elem_;
};

/// First-violation diagnostics for the CDGA axioms.
struct CdgaDiagnostics {
    struct Violation {
        std::string check;   // "d_squared", "leibniz", "commutativity", "associativity", "unit"
        std::string witness; // basis names involved
    };
    bool ok = true;
    std::vector<Violation> violations;
    std::string summary() const;
};

/// Checks d*d = 0, the Leibniz rule, graded commutativity, associativity and
/// the unit axiom on all in-range basis tuples. Reports the first violation
/// of each kind with witnesses.
CdgaDiagnostics verify_cdga(const Cdga& a);

/// Exact cohomology with deterministic representatives: kernel vectors are
/// reduced against the image (earliest-basis pivoting), and the surviving
/// reduced vectors, in order, become the chosen representatives.
class CohomologyReport {
public:
    int min_degree() const { return qmin_; }
    int max_degree() const { return qmax_; }
    int dim(int q) const;
    const std::vector<Element>& representatives(int q) const;
    std::vector<int> dims() const;

    /// Coordinates of a cocycle in the chosen representatives, modulo exact
    /// elements. Throws if z is not a cocycle of degree q.
    std::vector<Rational> project(int q, const Element& z) const;

private:
    friend CohomologyReport cohomology(const Cdga&, int, int);
    const Cdga* algebra_ = nullptr;
    int qmin_ = 0, qmax_ = -1;
    struct DegreeData {
        std::vector<Element> reps;
        RowSpan solver{0};        // reps then image basis, coordinate-tracked
        int dim = 0;
    };
    std::vector<DegreeData> per_degree_;
};

/// Cohomology in degrees [qmin, qmax]; requires qmax <= k_max - 1.
CohomologyReport cohomology(const Cdga& a, int qmin, int qmax);
/// Full range 0..k_max-1.
CohomologyReport cohomology(const Cdga& a);

/// Degree-preserving algebra morphism given by per-degree matrices.
class CdgaMorphism {
public:
    CdgaMorphism() = default;
    CdgaMorphism(std::shared_ptr<const Cdga> src, std::shared_ptr<const Cdga> dst,
                 std::vector<SparseMat> per_degree);

    static CdgaMorphism identity(std::shared_ptr<const Cdga> a);
    /// Morphism from a free-presented source determined by generator images.
    static CdgaMorphism from_generator_images(std::shared_ptr<const Cdga> src,
                                              std::shared_ptr<const Cdga> dst,
                                              const std::vector<Element>& images);

    const Cdga& source() const { return *src_; }
    const Cdga& target() const { return *dst_; }
    std::shared_ptr<const Cdga> source_ptr() const { return src_; }
    std::shared_ptr<const Cdga> target_ptr() const { return dst_; }

    const SparseMat& matrix(int q) const;
    Element apply(const Element& a) const;

    /// Checks commutation with differentials (degrees <= k_max-1) and
    /// multiplicativity (pairs with product degree <= k_max).
    CdgaDiagnostics verify() const;

    CdgaMorphism compose_after(const CdgaMorphism& g) const; // this(g(x))
    bool equal(const CdgaMorphism& o) const;

    /// Matrix of the induced map H^q(source) -> H^q(target).
    SparseMat induced_cohomology_map(int q, const CohomologyReport& src_h,
                                     const CohomologyReport& dst_h) const;

private:
    std::shared_ptr<const Cdga> src_, dst_;
    std::vector<SparseMat> mats_;
};

} // namespace rht
