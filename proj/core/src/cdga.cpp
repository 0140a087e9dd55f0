#include "rht/cdga.hpp"

#include "rht/errors.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace rht {

const Element Cdga::zero_elem_{};

Cdga Cdga::tabulated(GradedVectorSpace basis, const std::vector<ProductEntry>& products,
                     const std::vector<DifferentialEntry>& differentials, int k_max) {
    if (basis.k_max() != k_max) throw UsageError("tabulated: basis truncation differs from k_max");
    if (basis.dim(0) != 1)
        throw ValidationError("tabulated algebra must have exactly one degree-0 basis element (the unit)");

    Cdga a;
    a.kind_ = Kind::Tabulated;
    a.space_ = std::move(basis);
    a.unit_ = a.space_.id_at(0, 0);

    const int n = a.space_.total_dim();
    a.d_.assign(n, Element());

    for (const auto& e : products) {
        if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n || e.k < 0 || e.k >= n)
            throw ValidationError("product entry index out of range");
        int di = a.space_.degree(e.i), dj = a.space_.degree(e.j), dk = a.space_.degree(e.k);
        if (di + dj != dk)
            throw ValidationError("product structure constant violates the grading: " +
                                  a.space_.name(e.i) + " * " + a.space_.name(e.j) + " -> " +
                                  a.space_.name(e.k));
        auto& el = a.products_[{e.i, e.j}];
        el += Element::basis(e.k) * e.c;
    }
    // Fill unit products so the unit axiom is represented even when a file
    // omits them.
    for (int i = 0; i < n; ++i) {
        auto lu = a.products_.find({a.unit_, i});
        if (lu == a.products_.end()) a.products_[{a.unit_, i}] = Element::basis(i);
        auto ru = a.products_.find({i, a.unit_});
        if (ru == a.products_.end()) a.products_[{i, a.unit_}] = Element::basis(i);
    }

    for (const auto& e : differentials) {
        if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
            throw ValidationError("differential entry index out of range");
        if (a.space_.degree(e.j) != a.space_.degree(e.i) + 1)
            throw ValidationError("differential entry does not raise degree by 1: " +
                                  a.space_.name(e.i) + " -> " + a.space_.name(e.j));
        a.d_[e.i] += Element::basis(e.j) * e.c;
    }
    return a;
}

const Element& Cdga::product(int i, int j) const {
    int ds = space_.degree(i) + space_.degree(j);
    if (ds > k_max())
        throw DegreeOverflowError("product of " + space_.name(i) + " and " + space_.name(j) +
                                  " has degree " + std::to_string(ds) + " beyond k_max=" +
                                  std::to_string(k_max()));
    auto it = products_.find({i, j});
    return it == products_.end() ? zero_elem_ : it->second;
}

Element Cdga::multiply(const Element& a, const Element& b) const {
    Element out;
    for (const auto& [i, ca] : a.terms())
        for (const auto& [j, cb] : b.terms()) out.add_scaled(ca * cb, product(i, j));
    return out;
}

Element Cdga::d(const Element& a) const {
    Element out;
    for (const auto& [i, c] : a.terms()) out.add_scaled(c, d_[i]);
    return out;
}

SparseMat Cdga::d_matrix(int q) const {
    SparseMat m(space_.dim(q + 1), space_.dim(q));
    const auto& ids = space_.degree_indices(q);
    for (int c = 0; c < static_cast<int>(ids.size()); ++c)
        for (const auto& [tid, v] : d_[ids[c]].terms())
            m.add_at(space_.position_in_degree(tid), c, v);
    return m;
}

const std::vector<GeneratorSpec>& Cdga::generators() const {
    if (kind_ != Kind::Free) throw UsageError("generators(): algebra is not free-presented");
    return gens_;
}

const GenMonomial& Cdga::monomial(int id) const {
    if (kind_ != Kind::Free) throw UsageError("monomial(): algebra is not free-presented");
    return monomials_[id];
}

int Cdga::monomial_id(const GenMonomial& m) const {
    auto it = monomial_ids_.find(m);
    return it == monomial_ids_.end() ? -1 : it->second;
}

std::pair<int, GenMonomial> Cdga::merge_monomials(const GenMonomial& a, const GenMonomial& b) const {
    // Count Koszul transpositions: every odd-generator occurrence of b must
    // move past the odd occurrences of a with larger generator index.
    std::vector<int> odd_a;
    for (const auto& [g, e] : a)
        if (gens_[g].degree % 2 != 0) odd_a.push_back(g);

    long swaps = 0;
    for (const auto& [g, e] : b) {
        if (gens_[g].degree % 2 == 0) continue;
        auto it = std::upper_bound(odd_a.begin(), odd_a.end(), g);
        swaps += odd_a.end() - it;
    }

    GenMonomial merged;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            merged.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            merged.push_back(b[j++]);
        } else {
            int g = a[i].first;
            int e = a[i].second + b[j].second;
            if (gens_[g].degree % 2 != 0 && e > 1) return {0, {}}; // odd square
            merged.emplace_back(g, e);
            ++i;
            ++j;
        }
    }
    return {swaps % 2 == 0 ? 1 : -1, merged};
}

std::string CdgaDiagnostics::summary() const {
    if (ok) return "all checks passed";
    std::ostringstream os;
    for (size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].check << " violated at " << violations[i].witness;
    }
    return os.str();
}

} // namespace rht
