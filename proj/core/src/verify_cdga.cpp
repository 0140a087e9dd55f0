#include "rht/cdga.hpp"
#include "rht/errors.hpp"

#include <cassert>

namespace rht {

namespace {

std::string pair_witness(const Cdga& a, int i, int j) {
    return "(" + a.space().name(i) + ", " + a.space().name(j) + ")";
}

} // namespace

CdgaDiagnostics verify_cdga(const Cdga& a) {
    CdgaDiagnostics out;
    const auto& sp = a.space();
    const int n = sp.total_dim();
    const int k_max = a.k_max();

    auto report = [&](const std::string& check, const std::string& witness) {
        out.ok = false;
        out.violations.push_back({check, witness});
    };

    // d*d = 0 wherever both applications stay in range.
    for (int i = 0; i < n; ++i) {
        if (sp.degree(i) + 2 > k_max) continue;
        Element dd = a.d(a.d(i));
        if (!dd.is_zero()) {
            report("d_squared", sp.name(i) + " -> " + dd.str(sp));
            break;
        }
    }

    // Unit acts as identity.
    for (int i = 0; i < n; ++i) {
        if (!(a.product(a.unit(), i) == Element::basis(i)) ||
            !(a.product(i, a.unit()) == Element::basis(i))) {
            report("unit", sp.name(i));
            break;
        }
    }

    // Graded commutativity on all in-range pairs.
    [&] {
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                int di = sp.degree(i), dj = sp.degree(j);
                if (di + dj > k_max) continue;
                int sign = (di % 2 != 0 && dj % 2 != 0) ? -1 : 1;
                if (!(a.product(i, j) == a.product(j, i) * Rational(sign))) {
                    report("commutativity", pair_witness(a, i, j));
                    return;
                }
            }
        }
    }();

    // Leibniz on all pairs whose product degree still has a differential.
    [&] {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                int di = sp.degree(i), dj = sp.degree(j);
                if (di + dj > k_max - 1) continue;
                Element lhs = a.d(a.product(i, j));
                Element rhs = a.multiply(a.d(i), Element::basis(j));
                Element right = a.multiply(Element::basis(i), a.d(j));
                rhs += right * Rational(di % 2 == 0 ? 1 : -1);
                if (!(lhs == rhs)) {
                    report("leibniz", pair_witness(a, i, j));
                    return;
                }
            }
        }
    }();

    // Associativity on all in-range triples, bucketed by degree so the scan
    // skips impossible combinations early.
    [&] {
        for (int qa = 0; qa <= k_max; ++qa) {
            if (sp.dim(qa) == 0) continue;
            for (int qb = 0; qa + qb <= k_max; ++qb) {
                if (sp.dim(qb) == 0) continue;
                for (int qc = 0; qa + qb + qc <= k_max; ++qc) {
                    if (sp.dim(qc) == 0) continue;
                    for (int i : sp.degree_indices(qa)) {
                        for (int j : sp.degree_indices(qb)) {
                            const Element& ij = a.product(i, j);
                            for (int k : sp.degree_indices(qc)) {
                                Element lhs = a.multiply(ij, Element::basis(k));
                                Element rhs = a.multiply(Element::basis(i), a.product(j, k));
                                if (!(lhs == rhs)) {
                                    report("associativity",
                                           "(" + sp.name(i) + ", " + sp.name(j) + ", " + sp.name(k) + ")");
                                    return;
                                }
                            }
                        }
                    }
                }
            }
        }
    }();

    return out;
}

CohomologyReport cohomology(const Cdga& a, int qmin, int qmax) {
    if (qmin < 0 || qmax > a.k_max() - 1)
        throw UsageError("cohomology: degree_range exceeds k_max - 1 (k_max=" +
                         std::to_string(a.k_max()) + ")");
    CohomologyReport rep;
    rep.algebra_ = &a;
    rep.qmin_ = qmin;
    rep.qmax_ = qmax;
    rep.per_degree_.resize(qmax >= qmin ? qmax - qmin + 1 : 0);

    for (int q = qmin; q <= qmax; ++q) {
        auto& data = rep.per_degree_[q - qmin];
        const int dim_q = a.dim(q);
        data.solver = RowSpan::with_coordinates(dim_q);
        if (dim_q == 0) continue;

        SparseMat dq = a.d_matrix(q);
        std::vector<SparseVec> kernel = kernel_basis(dq);
        std::vector<SparseVec> image;
        if (q > 0) image = image_basis(a.d_matrix(q - 1));

        RowSpan span(dim_q);
        for (const auto& v : image) span.insert(v);
        const int im_rank = span.dim();

        for (const auto& kv : kernel) {
            SparseVec residue = span.reduce(kv);
            if (sv_is_zero(residue)) continue;
            residue = sv_normalize(residue);
            span.insert(residue);
            data.reps.push_back(Element::from_degree_coords(a.space(), q, residue));
        }
        data.dim = static_cast<int>(data.reps.size());
        assert(data.dim == static_cast<int>(kernel.size()) - im_rank);

        for (const auto& r : data.reps) data.solver.insert(r.degree_coords(a.space(), q));
        for (const auto& v : image) data.solver.insert(v);
    }
    return rep;
}

CohomologyReport cohomology(const Cdga& a) { return cohomology(a, 0, a.k_max() - 1); }

int CohomologyReport::dim(int q) const {
    if (q < qmin_ || q > qmax_) throw UsageError("CohomologyReport: degree out of computed range");
    return per_degree_[q - qmin_].dim;
}

const std::vector<Element>& CohomologyReport::representatives(int q) const {
    if (q < qmin_ || q > qmax_) throw UsageError("CohomologyReport: degree out of computed range");
    return per_degree_[q - qmin_].reps;
}

std::vector<int> CohomologyReport::dims() const {
    std::vector<int> out;
    for (int q = qmin_; q <= qmax_; ++q) out.push_back(dim(q));
    return out;
}

std::vector<Rational> CohomologyReport::project(int q, const Element& z) const {
    if (q < qmin_ || q > qmax_) throw UsageError("CohomologyReport: degree out of computed range");
    if (!algebra_->d(z).is_zero())
        throw UsageError("CohomologyReport::project: element is not a cocycle");
    const auto& data = per_degree_[q - qmin_];
    auto coords = data.solver.coordinates(z.degree_coords(algebra_->space(), q));
    if (!coords) throw Error("CohomologyReport::project: cocycle not in kernel span (internal)");
    coords->resize(data.dim);
    return *coords;
}

} // namespace rht
