#include "rht/cdga.hpp"
#include "rht/errors.hpp"

namespace rht {

CdgaMorphism::CdgaMorphism(std::shared_ptr<const Cdga> src, std::shared_ptr<const Cdga> dst,
                           std::vector<SparseMat> per_degree)
    : src_(std::move(src)), dst_(std::move(dst)), mats_(std::move(per_degree)) {
    if (!src_ || !dst_) throw UsageError("CdgaMorphism: null algebra");
    if (static_cast<int>(mats_.size()) != src_->k_max() + 1)
        throw UsageError("CdgaMorphism: need one matrix per degree 0..k_max");
    for (int q = 0; q <= src_->k_max(); ++q) {
        if (mats_[q].rows() != dst_->dim(q) || mats_[q].cols() != src_->dim(q))
            throw UsageError("CdgaMorphism: matrix shape mismatch in degree " + std::to_string(q));
    }
}

CdgaMorphism CdgaMorphism::identity(std::shared_ptr<const Cdga> a) {
    std::vector<SparseMat> mats;
    for (int q = 0; q <= a->k_max(); ++q) mats.push_back(SparseMat::identity(a->dim(q)));
    return CdgaMorphism(a, a, std::move(mats));
}

CdgaMorphism CdgaMorphism::from_generator_images(std::shared_ptr<const Cdga> src,
                                                 std::shared_ptr<const Cdga> dst,
                                                 const std::vector<Element>& images) {
    const auto& gens = src->generators();
    if (images.size() != gens.size())
        throw UsageError("from_generator_images: need one image per generator");
    for (size_t g = 0; g < gens.size(); ++g) {
        if (!images[g].is_zero() && images[g].homogeneous_degree(dst->space()) != gens[g].degree)
            throw UsageError("from_generator_images: image of '" + gens[g].name +
                             "' has the wrong degree");
    }
    if (dst->k_max() < src->k_max())
        throw UsageError("from_generator_images: target truncation too small");

    std::vector<SparseMat> mats;
    for (int q = 0; q <= src->k_max(); ++q) mats.emplace_back(dst->dim(q), src->dim(q));

    for (int id = 0; id < src->space().total_dim(); ++id) {
        const GenMonomial& mon = src->monomial(id);
        Element value = Element::basis(dst->unit());
        for (const auto& [g, e] : mon)
            for (int t = 0; t < e; ++t) value = dst->multiply(value, images[g]);
        int q = src->space().degree(id);
        int col = src->space().position_in_degree(id);
        for (const auto& [tid, c] : value.terms())
            mats[q].add_at(dst->space().position_in_degree(tid), col, c);
    }
    return CdgaMorphism(std::move(src), std::move(dst), std::move(mats));
}

const SparseMat& CdgaMorphism::matrix(int q) const {
    if (q < 0 || q >= static_cast<int>(mats_.size()))
        throw UsageError("CdgaMorphism::matrix: degree out of range");
    return mats_[q];
}

Element CdgaMorphism::apply(const Element& a) const {
    Element out;
    for (const auto& [id, c] : a.terms()) {
        int q = src_->space().degree(id);
        SparseVec col = mats_[q].apply({{src_->space().position_in_degree(id), Rational(1)}});
        out += Element::from_degree_coords(dst_->space(), q, col) * c;
    }
    return out;
}

CdgaDiagnostics CdgaMorphism::verify() const {
    CdgaDiagnostics out;
    auto report = [&](const std::string& check, const std::string& witness) {
        out.ok = false;
        out.violations.push_back({check, witness});
    };

    for (int q = 0; q <= src_->k_max() - 1; ++q) {
        SparseMat lhs = mats_[q + 1].mul(src_->d_matrix(q));
        SparseMat rhs = dst_->d_matrix(q).mul(mats_[q]);
        if (!(lhs == rhs)) {
            report("chain_map", "degree " + std::to_string(q));
            break;
        }
    }

    const auto& sp = src_->space();
    [&] {
        for (int i = 0; i < sp.total_dim(); ++i) {
            for (int j = 0; j < sp.total_dim(); ++j) {
                if (sp.degree(i) + sp.degree(j) > src_->k_max()) continue;
                Element lhs = apply(src_->product(i, j));
                Element rhs = dst_->multiply(apply(Element::basis(i)), apply(Element::basis(j)));
                if (!(lhs == rhs)) {
                    report("multiplicative", "(" + sp.name(i) + ", " + sp.name(j) + ")");
                    return;
                }
            }
        }
    }();

    if (!(apply(Element::basis(src_->unit())) == Element::basis(dst_->unit())))
        report("unit", "1");
    return out;
}

CdgaMorphism CdgaMorphism::compose_after(const CdgaMorphism& g) const {
    if (g.dst_.get() != src_.get())
        throw UsageError("compose_after: source/target mismatch");
    std::vector<SparseMat> mats;
    for (int q = 0; q <= g.src_->k_max(); ++q) {
        if (q < static_cast<int>(mats_.size()))
            mats.push_back(mats_[q].mul(g.mats_[q]));
        else
            mats.emplace_back(dst_->dim(q), g.src_->dim(q));
    }
    return CdgaMorphism(g.src_, dst_, std::move(mats));
}

bool CdgaMorphism::equal(const CdgaMorphism& o) const {
    if (!(src_->space() == o.src_->space()) || !(dst_->space() == o.dst_->space())) return false;
    return mats_ == o.mats_;
}

SparseMat CdgaMorphism::induced_cohomology_map(int q, const CohomologyReport& src_h,
                                               const CohomologyReport& dst_h) const {
    SparseMat m(dst_h.dim(q), src_h.dim(q));
    const auto& reps = src_h.representatives(q);
    for (int c = 0; c < static_cast<int>(reps.size()); ++c) {
        Element img = apply(reps[c]);
        std::vector<Rational> coords = dst_h.project(q, img);
        for (int r = 0; r < static_cast<int>(coords.size()); ++r) m.add_at(r, c, coords[r]);
    }
    return m;
}

} // namespace rht
