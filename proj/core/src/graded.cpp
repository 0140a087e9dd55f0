#include "rht/graded.hpp"

#include "rht/errors.hpp"

#include <sstream>

namespace rht {

const std::vector<int> GradedVectorSpace::empty_{};

GradedVectorSpace::GradedVectorSpace(int k_max) : k_max_(k_max) {
    if (k_max < 0) throw UsageError("GradedVectorSpace: negative k_max");
    by_degree_.resize(static_cast<size_t>(k_max) + 1);
}

int GradedVectorSpace::dim(int degree) const {
    if (degree < 0 || degree > k_max_) return 0;
    return static_cast<int>(by_degree_[degree].size());
}

const std::vector<int>& GradedVectorSpace::degree_indices(int degree) const {
    if (degree < 0 || degree > k_max_) return empty_;
    return by_degree_[degree];
}

int GradedVectorSpace::find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
}

int GradedVectorSpace::add(std::string name, int degree) {
    if (degree < 0 || degree > k_max_)
        throw ValidationError("basis element '" + name + "' has degree " + std::to_string(degree) +
                              " outside [0, " + std::to_string(k_max_) + "]");
    if (by_name_.count(name))
        throw ValidationError("duplicate basis name '" + name + "'");
    int id = static_cast<int>(elems_.size());
    by_name_.emplace(name, id);
    pos_in_degree_.push_back(static_cast<int>(by_degree_[degree].size()));
    by_degree_[degree].push_back(id);
    elems_.push_back({std::move(name), degree});
    return id;
}

bool GradedVectorSpace::operator==(const GradedVectorSpace& o) const {
    if (k_max_ != o.k_max_ || elems_.size() != o.elems_.size()) return false;
    for (size_t i = 0; i < elems_.size(); ++i)
        if (elems_[i].name != o.elems_[i].name || elems_[i].degree != o.elems_[i].degree) return false;
    return true;
}

int Element::homogeneous_degree(const GradedVectorSpace& space) const {
    if (terms_.empty()) return -1;
    int d = space.degree(terms_.front().first);
    for (const auto& [id, c] : terms_)
        if (space.degree(id) != d) throw Error("Element: mixed degrees where homogeneous expected");
    return d;
}

SparseVec Element::degree_coords(const GradedVectorSpace& space, int degree) const {
    SparseVec out;
    for (const auto& [id, c] : terms_) {
        if (space.degree(id) != degree)
            throw Error("Element: term of degree " + std::to_string(space.degree(id)) +
                        " in degree-" + std::to_string(degree) + " coordinates");
        out.emplace_back(space.position_in_degree(id), c);
    }
    return out;
}

Element Element::from_degree_coords(const GradedVectorSpace& space, int degree, const SparseVec& coords) {
    SparseVec terms;
    for (const auto& [pos, c] : coords) terms.emplace_back(space.id_at(degree, pos), c);
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return Element::from_sparse(std::move(terms));
}

std::string Element::str(const GradedVectorSpace& space) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [id, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (!c.is_one()) os << c.str() << "*";
        os << space.name(id);
    }
    return os.str();
}

} // namespace rht
