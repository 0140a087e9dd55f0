#include "rht/ring_table.hpp"

#include "rht/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace rht {

std::vector<int> RingTable::betti() const {
    std::vector<int> out;
    for (int q = 0; q <= top_degree; ++q) out.push_back(ring->dim(q));
    return out;
}

bool RingTable::action_is_identity() const {
    for (const auto& mats : transposition_actions)
        if (!mats.empty()) return false;
    return true;
}

SparseMat RingTable::action_matrix(const std::vector<int>& perm, int degree) const {
    const int n = static_cast<int>(perm.size());
    const int d = ring->dim(degree);
    // Decompose into adjacent transpositions by bubble sort: find sigma as a
    // product s_{j_r} ... s_{j_1} where applying s_j to the one-line array
    // swaps entries j, j+1.
    std::vector<int> a = perm;
    std::vector<int> swaps;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = 0; j + 1 < n; ++j) {
            if (a[j] > a[j + 1]) {
                std::swap(a[j], a[j + 1]);
                swaps.push_back(j + 1); // transposition (j+1, j+2), 1-based
                changed = true;
            }
        }
    }
    SparseMat m = SparseMat::identity(d);
    for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) {
        int i = *it;
        const auto& mats = transposition_actions.empty()
                               ? std::vector<SparseMat>{}
                               : transposition_actions[static_cast<size_t>(i - 1)];
        if (mats.empty()) continue; // identity action
        if (degree >= static_cast<int>(mats.size()))
            throw ValidationError("action_matrix: no matrix for degree " + std::to_string(degree));
        m = m.mul(mats[degree]);
    }
    return m;
}

int TensorRing::id_of(const std::vector<int>& tuple) const {
    auto it = ids.find(tuple);
    if (it == ids.end()) throw Error("TensorRing: tuple not in basis");
    return it->second;
}

TensorRing tensor_ring(const std::vector<const RingTable*>& factors) {
    if (factors.empty()) throw UsageError("tensor_ring: no factors");
    TensorRing out;
    out.factors = factors;

    int top = 0;
    for (const auto* f : factors) top += f->top_degree;
    const int k_max = 2 * top + 2;

    GradedVectorSpace space(k_max);
    std::vector<std::vector<int>> tuples;
    std::vector<int> current;
    std::function<void(size_t)> emit = [&](size_t fi) {
        if (fi == factors.size()) {
            tuples.push_back(current);
            return;
        }
        for (int id = 0; id < factors[fi]->ring->space().total_dim(); ++id) {
            current.push_back(id);
            emit(fi + 1);
            current.pop_back();
        }
    };
    emit(0);

    // Stable order: by total degree, then tuple lexicographic.
    std::stable_sort(tuples.begin(), tuples.end(), [&](const auto& a, const auto& b) {
        int da = 0, db = 0;
        for (size_t f = 0; f < factors.size(); ++f) {
            da += factors[f]->ring->space().degree(a[f]);
            db += factors[f]->ring->space().degree(b[f]);
        }
        if (da != db) return da < db;
        return a < b;
    });

    for (const auto& t : tuples) {
        int deg = 0;
        std::ostringstream name;
        for (size_t f = 0; f < factors.size(); ++f) {
            deg += factors[f]->ring->space().degree(t[f]);
            name << (f ? "|" : "") << factors[f]->ring->space().name(t[f]);
        }
        int id = space.add(name.str(), deg);
        out.ids.emplace(t, id);
        out.tuples.push_back(t);
        (void)id;
    }

    // Products with Koszul signs: (a1x..xam)(b1x..xbm) =
    // (-1)^{sum_{i<j} |b_i||a_j|} (a1b1 x .. x ambm).
    std::vector<Cdga::ProductEntry> products;
    const int nb = static_cast<int>(out.tuples.size());
    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j < nb; ++j) {
            const auto& ta = out.tuples[i];
            const auto& tb = out.tuples[j];
            long parity = 0;
            for (size_t fi = 0; fi < factors.size(); ++fi)
                for (size_t fj = fi + 1; fj < factors.size(); ++fj)
                    parity += (factors[fi]->ring->space().degree(tb[fi]) % 2) *
                              (factors[fj]->ring->space().degree(ta[fj]) % 2);
            int sign = parity % 2 == 0 ? 1 : -1;

            // Expand the per-factor products.
            std::vector<const Element*> fprods(factors.size());
            bool zero = false;
            for (size_t f = 0; f < factors.size() && !zero; ++f) {
                fprods[f] = &factors[f]->ring->product(ta[f], tb[f]);
                if (fprods[f]->is_zero()) zero = true;
            }
            if (zero) continue;
            std::vector<int> tuple(factors.size());
            std::function<void(size_t, Rational)> expand = [&](size_t f, Rational coeff) {
                if (f == factors.size()) {
                    products.push_back({i, j, out.ids.at(tuple), coeff * Rational(sign)});
                    return;
                }
                for (const auto& [id, c] : fprods[f]->terms()) {
                    tuple[f] = id;
                    expand(f + 1, coeff * c);
                }
            };
            expand(0, Rational(1));
        }
    }

    auto cdga = Cdga::tabulated(std::move(space), products, {}, k_max);
    out.table.ring = std::make_shared<Cdga>(std::move(cdga));
    out.table.top_degree = top;
    std::ostringstream nm;
    for (size_t f = 0; f < factors.size(); ++f) nm << (f ? " (x) " : "") << factors[f]->name;
    out.table.name = nm.str();
    return out;
}

CdgaDiagnostics validate_table(const RingTable& t) {
    CdgaDiagnostics out = verify_cdga(*t.ring);
    auto report = [&](const std::string& check, const std::string& witness) {
        out.ok = false;
        out.violations.push_back({check, witness});
    };

    for (int id = 0; id < t.ring->space().total_dim(); ++id) {
        if (!t.ring->d(id).is_zero()) {
            report("zero_differential", t.ring->space().name(id));
            break;
        }
    }

    if (t.gn) {
        for (int q = 0; q <= t.top_degree; ++q) {
            if (t.ring->dim(q) != t.ring->dim(t.top_degree - q)) {
                report("poincare_symmetry", "degree " + std::to_string(q));
                break;
            }
        }
    }

    for (const auto& [code, block] : t.boundary) {
        if (block.graph.num_edges() != 1) {
            report("boundary_block", code + ": not a one-edge graph");
            continue;
        }
        if (canonical_code(block.graph) != code) {
            report("boundary_block", code + ": code does not match the stored graph");
            continue;
        }
        for (size_t td = 0; td < block.gysin.size(); ++td) {
            const auto& m = block.gysin[td];
            if (m.rows() != t.ring->dim(static_cast<int>(td) + 2)) {
                report("gysin_degree_shift", code + " at stratum degree " + std::to_string(td));
                break;
            }
        }
    }
    return out;
}

namespace {

// Projection formula and restriction multiplicativity, checked against the
// stratum tensor rings supplied by `factor_of`.
void check_boundary_identities(const RingTable& t, RingTableProvider& provider,
                               CdgaDiagnostics& out) {
    auto report = [&](const std::string& check, const std::string& witness) {
        out.ok = false;
        out.violations.push_back({check, witness});
    };

    for (const auto& [code, block] : t.boundary) {
        std::vector<const RingTable*> factors;
        for (int v = 0; v < block.graph.num_vertices(); ++v) {
            auto [gv, nv] = block.graph.vertex_profile()[v];
            factors.push_back(&provider.table(gv, nv));
        }
        TensorRing strat = tensor_ring(factors);
        const auto& ssp = strat.table.ring->space();
        const auto& tsp = t.ring->space();

        auto restrict_elem = [&](const Element& x) {
            Element y;
            for (const auto& [id, c] : x.terms()) {
                int q = tsp.degree(id);
                if (q >= static_cast<int>(block.restriction.size())) continue;
                SparseVec col =
                    block.restriction[q].apply({{tsp.position_in_degree(id), Rational(1)}});
                y += Element::from_degree_coords(ssp, q, col) * c;
            }
            return y;
        };
        auto gysin_elem = [&](const Element& x) {
            Element y;
            for (const auto& [id, c] : x.terms()) {
                int q = ssp.degree(id);
                if (q >= static_cast<int>(block.gysin.size())) continue;
                SparseVec col = block.gysin[q].apply({{ssp.position_in_degree(id), Rational(1)}});
                y += Element::from_degree_coords(tsp, q + 2, col) * c;
            }
            return y;
        };

        // restriction is a ring map
        for (int i = 0; i < tsp.total_dim(); ++i) {
            for (int j = 0; j < tsp.total_dim(); ++j) {
                if (tsp.degree(i) + tsp.degree(j) > t.top_degree) continue;
                Element lhs = restrict_elem(t.ring->product(i, j));
                Element rhs = strat.table.ring->multiply(restrict_elem(Element::basis(i)),
                                                         restrict_elem(Element::basis(j)));
                if (!(lhs == rhs)) {
                    report("restriction_ring_map",
                           code + ": (" + tsp.name(i) + ", " + tsp.name(j) + ")");
                    goto next_block;
                }
            }
        }

        // projection formula i_*(a . i^* b) = i_*(a) . b
        for (int a = 0; a < ssp.total_dim(); ++a) {
            for (int b = 0; b < tsp.total_dim(); ++b) {
                int sa = ssp.degree(a), tb = tsp.degree(b);
                if (sa + tb > strat.table.top_degree) continue;
                if (sa + tb + 2 > t.top_degree) continue;
                Element inner =
                    strat.table.ring->multiply(Element::basis(a), restrict_elem(Element::basis(b)));
                Element lhs = gysin_elem(inner);
                Element rhs =
                    t.ring->multiply(gysin_elem(Element::basis(a)), Element::basis(b));
                if (!(lhs == rhs)) {
                    report("projection_formula", code + ": (" + ssp.name(a) + ", " + tsp.name(b) + ")");
                    goto next_block;
                }
            }
        }
    next_block:;
    }
}

} // namespace

CdgaDiagnostics validate_table_with_provider(const RingTable& t, RingTableProvider& provider) {
    CdgaDiagnostics out = validate_table(t);
    check_boundary_identities(t, provider, out);
    return out;
}

const RingTable& BuiltinProvider::table(int g, int n) {
    auto key = std::make_pair(g, n);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, builtin_table(g, n)).first;
    return it->second;
}

const RingTable& KeelProvider::table(int g, int n) {
    if (g != 0)
        throw UsageError("keel provider supplies genus-0 tables only; requested g=" +
                         std::to_string(g));
    auto it = cache_.find(n);
    if (it == cache_.end()) it = cache_.emplace(n, keel_ring(n)).first;
    return it->second;
}

} // namespace rht
