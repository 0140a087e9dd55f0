#include "rht/errors.hpp"
#include "rht/ring_table.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <sstream>

namespace rht {

namespace {

// Markings 1..n live on bits 0..n-1. A divisor is an unordered 2-side
// partition; the canonical side avoids marking n.
uint32_t canon_side(uint32_t mask, int n) {
    uint32_t full = (1u << n) - 1;
    if (mask & (1u << (n - 1))) return full ^ mask;
    return mask;
}

std::string side_name(uint32_t mask, int n) {
    std::ostringstream os;
    os << "D";
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) os << (i + 1);
    return os.str();
}

bool sides_compatible(uint32_t a, uint32_t b, int n) {
    uint32_t full = (1u << n) - 1;
    uint32_t ac = full ^ a, bc = full ^ b;
    return (a & b) == 0 || (a & bc) == 0 || (ac & b) == 0 || (ac & bc) == 0;
}

struct DegreeBlock {
    std::vector<std::vector<int>> monomials; // ascending gen index multisets
    std::map<std::vector<int>, int> ids;
    RowSpan reducer{0};
    std::vector<int> basis;               // monomial ids forming the quotient basis
    std::map<int, int> basis_pos;         // monomial id -> position
};

struct KeelCore {
    int n = 0;
    int top = 0;            // top cohomological degree 2(n-3)
    int cap = 0;            // computed through this cohomological degree
    std::vector<uint32_t> gens;
    std::map<uint32_t, int> gen_index;
    std::vector<SparseVec> linear_rels;           // over gen indices
    std::vector<std::pair<int, int>> incompats;   // gen index pairs, i < j
    std::vector<DegreeBlock> blocks;              // by gen-degree

    int gen_of_side(uint32_t side) const {
        auto it = gen_index.find(canon_side(side, n));
        if (it == gen_index.end()) throw Error("keel: unknown divisor side");
        return it->second;
    }

    // Normal-form coordinates (quotient basis positions) of a monomial vector.
    SparseVec normal_form(int gen_degree, const SparseVec& mono_vec) const {
        const DegreeBlock& b = blocks[gen_degree];
        SparseVec residue = b.reducer.reduce(mono_vec);
        SparseVec out;
        for (const auto& [mid, c] : residue) out.emplace_back(b.basis_pos.at(mid), c);
        return out;
    }
};

void combinations_with_replacement(int n_items, int k, std::vector<int>& cur,
                                   const std::function<void(const std::vector<int>&)>& visit) {
    if (k == 0) {
        visit(cur);
        return;
    }
    int start = cur.empty() ? 0 : cur.back();
    for (int i = start; i < n_items; ++i) {
        cur.push_back(i);
        combinations_with_replacement(n_items, k - 1, cur, visit);
        cur.pop_back();
    }
}

KeelCore build_core(int n, int cohomological_cap) {
    if (n < 3 || n > 6) throw UsageError("keel_ring: n out of supported range 3..6");
    KeelCore core;
    core.n = n;
    core.top = 2 * (n - 3);
    core.cap = std::min(cohomological_cap, core.top);

    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        int pc = std::popcount(mask);
        if (pc < 2 || pc > n - 2) continue;
        if (canon_side(mask, n) != mask) continue;
        core.gens.push_back(mask);
    }
    std::sort(core.gens.begin(), core.gens.end(), [](uint32_t a, uint32_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return std::tie(pa, a) < std::tie(pb, b);
    });
    for (size_t i = 0; i < core.gens.size(); ++i) core.gen_index[core.gens[i]] = static_cast<int>(i);

    // Linear relations: for markings i<j<k<l, the three pairings of
    // vanishing cycles agree; two independent differences per quadruple.
    auto pairing_sum = [&](int i, int j, int k, int l) {
        SparseVec v;
        uint32_t need = (1u << i) | (1u << j);
        uint32_t avoid = (1u << k) | (1u << l);
        for (size_t gi = 0; gi < core.gens.size(); ++gi) {
            uint32_t side = core.gens[gi];
            uint32_t other = ((1u << n) - 1) ^ side;
            if (((side & need) == need && (side & avoid) == 0) ||
                ((other & need) == need && (other & avoid) == 0))
                v.emplace_back(static_cast<int>(gi), Rational(1));
        }
        return v;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    SparseVec ij_kl = pairing_sum(i, j, k, l);
                    SparseVec ik_jl = pairing_sum(i, k, j, l);
                    SparseVec il_jk = pairing_sum(i, l, j, k);
                    core.linear_rels.push_back(sv_axpy(ij_kl, Rational(-1), ik_jl));
                    core.linear_rels.push_back(sv_axpy(ij_kl, Rational(-1), il_jk));
                }

    for (size_t a = 0; a < core.gens.size(); ++a)
        for (size_t b = a + 1; b < core.gens.size(); ++b)
            if (!sides_compatible(core.gens[a], core.gens[b], n))
                core.incompats.emplace_back(static_cast<int>(a), static_cast<int>(b));

    // Degree blocks by gen-degree d (cohomological degree 2d).
    const int dmax = core.cap / 2;
    core.blocks.resize(dmax + 1);
    for (int d = 0; d <= dmax; ++d) {
        DegreeBlock& blk = core.blocks[d];
        std::vector<int> cur;
        combinations_with_replacement(static_cast<int>(core.gens.size()), d, cur,
                                      [&](const std::vector<int>& m) {
                                          blk.ids.emplace(m, static_cast<int>(blk.monomials.size()));
                                          blk.monomials.push_back(m);
                                      });
        blk.reducer = RowSpan(static_cast<int>(blk.monomials.size()));

        if (d >= 1) {
            const DegreeBlock& prev = core.blocks[d - 1];
            for (const auto& rel : core.linear_rels) {
                for (const auto& m : prev.monomials) {
                    SparseMat row(1, static_cast<int>(blk.monomials.size()));
                    for (const auto& [g, c] : rel) {
                        std::vector<int> mono = m;
                        mono.insert(std::lower_bound(mono.begin(), mono.end(), g), g);
                        row.add_at(0, blk.ids.at(mono), c);
                    }
                    blk.reducer.insert(row.row(0));
                }
            }
        }
        if (d >= 2) {
            const DegreeBlock& prev2 = core.blocks[d - 2];
            for (const auto& [a, b] : core.incompats) {
                for (const auto& m : prev2.monomials) {
                    std::vector<int> mono = m;
                    mono.insert(std::lower_bound(mono.begin(), mono.end(), a), a);
                    mono.insert(std::lower_bound(mono.begin(), mono.end(), b), b);
                    blk.reducer.insert({{blk.ids.at(mono), Rational(1)}});
                }
            }
        }

        std::vector<char> pivot(blk.monomials.size(), 0);
        for (const auto& row : blk.reducer.rows()) pivot[row.front().first] = 1;
        for (int mid = 0; mid < static_cast<int>(blk.monomials.size()); ++mid) {
            if (pivot[mid]) continue;
            blk.basis_pos[mid] = static_cast<int>(blk.basis.size());
            blk.basis.push_back(mid);
        }
    }
    return core;
}

RingTable core_to_table(const KeelCore& core) {
    const int k_max = core.cap == core.top ? 2 * core.top + 2 : core.cap;
    GradedVectorSpace space(k_max);
    // id maps: (gen-degree, basis position) <-> cdga basis id
    for (int d = 0; d < static_cast<int>(core.blocks.size()); ++d) {
        const DegreeBlock& blk = core.blocks[d];
        for (int mid : blk.basis) {
            const auto& m = blk.monomials[mid];
            std::ostringstream name;
            if (m.empty()) name << "1";
            std::map<int, int> exps;
            for (int g : m) exps[g]++;
            bool first = true;
            for (const auto& [g, e] : exps) {
                name << (first ? "" : "*") << side_name(core.gens[g], core.n);
                if (e > 1) name << "^" << e;
                first = false;
            }
            space.add(name.str(), 2 * d);
        }
    }

    std::vector<Cdga::ProductEntry> products;
    const int dmax = static_cast<int>(core.blocks.size()) - 1;
    auto block_offset = [&](int d) {
        int off = 0;
        for (int t = 0; t < d; ++t) off += static_cast<int>(core.blocks[t].basis.size());
        return off;
    };
    for (int d1 = 0; d1 <= dmax; ++d1) {
        for (int d2 = 0; d2 <= dmax; ++d2) {
            const int dt = d1 + d2;
            // Beyond the top degree the quotient vanishes (full computation)
            // or is unrepresentable (capped one); either way no entry.
            if (dt > dmax) continue;
            const DegreeBlock& b1 = core.blocks[d1];
            const DegreeBlock& b2 = core.blocks[d2];
            const DegreeBlock& bt = core.blocks[dt];
            for (size_t p1 = 0; p1 < b1.basis.size(); ++p1) {
                for (size_t p2 = 0; p2 < b2.basis.size(); ++p2) {
                    std::vector<int> mono = b1.monomials[b1.basis[p1]];
                    const auto& m2 = b2.monomials[b2.basis[p2]];
                    mono.insert(mono.end(), m2.begin(), m2.end());
                    std::sort(mono.begin(), mono.end());
                    SparseVec nf = core.normal_form(dt, {{bt.ids.at(mono), Rational(1)}});
                    for (const auto& [pos, c] : nf)
                        products.push_back({block_offset(d1) + static_cast<int>(p1),
                                            block_offset(d2) + static_cast<int>(p2),
                                            block_offset(dt) + pos, c});
                }
            }
        }
    }

    RingTable out;
    out.ring = std::make_shared<Cdga>(Cdga::tabulated(std::move(space), products, {}, k_max));
    out.top_degree = core.top;
    out.gn = std::make_pair(0, core.n);
    out.name = "Mbar(0," + std::to_string(core.n) + ")";
    return out;
}

// Element of the keel table for a polynomial in the generators, given as a
// monomial vector per gen-degree.
Element table_element(const KeelCore& core, const RingTable& table, int gen_degree,
                      const SparseVec& mono_vec) {
    SparseVec nf = core.normal_form(gen_degree, mono_vec);
    return Element::from_degree_coords(table.ring->space(), 2 * gen_degree, nf);
}

} // namespace

RingTable keel_ring(int n, std::optional<int> degree_cap) {
    const int want = degree_cap.value_or(2 * (n - 3));
    KeelCore core = build_core(n, std::max(0, want));
    RingTable table = core_to_table(core);

    // Puncture relabeling actions for adjacent transpositions.
    table.transposition_actions.resize(n - 1);
    for (int s = 1; s <= n - 1; ++s) {
        std::vector<int> gen_map(core.gens.size());
        bool identity = true;
        for (size_t gi = 0; gi < core.gens.size(); ++gi) {
            uint32_t side = core.gens[gi];
            uint32_t swapped = side & ~((1u << (s - 1)) | (1u << s));
            if (side & (1u << (s - 1))) swapped |= 1u << s;
            if (side & (1u << s)) swapped |= 1u << (s - 1);
            gen_map[gi] = core.gen_index.at(canon_side(swapped, n));
            if (gen_map[gi] != static_cast<int>(gi)) identity = false;
        }
        if (identity) continue;
        auto& mats = table.transposition_actions[s - 1];
        for (int q = 0; q <= table.ring->k_max(); ++q) mats.emplace_back(table.dim(q), table.dim(q));
        for (int d = 0; d < static_cast<int>(core.blocks.size()); ++d) {
            const DegreeBlock& blk = core.blocks[d];
            for (size_t p = 0; p < blk.basis.size(); ++p) {
                std::vector<int> mono = blk.monomials[blk.basis[p]];
                for (int& g : mono) g = gen_map[g];
                std::sort(mono.begin(), mono.end());
                SparseVec nf = core.normal_form(d, {{blk.ids.at(mono), Rational(1)}});
                for (const auto& [pos, c] : nf) mats[2 * d].add_at(pos, static_cast<int>(p), c);
            }
        }
    }

    if (core.cap != core.top) return table; // ring only; no boundary data

    // Boundary blocks for every one-edge (0,n) graph. Factor rings and their
    // presentations are cached per marking count.
    std::map<int, std::pair<KeelCore, RingTable>> factor_cache;
    auto factor = [&](int m) -> const std::pair<KeelCore, RingTable>& {
        auto it = factor_cache.find(m);
        if (it == factor_cache.end()) {
            KeelCore fc = build_core(m, 2 * (m - 3));
            RingTable ft = core_to_table(fc);
            it = factor_cache.emplace(m, std::make_pair(std::move(fc), std::move(ft))).first;
        }
        return it->second;
    };

    for (const auto& g : enumerate_stable_graphs(0, n)) {
        if (g.num_edges() != 1) continue;
        BoundaryBlock block;
        block.graph = g;
        block.code = canonical_code(g);

        std::vector<int> legs0 = g.legs_at(0), legs1 = g.legs_at(1);
        const auto& [c0, f0] = factor(static_cast<int>(legs0.size()) + 1);
        const auto& [c1, f1] = factor(static_cast<int>(legs1.size()) + 1);
        TensorRing strat = tensor_ring({&f0, &f1});

        uint32_t side0 = 0;
        for (int l : legs0) side0 |= 1u << (l - 1);
        const int delta_gen = core.gen_of_side(side0);
        const Element delta_elem = table_element(core, table, 1, {{delta_gen, Rational(1)}});

        // psi class at the node (last marking) of a factor: the sum of sides
        // containing the node and avoiding markings 1,2, i.e. canonical reps
        // containing {1,2}.
        auto psi_node = [&](const KeelCore& fc, const RingTable& f) {
            Element out;
            if (fc.n < 4) return out;
            SparseVec mono;
            for (size_t gi = 0; gi < fc.gens.size(); ++gi)
                if ((fc.gens[gi] & 3u) == 3u) mono.emplace_back(static_cast<int>(gi), Rational(1));
            return table_element(fc, f, 1, mono);
        };

        // Images of the (0,n) generators in the stratum tensor ring.
        std::vector<Element> gen_images(core.gens.size());
        auto embed = [&](const Element& x, int which) {
            Element out;
            for (const auto& [id, c] : x.terms()) {
                std::vector<int> tuple = {f0.ring->unit(), f1.ring->unit()};
                tuple[which] = id;
                out += Element::basis(strat.id_of(tuple)) * c;
            }
            return out;
        };
        auto local_divisor = [&](const std::vector<int>& legs, const KeelCore& fc,
                                 const RingTable& f, uint32_t global_side) -> Element {
            // Translate a global side contained in this vertex's legs into
            // the factor's divisor generator: markings renumbered by leg
            // rank, node = last marking, never in the side.
            uint32_t local = 0;
            for (size_t i = 0; i < legs.size(); ++i)
                if (global_side & (1u << (legs[i] - 1))) local |= 1u << i;
            return table_element(fc, f, 1, {{fc.gen_of_side(local), Rational(1)}});
        };

        uint32_t full = (1u << n) - 1;
        uint32_t mask0 = side0, mask1 = full ^ side0;
        for (size_t gi = 0; gi < core.gens.size(); ++gi) {
            uint32_t side = core.gens[gi];
            uint32_t other = full ^ side;
            if (static_cast<int>(gi) == delta_gen) {
                Element r;
                r.add_scaled(Rational(-1), embed(psi_node(c0, f0), 0));
                r.add_scaled(Rational(-1), embed(psi_node(c1, f1), 1));
                gen_images[gi] = r;
            } else if ((side & mask0) == side && side != mask0) {
                gen_images[gi] = embed(local_divisor(legs0, c0, f0, side), 0);
            } else if ((other & mask0) == other && other != mask0) {
                gen_images[gi] = embed(local_divisor(legs0, c0, f0, other), 0);
            } else if ((side & mask1) == side && side != mask1) {
                gen_images[gi] = embed(local_divisor(legs1, c1, f1, side), 1);
            } else if ((other & mask1) == other && other != mask1) {
                gen_images[gi] = embed(local_divisor(legs1, c1, f1, other), 1);
            } else {
                gen_images[gi] = Element(); // incompatible: restricts to zero
            }
        }

        // Restriction matrices: multiplicative extension to basis monomials.
        const auto& tsp = table.ring->space();
        const auto& ssp = strat.table.ring->space();
        for (int t = 0; t <= table.top_degree; ++t)
            block.restriction.emplace_back(strat.table.ring->dim(t), table.dim(t));
        for (int d = 0; d < static_cast<int>(core.blocks.size()); ++d) {
            const DegreeBlock& blk = core.blocks[d];
            for (size_t p = 0; p < blk.basis.size(); ++p) {
                Element img = Element::basis(strat.table.ring->unit());
                for (int g2 : blk.monomials[blk.basis[p]])
                    img = strat.table.ring->multiply(img, gen_images[g2]);
                int col = static_cast<int>(p);
                for (const auto& [sid, c] : img.terms())
                    block.restriction[2 * d].add_at(ssp.position_in_degree(sid), col, c);
            }
        }

        // Gysin via the projection formula: for rho surjective,
        // gysin(b) = u . delta with rho(u) = b; well-defined because
        // ker(rho) . delta = 0, which is asserted.
        for (int t = 0; t <= strat.table.top_degree; ++t) {
            SparseMat gys(t + 2 <= table.top_degree ? table.dim(t + 2) : 0,
                          strat.table.ring->dim(t));
            if (t + 2 <= table.top_degree) {
                const SparseMat& rho = block.restriction[t];
                for (const auto& kv : kernel_basis(rho)) {
                    Element k = Element::from_degree_coords(tsp, t, kv);
                    if (!table.ring->multiply(k, delta_elem).is_zero())
                        throw Error("keel: Gysin not well-defined (kernel * delta != 0)");
                }
                for (int b = 0; b < strat.table.ring->dim(t); ++b) {
                    auto u = solve(rho, {{b, Rational(1)}});
                    if (!u)
                        throw Error("keel: restriction not surjective in degree " +
                                    std::to_string(t));
                    Element ue = Element::from_degree_coords(tsp, t, *u);
                    Element gy = table.ring->multiply(ue, delta_elem);
                    for (const auto& [tid, c] : gy.terms())
                        gys.add_at(tsp.position_in_degree(tid), b, c);
                }
            }
            block.gysin.push_back(std::move(gys));
        }

        table.boundary.emplace(block.code, std::move(block));
    }
    return table;
}

} // namespace rht
