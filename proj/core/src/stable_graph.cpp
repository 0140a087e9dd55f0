#include "rht/stable_graph.hpp"

#include "rht/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace rht {

int StableGraph::num_legs() const {
    int n = 0;
    for (const auto& h : half_edges)
        if (h.leg > 0) ++n;
    return n;
}

int StableGraph::genus() const {
    if (!is_connected()) throw UsageError("genus: graph is not connected");
    int g = b1();
    for (const auto& v : vertices) g += v.genus;
    return g;
}

int StableGraph::valence(int v) const {
    int n = 0;
    for (const auto& h : half_edges)
        if (h.vertex == v) ++n;
    return n;
}

int StableGraph::loops_at(int v) const {
    int n = 0;
    for (const auto& [a, b] : edges)
        if (half_edges[a].vertex == v && half_edges[b].vertex == v) ++n;
    return n;
}

std::vector<int> StableGraph::legs_at(int v) const {
    std::vector<int> out;
    for (const auto& h : half_edges)
        if (h.vertex == v && h.leg > 0) out.push_back(h.leg);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<int, int>> StableGraph::vertex_profile() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < num_vertices(); ++v) out.emplace_back(vertices[v].genus, valence(v));
    return out;
}

bool StableGraph::is_connected() const {
    if (vertices.empty()) return false;
    std::vector<char> seen(vertices.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : edges) {
            int va = half_edges[a].vertex, vb = half_edges[b].vertex;
            if (va == v && !seen[vb]) {
                seen[vb] = 1;
                stack.push_back(vb);
            }
            if (vb == v && !seen[va]) {
                seen[va] = 1;
                stack.push_back(va);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool StableGraph::is_stable() const {
    for (int v = 0; v < num_vertices(); ++v)
        if (2 * vertices[v].genus - 2 + valence(v) <= 0) return false;
    return true;
}

void StableGraph::validate() const {
    std::set<int> labels;
    std::vector<char> used(half_edges.size(), 0);
    for (const auto& h : half_edges) {
        if (h.vertex < 0 || h.vertex >= num_vertices())
            throw ValidationError("half-edge attached to missing vertex");
        if (h.leg > 0 && !labels.insert(h.leg).second)
            throw ValidationError("duplicate leg label " + std::to_string(h.leg));
    }
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= static_cast<int>(half_edges.size()) ||
            b >= static_cast<int>(half_edges.size()) || a == b)
            throw ValidationError("edge references invalid half-edges");
        if (half_edges[a].leg > 0 || half_edges[b].leg > 0)
            throw ValidationError("edge pairs a leg half-edge");
        if (used[a]++ || used[b]++) throw ValidationError("half-edge used by two edges");
    }
    for (size_t h = 0; h < half_edges.size(); ++h)
        if (half_edges[h].leg == 0 && !used[h])
            throw ValidationError("interior half-edge not paired by any edge");
    if (!labels.empty() && (*labels.begin() != 1 || *labels.rbegin() != static_cast<int>(labels.size())))
        throw ValidationError("leg labels must be exactly 1..n");
    for (const auto& v : vertices)
        if (v.genus < 0) throw ValidationError("negative vertex genus");
    if (!is_connected()) throw ValidationError("graph is not connected");
    if (!is_stable()) throw ValidationError("graph violates stability");
}

std::vector<int> StableGraph::flags_at(int v) const {
    std::vector<int> legs, interior;
    for (int h = 0; h < static_cast<int>(half_edges.size()); ++h) {
        if (half_edges[h].vertex != v) continue;
        (half_edges[h].leg > 0 ? legs : interior).push_back(h);
    }
    std::sort(legs.begin(), legs.end(),
              [&](int a, int b) { return half_edges[a].leg < half_edges[b].leg; });
    legs.insert(legs.end(), interior.begin(), interior.end());
    return legs;
}

namespace {

// Multiset key of (sorted endpoint pair) -> multiplicity, in a fixed vertex
// ordering. Loops appear as (v, v).
std::map<std::pair<int, int>, int> edge_multiset(const StableGraph& g, const std::vector<int>& vmap) {
    std::map<std::pair<int, int>, int> out;
    for (const auto& [a, b] : g.edges) {
        int u = vmap[g.half_edges[a].vertex], w = vmap[g.half_edges[b].vertex];
        if (u > w) std::swap(u, w);
        out[{u, w}]++;
    }
    return out;
}

std::string encode(const StableGraph& g, const std::vector<int>& vmap) {
    // vmap: original vertex -> position in the candidate ordering.
    int m = g.num_vertices();
    std::vector<int> genus(m);
    for (int v = 0; v < m; ++v) genus[vmap[v]] = g.vertices[v].genus;

    std::vector<std::pair<int, int>> legs; // (label, position)
    for (const auto& h : g.half_edges)
        if (h.leg > 0) legs.emplace_back(h.leg, vmap[h.vertex]);
    std::sort(legs.begin(), legs.end());

    auto edges = edge_multiset(g, vmap);

    std::ostringstream os;
    os << "v" << m << ";g";
    for (int v = 0; v < m; ++v) os << (v ? "," : "") << genus[v];
    os << ";l";
    for (size_t i = 0; i < legs.size(); ++i) os << (i ? "," : "") << legs[i].first << ":" << legs[i].second;
    os << ";e";
    bool first = true;
    for (const auto& [uw, mult] : edges)
        for (int t = 0; t < mult; ++t) {
            os << (first ? "" : ",") << uw.first << "-" << uw.second;
            first = false;
        }
    return os.str();
}

// Iterative refinement of vertex colors by (genus, valence, legs, loops) and
// neighbor-color multisets; returns a color class id per vertex.
std::vector<int> refine_colors(const StableGraph& g) {
    int m = g.num_vertices();
    std::vector<std::string> key(m);
    for (int v = 0; v < m; ++v) {
        std::ostringstream os;
        os << g.vertices[v].genus << "|" << g.valence(v) << "|" << g.loops_at(v) << "|";
        for (int l : g.legs_at(v)) os << l << ",";
        key[v] = os.str();
    }
    std::vector<int> color(m);
    auto assign = [&] {
        std::map<std::string, int> ids;
        for (int v = 0; v < m; ++v) ids.emplace(key[v], 0);
        int next = 0;
        for (auto& [k, id] : ids) id = next++;
        for (int v = 0; v < m; ++v) color[v] = ids.at(key[v]);
        return next;
    };
    int classes = assign();

    for (int iter = 0; iter < m; ++iter) {
        std::vector<std::string> next_key(m);
        for (int v = 0; v < m; ++v) {
            std::vector<std::pair<int, int>> nb; // (neighbor color, count)
            std::map<int, int> counts;
            for (const auto& [a, b] : g.edges) {
                int va = g.half_edges[a].vertex, vb = g.half_edges[b].vertex;
                if (va == v && vb != v) counts[color[vb]]++;
                if (vb == v && va != v) counts[color[va]]++;
            }
            nb.assign(counts.begin(), counts.end());
            std::ostringstream os;
            os << color[v] << "#";
            for (auto& [c, k] : nb) os << c << "x" << k << ",";
            next_key[v] = os.str();
        }
        key = next_key;
        int new_classes = assign();
        if (new_classes == classes) break;
        classes = new_classes;
    }
    return color;
}

// All vertex orderings compatible with the color classes, visited in a
// deterministic order. Classes are ordered by color id; vertices with legs
// are singleton classes in practice but the search does not rely on it.
void class_orderings(const std::vector<int>& color,
                     const std::function<void(const std::vector<int>&)>& visit) {
    int m = static_cast<int>(color.size());
    std::map<int, std::vector<int>> classes;
    for (int v = 0; v < m; ++v) classes[color[v]].push_back(v);

    std::vector<std::vector<int>> groups;
    for (auto& [c, vs] : classes) groups.push_back(vs);

    std::vector<int> vmap(m, -1);
    int base = 0;
    std::function<void(size_t)> rec = [&](size_t gi) {
        if (gi == groups.size()) {
            visit(vmap);
            return;
        }
        std::vector<int>& vs = groups[gi];
        std::sort(vs.begin(), vs.end());
        int start = base;
        base += static_cast<int>(vs.size());
        std::vector<int> perm = vs;
        do {
            for (size_t i = 0; i < perm.size(); ++i) vmap[perm[i]] = start + static_cast<int>(i);
            rec(gi + 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
        base = start;
    };
    rec(0);
}

} // namespace

CanonicalForm canonicalize(const StableGraph& g) {
    const std::vector<int> color = refine_colors(g);

    std::string best;
    std::vector<int> best_vmap;
    class_orderings(color, [&](const std::vector<int>& vmap) {
        std::string code = encode(g, vmap);
        if (best.empty() || code < best) {
            best = code;
            best_vmap = vmap;
        }
    });

    // Rebuild the normal form: vertices in canonical order, legs first by
    // label, then interior half-edges in sorted edge order.
    CanonicalForm out;
    out.code = best;
    int m = g.num_vertices();
    out.graph.vertices.resize(m);
    for (int v = 0; v < m; ++v) out.graph.vertices[best_vmap[v]].genus = g.vertices[v].genus;

    out.iso.vertex_map = best_vmap;
    out.iso.half_edge_map.assign(g.half_edges.size(), -1);

    std::vector<std::pair<int, int>> legs; // (label, original half-edge)
    for (int h = 0; h < static_cast<int>(g.half_edges.size()); ++h)
        if (g.half_edges[h].leg > 0) legs.emplace_back(g.half_edges[h].leg, h);
    std::sort(legs.begin(), legs.end());
    for (const auto& [label, h] : legs) {
        int nh = static_cast<int>(out.graph.half_edges.size());
        out.graph.half_edges.push_back({best_vmap[g.half_edges[h].vertex], label});
        out.iso.half_edge_map[h] = nh;
    }

    // Order original edges by (mapped endpoints, original index); parallel
    // edges keep their input order, which fixes the transport bijection.
    struct EdgeRec {
        int u, w, idx, ha, hb; // ha at u, hb at w (canonical orientation)
    };
    std::vector<EdgeRec> recs;
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [a, b] = g.edges[e];
        int u = best_vmap[g.half_edges[a].vertex], w = best_vmap[g.half_edges[b].vertex];
        int ha = a, hb = b;
        if (u > w || (u == w && ha > hb)) {
            std::swap(u, w);
            std::swap(ha, hb);
        }
        recs.push_back({u, w, e, ha, hb});
    }
    std::sort(recs.begin(), recs.end(), [](const EdgeRec& x, const EdgeRec& y) {
        return std::tie(x.u, x.w, x.idx) < std::tie(y.u, y.w, y.idx);
    });
    for (const auto& r : recs) {
        int h1 = static_cast<int>(out.graph.half_edges.size());
        out.graph.half_edges.push_back({r.u, 0});
        out.graph.half_edges.push_back({r.w, 0});
        out.graph.edges.emplace_back(h1, h1 + 1);
        out.iso.half_edge_map[r.ha] = h1;
        out.iso.half_edge_map[r.hb] = h1 + 1;
    }
    return out;
}

CanonicalCode canonical_code(const StableGraph& g) {
    const std::vector<int> color = refine_colors(g);
    std::string best;
    class_orderings(color, [&](const std::vector<int>& vmap) {
        std::string code = encode(g, vmap);
        if (best.empty() || code < best) best = code;
    });
    return best;
}

Contraction contract_edge_tracked(const StableGraph& g, int edge_index) {
    if (edge_index < 0 || edge_index >= g.num_edges())
        throw UsageError("contract_edge: no such interior edge");
    auto [ha, hb] = g.edges[edge_index];
    int va = g.half_edges[ha].vertex, vb = g.half_edges[hb].vertex;

    Contraction out;
    int m = g.num_vertices();
    out.vertex_map.assign(m, -1);

    if (va == vb) {
        // Loop: drop it, bump the genus.
        for (int v = 0; v < m; ++v) out.vertex_map[v] = v;
        out.graph.vertices = g.vertices;
        out.graph.vertices[va].genus += 1;
        out.merged_vertex = va;
    } else {
        int keep = std::min(va, vb), drop = std::max(va, vb);
        for (int v = 0; v < m; ++v)
            out.vertex_map[v] = (v == drop) ? keep : (v > drop ? v - 1 : v);
        out.graph.vertices.resize(m - 1);
        for (int v = 0; v < m; ++v)
            if (v != drop) out.graph.vertices[out.vertex_map[v]].genus = g.vertices[v].genus;
        out.graph.vertices[keep].genus = g.vertices[va].genus + g.vertices[vb].genus;
        out.merged_vertex = keep;
    }

    out.half_edge_map.assign(g.half_edges.size(), -1);
    for (int h = 0; h < static_cast<int>(g.half_edges.size()); ++h) {
        if (h == ha || h == hb) continue;
        int nh = static_cast<int>(out.graph.half_edges.size());
        out.graph.half_edges.push_back({out.vertex_map[g.half_edges[h].vertex], g.half_edges[h].leg});
        out.half_edge_map[h] = nh;
    }
    for (int e = 0; e < g.num_edges(); ++e) {
        if (e == edge_index) continue;
        auto [x, y] = g.edges[e];
        out.graph.edges.emplace_back(out.half_edge_map[x], out.half_edge_map[y]);
    }
    return out;
}

StableGraph contract_edge(const StableGraph& g, int edge_index) {
    return contract_edge_tracked(g, edge_index).graph;
}

namespace {

// Vertex permutations preserving genus, leg sets, loop counts and edge
// multiplicities. Legs are fixed pointwise, so any vertex with a leg is
// fixed.
std::vector<std::vector<int>> valid_vertex_perms(const StableGraph& g) {
    int m = g.num_vertices();
    std::vector<int> id_map(m);
    std::iota(id_map.begin(), id_map.end(), 0);
    auto edges0 = edge_multiset(g, id_map);

    std::vector<int> color = refine_colors(g);
    std::vector<std::vector<int>> out;

    std::vector<std::vector<int>> candidates(m);
    for (int v = 0; v < m; ++v) {
        for (int w = 0; w < m; ++w) {
            if (color[v] != color[w]) continue;
            if (!g.legs_at(v).empty() && v != w) continue;
            candidates[v].push_back(w);
        }
    }

    std::vector<int> perm(m, -1);
    std::vector<char> used(m, 0);
    std::function<void(int)> rec = [&](int v) {
        if (v == m) {
            if (edge_multiset(g, perm) == edges0) out.push_back(perm);
            return;
        }
        for (int w : candidates[v]) {
            if (used[w]) continue;
            used[w] = 1;
            perm[v] = w;
            rec(v + 1);
            used[w] = 0;
        }
    };
    rec(0);
    return out;
}

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Half-edge extension of a valid vertex permutation: parallel edges between
// corresponding pairs map in input order, loop half-edges keep orientation.
GraphAut extend_to_half_edges(const StableGraph& g, const std::vector<int>& vperm) {
    GraphAut aut;
    aut.vertex_perm = vperm;
    aut.half_edge_perm.assign(g.half_edges.size(), -1);
    for (int h = 0; h < static_cast<int>(g.half_edges.size()); ++h)
        if (g.half_edges[h].leg > 0) aut.half_edge_perm[h] = h;

    std::map<std::pair<int, int>, std::vector<int>> buckets; // endpoint pair -> edge ids
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [a, b] = g.edges[e];
        int u = g.half_edges[a].vertex, w = g.half_edges[b].vertex;
        if (u > w) std::swap(u, w);
        buckets[{u, w}].push_back(e);
    }
    for (const auto& [uw, ids] : buckets) {
        auto [u, w] = uw;
        int pu = vperm[u], pw = vperm[w];
        if (pu > pw) std::swap(pu, pw);
        const auto& target = buckets.at({pu, pw});
        for (size_t t = 0; t < ids.size(); ++t) {
            auto [a, b] = g.edges[ids[t]];
            auto [c, d] = g.edges[target[t]];
            // orient both by endpoint
            if (g.half_edges[a].vertex != u) std::swap(a, b);
            if (g.half_edges[c].vertex != vperm[u]) std::swap(c, d);
            aut.half_edge_perm[a] = c;
            aut.half_edge_perm[b] = d;
        }
    }
    return aut;
}

} // namespace

AutGroup automorphisms(const StableGraph& g) {
    AutGroup out;
    auto vperms = valid_vertex_perms(g);

    // |Aut| = #vertex permutations x parallel-edge shuffles x loop flips.
    std::map<std::pair<int, int>, int> mult;
    long long structural = 1;
    for (const auto& [a, b] : g.edges) {
        int u = g.half_edges[a].vertex, w = g.half_edges[b].vertex;
        if (u > w) std::swap(u, w);
        mult[{u, w}]++;
    }
    for (const auto& [uw, k] : mult) {
        structural *= factorial(k);
        if (uw.first == uw.second) {
            long long flips = 1;
            for (int t = 0; t < k; ++t) flips *= 2;
            structural *= flips;
        }
    }
    out.order = static_cast<long long>(vperms.size()) * structural;

    // Generators: non-identity vertex permutations (closed under the search,
    // so pick a small generating set greedily), plus adjacent transpositions
    // of parallel edges and loop half-edge swaps.
    std::vector<int> ident(g.num_vertices());
    std::iota(ident.begin(), ident.end(), 0);
    for (const auto& p : vperms) {
        if (p == ident) continue;
        out.generators.push_back(extend_to_half_edges(g, p));
    }

    std::map<std::pair<int, int>, std::vector<int>> buckets;
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [a, b] = g.edges[e];
        int u = g.half_edges[a].vertex, w = g.half_edges[b].vertex;
        if (u > w) std::swap(u, w);
        buckets[{u, w}].push_back(e);
    }
    auto identity_aut = [&] {
        GraphAut aut;
        aut.vertex_perm = ident;
        aut.half_edge_perm.resize(g.half_edges.size());
        std::iota(aut.half_edge_perm.begin(), aut.half_edge_perm.end(), 0);
        return aut;
    };
    for (const auto& [uw, ids] : buckets) {
        for (size_t t = 0; t + 1 < ids.size(); ++t) {
            GraphAut aut = identity_aut();
            auto [a, b] = g.edges[ids[t]];
            auto [c, d] = g.edges[ids[t + 1]];
            if (g.half_edges[a].vertex != g.half_edges[c].vertex) std::swap(c, d);
            aut.half_edge_perm[a] = c;
            aut.half_edge_perm[c] = a;
            aut.half_edge_perm[b] = d;
            aut.half_edge_perm[d] = b;
            out.generators.push_back(aut);
        }
        if (uw.first == uw.second) {
            for (int e : ids) {
                GraphAut aut = identity_aut();
                auto [a, b] = g.edges[e];
                aut.half_edge_perm[a] = b;
                aut.half_edge_perm[b] = a;
                out.generators.push_back(aut);
            }
        }
    }
    return out;
}

std::vector<GraphAut> all_automorphisms(const StableGraph& g) {
    std::vector<GraphAut> out;
    auto vperms = valid_vertex_perms(g);

    std::map<std::pair<int, int>, std::vector<int>> buckets;
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [a, b] = g.edges[e];
        int u = g.half_edges[a].vertex, w = g.half_edges[b].vertex;
        if (u > w) std::swap(u, w);
        buckets[{u, w}].push_back(e);
    }

    for (const auto& vperm : vperms) {
        // For each bucket choose a bijection onto the image bucket, and for
        // loops additionally an orientation per loop.
        std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs; // (src edges, dst edges)
        for (const auto& [uw, ids] : buckets) {
            auto [u, w] = uw;
            int pu = vperm[u], pw = vperm[w];
            if (pu > pw) std::swap(pu, pw);
            pairs.emplace_back(ids, buckets.at({pu, pw}));
        }
        std::vector<GraphAut> partial;
        GraphAut base;
        base.vertex_perm = vperm;
        base.half_edge_perm.assign(g.half_edges.size(), -1);
        for (int h = 0; h < static_cast<int>(g.half_edges.size()); ++h)
            if (g.half_edges[h].leg > 0) base.half_edge_perm[h] = h;
        partial.push_back(base);

        for (const auto& [src, dst] : pairs) {
            std::vector<int> idx(src.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::vector<GraphAut> next;
            do {
                bool is_loop =
                    g.half_edges[g.edges[src[0]].first].vertex == g.half_edges[g.edges[src[0]].second].vertex;
                int flips = is_loop ? (1 << src.size()) : 1;
                for (int f = 0; f < flips; ++f) {
                    for (const auto& p : partial) {
                        GraphAut aut = p;
                        bool ok = true;
                        for (size_t t = 0; t < src.size(); ++t) {
                            auto [a, b] = g.edges[src[t]];
                            auto [c, d] = g.edges[dst[idx[t]]];
                            if (!is_loop) {
                                if (vperm[g.half_edges[a].vertex] != g.half_edges[c].vertex) std::swap(c, d);
                                if (vperm[g.half_edges[a].vertex] != g.half_edges[c].vertex ||
                                    vperm[g.half_edges[b].vertex] != g.half_edges[d].vertex) {
                                    ok = false;
                                    break;
                                }
                            } else if ((f >> t) & 1) {
                                std::swap(c, d);
                            }
                            aut.half_edge_perm[a] = c;
                            aut.half_edge_perm[b] = d;
                        }
                        if (ok) next.push_back(aut);
                    }
                }
            } while (std::next_permutation(idx.begin(), idx.end()));
            partial = std::move(next);
        }
        out.insert(out.end(), partial.begin(), partial.end());
    }
    return out;
}

} // namespace rht
