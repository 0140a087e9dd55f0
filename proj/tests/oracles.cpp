#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace rht::oracle {

namespace {

// Full-permutation-scan certificate: minimum over all vertex orderings of a
// plain incidence encoding. No refinement, no shared code with the library's
// canonical form.
std::string min_certificate(const StableGraph& g) {
    int m = g.num_vertices();
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        // perm[v] = new position of vertex v? Use position-of: inv.
        std::vector<int> pos(m);
        for (int i = 0; i < m; ++i) pos[perm[i]] = i;
        std::ostringstream os;
        for (int i = 0; i < m; ++i) os << g.vertices[perm[i]].genus << ".";
        os << "/";
        std::vector<std::pair<int, int>> legs;
        for (const auto& h : g.half_edges)
            if (h.leg > 0) legs.emplace_back(h.leg, pos[h.vertex]);
        std::sort(legs.begin(), legs.end());
        for (auto& [l, v] : legs) os << l << ":" << v << ".";
        os << "/";
        std::vector<std::pair<int, int>> es;
        for (const auto& [a, b] : g.edges) {
            int u = pos[g.half_edges[a].vertex], w = pos[g.half_edges[b].vertex];
            if (u > w) std::swap(u, w);
            es.emplace_back(u, w);
        }
        std::sort(es.begin(), es.end());
        for (auto& [u, w] : es) os << u << "-" << w << ".";
        std::string cert = os.str();
        if (best.empty() || cert < best) best = cert;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

void visit_multisets(int slots, int size, std::vector<int>& cur,
                     const std::function<void(const std::vector<int>&)>& f) {
    if (size == 0) {
        f(cur);
        return;
    }
    int start = cur.empty() ? 0 : cur.back();
    for (int s = start; s < slots; ++s) {
        cur.push_back(s);
        visit_multisets(slots, size - 1, cur, f);
        cur.pop_back();
    }
}

void visit_graphs(int g, int n, const std::function<void(const StableGraph&)>& f) {
    const int e_max = std::max(0, 3 * g - 3 + n);
    const int v_max = std::max(1, 2 * g - 2 + n);
    for (int e = 0; e <= e_max; ++e) {
        for (int m = 1; m <= std::min(e + 1, v_max); ++m) {
            int b1 = e - m + 1;
            if (b1 < 0 || g - b1 < 0) continue;
            std::vector<std::pair<int, int>> slots;
            for (int u = 0; u < m; ++u)
                for (int w = u; w < m; ++w) slots.emplace_back(u, w);
            std::vector<int> cur;
            visit_multisets(static_cast<int>(slots.size()), e, cur, [&](const std::vector<int>& picks) {
                std::vector<std::pair<int, int>> ends;
                for (int p : picks) ends.push_back(slots[p]);
                // connectivity
                std::vector<int> reach(m, 0);
                reach[0] = 1;
                for (int it = 0; it < m; ++it)
                    for (auto& [a, b] : ends) {
                        if (reach[a]) reach[b] = 1;
                        if (reach[b]) reach[a] = 1;
                    }
                if (std::accumulate(reach.begin(), reach.end(), 0) != m) return;

                // genus vectors
                std::function<void(int, int, std::vector<int>&)> genera =
                    [&](int left, int v, std::vector<int>& gv) {
                        if (v == m - 1) {
                            gv.push_back(left);
                            // leg assignments: owner per label
                            std::vector<int> owner(n, 0);
                            std::function<void(int)> assign = [&](int label) {
                                if (label == n) {
                                    StableGraph sg;
                                    sg.vertices.resize(m);
                                    for (int vv = 0; vv < m; ++vv) sg.vertices[vv].genus = gv[vv];
                                    for (int l = 0; l < n; ++l) sg.half_edges.push_back({owner[l], l + 1});
                                    for (auto& [a, b] : ends) {
                                        int h = static_cast<int>(sg.half_edges.size());
                                        sg.half_edges.push_back({a, 0});
                                        sg.half_edges.push_back({b, 0});
                                        sg.edges.emplace_back(h, h + 1);
                                    }
                                    if (sg.is_stable()) f(sg);
                                    return;
                                }
                                for (int v2 = 0; v2 < m; ++v2) {
                                    owner[label] = v2;
                                    assign(label + 1);
                                }
                            };
                            assign(0);
                            gv.pop_back();
                            return;
                        }
                        for (int x = 0; x <= left; ++x) {
                            gv.push_back(x);
                            genera(left - x, v + 1, gv);
                            gv.pop_back();
                        }
                    };
                std::vector<int> gv;
                genera(g - b1, 0, gv);
            });
        }
    }
}

} // namespace

int count_stable_graphs(int g, int n) {
    std::set<std::string> classes;
    visit_graphs(g, n, [&](const StableGraph& sg) { classes.insert(min_certificate(sg)); });
    return static_cast<int>(classes.size());
}

long long one_edge_count_genus0(int n) { return (1LL << (n - 1)) - n - 1; }

long long aut_order(const StableGraph& g) {
    const int h = static_cast<int>(g.half_edges.size());
    std::vector<int> perm(h);
    std::iota(perm.begin(), perm.end(), 0);

    std::set<std::pair<int, int>> edge_set;
    for (auto [a, b] : g.edges) edge_set.insert({std::min(a, b), std::max(a, b)});

    long long count = 0;
    do {
        bool ok = true;
        // legs fixed pointwise
        for (int i = 0; i < h && ok; ++i)
            if (g.half_edges[i].leg > 0 && perm[i] != i) ok = false;
        if (!ok) continue;
        // induced vertex map well-defined, genus preserved
        std::vector<int> vmap(g.num_vertices(), -1);
        for (int i = 0; i < h && ok; ++i) {
            int v = g.half_edges[i].vertex, w = g.half_edges[perm[i]].vertex;
            if (vmap[v] == -1) vmap[v] = w;
            else if (vmap[v] != w) ok = false;
        }
        if (!ok) continue;
        std::vector<char> hit(g.num_vertices(), 0);
        for (int v = 0; v < g.num_vertices() && ok; ++v) {
            if (vmap[v] == -1) vmap[v] = v; // vertex without half-edges (single-vertex graphs)
            if (hit[vmap[v]]++) ok = false;
            else if (g.vertices[v].genus != g.vertices[vmap[v]].genus) ok = false;
        }
        if (!ok) continue;
        for (auto [a, b] : g.edges) {
            int pa = perm[a], pb = perm[b];
            if (!edge_set.count({std::min(pa, pb), std::max(pa, pb)})) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

std::vector<int> poincare_m0n_open(int n) {
    std::vector<int> poly{1};
    for (int k = 2; k <= n - 2; ++k) {
        std::vector<int> next(poly.size() + 1, 0);
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + 1] += k * poly[i];
        }
        poly = next;
    }
    return poly;
}

std::vector<long long> free_algebra_dims(const std::vector<int>& gen_degrees, int k_max) {
    std::vector<long long> poly(k_max + 1, 0);
    poly[0] = 1;
    for (int d : gen_degrees) {
        std::vector<long long> next(k_max + 1, 0);
        if (d % 2 != 0) {
            for (int i = 0; i <= k_max; ++i) {
                next[i] += poly[i];
                if (i + d <= k_max) next[i + d] += poly[i];
            }
        } else {
            for (int i = 0; i <= k_max; ++i) {
                for (int e = 0; i + e * d <= k_max; ++e) next[i + e * d] += poly[i];
            }
        }
        poly = next;
    }
    return poly;
}

long long chi_mbar_0n(int n) {
    std::set<std::string> seen;
    long long chi = 0;
    visit_graphs(0, n, [&](const StableGraph& sg) {
        std::string cert = min_certificate(sg);
        if (!seen.insert(cert).second) return;
        long long term = 1;
        for (int v = 0; v < sg.num_vertices(); ++v) {
            int m = sg.valence(v);
            long long f = 1;
            for (int i = 2; i <= m - 3; ++i) f *= i;
            term *= ((m - 3) % 2 == 0 ? 1 : -1) * f;
        }
        chi += term;
    });
    return chi;
}

} // namespace rht::oracle
