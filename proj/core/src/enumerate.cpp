#include "rht/errors.hpp"
#include "rht/stable_graph.hpp"
#include "rht/threading.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace rht {

namespace {

// Multisets of size e over pair slots 0..num_pairs-1, nondecreasing.
void edge_multisets(int num_pairs, int e, std::vector<int>& current,
                    const std::function<void(const std::vector<int>&)>& visit) {
    if (e == 0) {
        visit(current);
        return;
    }
    int start = current.empty() ? 0 : current.back();
    for (int p = start; p < num_pairs; ++p) {
        current.push_back(p);
        edge_multisets(num_pairs, e - 1, current, visit);
        current.pop_back();
    }
}

void compositions(int total, int parts, std::vector<int>& current,
                  const std::function<void(const std::vector<int>&)>& visit) {
    if (parts == 1) {
        current.push_back(total);
        visit(current);
        current.pop_back();
        return;
    }
    for (int first = 0; first <= total; ++first) {
        current.push_back(first);
        compositions(total - first, parts - 1, current, visit);
        current.pop_back();
    }
}

} // namespace

std::vector<StableGraph> enumerate_stable_graphs(int g, int n, std::optional<int> max_edges) {
    if (g < 0 || n < 0 || 2 * g - 2 + n <= 0)
        throw UsageError("enumerate_stable_graphs: unstable (g,n)=(" + std::to_string(g) + "," +
                         std::to_string(n) + ")");
    const int e_natural = std::max(0, 3 * g - 3 + n);
    if (max_edges && *max_edges < e_natural)
        throw UsageError("enumerate_stable_graphs: bound exhausted; (" + std::to_string(g) + "," +
                         std::to_string(n) + ") needs up to " + std::to_string(e_natural) +
                         " edges but max_edges=" + std::to_string(*max_edges) +
                         " (partial enumerations are not returned)");

    const int max_vertices = 2 * g - 2 + n;

    // Collect raw candidates per (E, m, structure, genera, legs); dedupe by
    // canonical code afterwards. Candidate generation is cheap next to
    // canonicalization, which parallelizes over candidates.
    std::vector<StableGraph> candidates;

    for (int e = 0; e <= e_natural; ++e) {
        for (int m = 1; m <= std::min(e + 1, max_vertices); ++m) {
            const int b1 = e - m + 1;
            if (b1 < 0) continue;
            const int gsum = g - b1;
            if (gsum < 0) continue;

            // Pair slots (u <= w) in lexicographic order.
            std::vector<std::pair<int, int>> slots;
            for (int u = 0; u < m; ++u)
                for (int w = u; w < m; ++w) slots.emplace_back(u, w);

            std::vector<int> ms;
            edge_multisets(static_cast<int>(slots.size()), e, ms, [&](const std::vector<int>& picks) {
                // Structure: edge endpoint list.
                std::vector<std::pair<int, int>> ends;
                std::vector<int> edge_val(m, 0);
                for (int p : picks) {
                    ends.push_back(slots[p]);
                    edge_val[slots[p].first]++;
                    edge_val[slots[p].second]++;
                }
                // Connectivity of the vertex set under these edges.
                {
                    std::vector<int> comp(m, -1);
                    std::vector<int> stack{0};
                    comp[0] = 0;
                    while (!stack.empty()) {
                        int v = stack.back();
                        stack.pop_back();
                        for (auto& [a, b] : ends) {
                            if (a == v && comp[b] < 0) { comp[b] = 0; stack.push_back(b); }
                            if (b == v && comp[a] < 0) { comp[a] = 0; stack.push_back(a); }
                        }
                    }
                    for (int v = 0; v < m; ++v)
                        if (comp[v] < 0) return;
                }

                std::vector<int> gv;
                compositions(gsum, m, gv, [&](const std::vector<int>& genera) {
                    std::vector<int> lc;
                    compositions(n, m, lc, [&](const std::vector<int>& legcounts) {
                        for (int v = 0; v < m; ++v)
                            if (2 * genera[v] - 2 + edge_val[v] + legcounts[v] <= 0) return;

                        // Assign leg labels 1..n respecting the counts.
                        std::vector<int> owner(n, -1);
                        std::vector<int> remaining = legcounts;
                        std::function<void(int)> assign = [&](int label) {
                            if (label == n) {
                                StableGraph sg;
                                sg.vertices.resize(m);
                                for (int v = 0; v < m; ++v) sg.vertices[v].genus = genera[v];
                                for (int l = 0; l < n; ++l)
                                    sg.half_edges.push_back({owner[l], l + 1});
                                for (auto& [a, b] : ends) {
                                    int h1 = static_cast<int>(sg.half_edges.size());
                                    sg.half_edges.push_back({a, 0});
                                    sg.half_edges.push_back({b, 0});
                                    sg.edges.emplace_back(h1, h1 + 1);
                                }
                                candidates.push_back(std::move(sg));
                                return;
                            }
                            for (int v = 0; v < m; ++v) {
                                if (remaining[v] == 0) continue;
                                remaining[v]--;
                                owner[label] = v;
                                assign(label + 1);
                                remaining[v]++;
                            }
                        };
                        assign(0);
                    });
                });
            });
        }
    }

    std::vector<CanonicalForm> forms(candidates.size());
    parallel_for(candidates.size(), [&](size_t i) { forms[i] = canonicalize(candidates[i]); });

    std::map<std::pair<int, CanonicalCode>, StableGraph> dedup;
    for (auto& f : forms)
        dedup.emplace(std::make_pair(f.graph.num_edges(), f.code), std::move(f.graph));

    std::vector<StableGraph> out;
    out.reserve(dedup.size());
    for (auto& [key, graph] : dedup) out.push_back(std::move(graph));
    return out;
}

} // namespace rht
