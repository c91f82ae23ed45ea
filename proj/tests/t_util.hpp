#pragma once

// Small graph builders used as independent fixtures across the test files.
// These are deliberately separate from the generator module so that tests of
// the core exercise hand-rolled constructions.

#include <utility>
#include <vector>

#include "detkit/graph.hpp"

namespace tutil {

inline detkit::Graph complete_graph(int n) {
    detkit::Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline detkit::Graph cycle_graph(int n) {
    detkit::Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex();
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

// Hub vertex 0, rim 1..n. Spokes first (elements 0..n-1), then rim edges.
inline detkit::Graph wheel_graph(int n) {
    detkit::Graph g;
    for (int i = 0; i <= n; ++i) g.add_vertex();
    for (int i = 1; i <= n; ++i) g.add_edge(0, i);
    for (int i = 1; i <= n; ++i) g.add_edge(i, i % n + 1);
    return g;
}

// Two triangles joined by a perfect matching. Elements 0..2 top triangle,
// 3..5 bottom triangle, 6..8 matching.
inline detkit::Graph prism_graph() {
    detkit::Graph g;
    for (int i = 0; i < 6; ++i) g.add_vertex();
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(5, 3);
    g.add_edge(0, 3);
    g.add_edge(1, 4);
    g.add_edge(2, 5);
    return g;
}

// Complete bipartite graph; parts {0..a-1} and {a..a+b-1}, edges grouped by
// the second part (so the star of each degree-a vertex is contiguous).
inline detkit::Graph complete_bipartite(int a, int b) {
    detkit::Graph g;
    for (int i = 0; i < a + b; ++i) g.add_vertex();
    for (int j = 0; j < b; ++j)
        for (int i = 0; i < a; ++i) g.add_edge(i, a + j);
    return g;
}

}  // namespace tutil
