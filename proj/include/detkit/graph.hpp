#pragma once

#include <string>
#include <utility>
#include <vector>

#include "detkit/base.hpp"

namespace detkit {

// Labeled multigraph. Loops and parallel edges are allowed; edge order is
// stable and defines the element indices of the cycle matroid.
struct Graph {
    int nv = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> elabel;  // optional role labels; empty or per-edge

    int ne() const { return static_cast<int>(edges.size()); }

    int add_vertex() { return nv++; }
    int add_edge(int u, int v, std::string label = {}) {
        if (u < 0 || u >= nv || v < 0 || v >= nv) throw ArgError("edge endpoint out of range");
        edges.emplace_back(u, v);
        if (!label.empty() || !elabel.empty()) {
            elabel.resize(edges.size());
            elabel.back() = std::move(label);
        }
        return ne() - 1;
    }
    std::string label_of(int e) const {
        return (e < static_cast<int>(elabel.size())) ? elabel[e] : std::string{};
    }

    bool is_loop(int e) const { return edges[e].first == edges[e].second; }
};

enum class EdgeOp { del, contract };

// Single-edge minor. Deletion drops the edge and removes any vertex left
// isolated; contraction merges the endpoints and keeps resulting parallels
// and loops. Contracting a loop reduces to deleting it.
Graph graph_minor(const Graph& g, EdgeOp mode, int e);

// Set version; elements indexed against g's original edge order.
Graph graph_minor_set(const Graph& g, Mask del, Mask contract);

// No loops or parallel pairs.
bool is_simple(const Graph& g);

// Every vertex reachable from vertex 0 (false for nv == 0).
bool is_connected(const Graph& g);

// Simple, >= 4 vertices, connected, and no vertex cut of size <= 2
// (exhaustive removal of singletons and pairs with reachability checks).
bool is_simple_3connected(const Graph& g);

// Replaces edge e by a path through k new internal vertices: slot e becomes
// the first path segment, the remaining k segments are appended at the end of
// the edge order (all other indices stay stable; edge count grows by k).
// k = 0 returns g unchanged. Returns the new vertex indices via *new_vertices.
Graph subdivide(const Graph& g, int e, int k, std::vector<int>* new_vertices = nullptr);

}  // namespace detkit
