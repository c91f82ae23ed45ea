#include "detkit/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace detkit {

namespace {

// Relabels vertices to 0..k-1 keeping only those with keep[v] true, dropping
// nothing else; returns the map old->new (-1 for dropped).
std::vector<int> compact_vertices(const Graph& g, const std::vector<char>& keep, Graph& out) {
    std::vector<int> remap(g.nv, -1);
    int next = 0;
    for (int v = 0; v < g.nv; ++v)
        if (keep[v]) remap[v] = next++;
    out.nv = next;
    return remap;
}

// Connectivity of the subgraph induced by the vertices with alive[v] true.
// Vacuously connected when at most one vertex is alive.
bool connected_among(const Graph& g, const std::vector<char>& alive) {
    int start = -1, total = 0;
    for (int v = 0; v < g.nv; ++v)
        if (alive[v]) { if (start < 0) start = v; ++total; }
    if (total <= 1) return true;
    std::vector<std::vector<int>> adj(g.nv);
    for (auto [u, v] : g.edges) {
        if (u == v || !alive[u] || !alive[v]) continue;
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<char> seen(g.nv, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int reached = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++reached;
        for (int w : adj[v])
            if (!seen[w]) { seen[w] = 1; stack.push_back(w); }
    }
    return reached == total;
}

}  // namespace

Graph graph_minor(const Graph& g, EdgeOp mode, int e) {
    return graph_minor_set(g,
                           mode == EdgeOp::del ? bit(e) : Mask{0},
                           mode == EdgeOp::contract ? bit(e) : Mask{0});
}

Graph graph_minor_set(const Graph& g, Mask del, Mask contract) {
    if (del & contract) throw ArgError("delete/contract sets overlap");
    Mask valid = full_mask(g.ne());
    if ((del | contract) & ~valid) throw ArgError("edge index out of range");

    // Contracting a loop is a deletion.
    for_each_bit(contract, [&](int e) {
        if (g.is_loop(e)) { contract &= ~bit(e); del |= bit(e); }
    });

    // Union endpoints of contracted edges.
    std::vector<int> parent(g.nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for_each_bit(contract, [&](int e) {
        auto [u, v] = g.edges[e];
        parent[find(u)] = find(v);
    });

    // Vertices surviving: class representatives that still touch an edge, or
    // touched any contracted edge (a merged vertex never becomes isolated by
    // the contraction itself). Isolated vertices are removed after deletion.
    std::vector<char> used(g.nv, 0);
    for (int e = 0; e < g.ne(); ++e) {
        if (has(del, e) || has(contract, e)) continue;
        used[find(g.edges[e].first)] = 1;
        used[find(g.edges[e].second)] = 1;
    }
    for_each_bit(contract, [&](int e) {
        used[find(g.edges[e].first)] = 1;
    });

    Graph out;
    std::vector<int> remap = compact_vertices(g, used, out);
    for (int e = 0; e < g.ne(); ++e) {
        if (has(del, e) || has(contract, e)) continue;
        int u = remap[find(g.edges[e].first)];
        int v = remap[find(g.edges[e].second)];
        out.add_edge(std::min(u, v), std::max(u, v), g.label_of(e));
    }
    return out;
}

bool is_simple(const Graph& g) {
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : g.edges) {
        if (u == v) return false;
        auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second) return false;
    }
    return true;
}

bool is_connected(const Graph& g) {
    if (g.nv == 0) return false;
    std::vector<char> alive(g.nv, 1);
    return connected_among(g, alive);
}

bool is_simple_3connected(const Graph& g) {
    if (g.nv < 4 || !is_simple(g) || !is_connected(g)) return false;
    std::vector<char> alive(g.nv, 1);
    for (int a = 0; a < g.nv; ++a) {
        alive[a] = 0;
        if (!connected_among(g, alive)) return false;
        for (int b = a + 1; b < g.nv; ++b) {
            alive[b] = 0;
            if (!connected_among(g, alive)) return false;
            alive[b] = 1;
        }
        alive[a] = 1;
    }
    return true;
}

Graph subdivide(const Graph& g, int e, int k, std::vector<int>* new_vertices) {
    if (e < 0 || e >= g.ne()) throw ArgError("edge index out of range");
    if (new_vertices) new_vertices->clear();
    if (k == 0) return g;
    if (g.is_loop(e)) throw ArgError("cannot subdivide a loop");
    Graph out = g;
    auto [u, v] = g.edges[e];
    int prev = u;
    for (int i = 0; i < k; ++i) {
        int w = out.add_vertex();
        if (new_vertices) new_vertices->push_back(w);
        if (i == 0) {
            out.edges[e] = {u, w};
        } else {
            out.add_edge(prev, w, g.label_of(e));
        }
        prev = w;
    }
    out.add_edge(prev, v, g.label_of(e));
    return out;
}

}  // namespace detkit
