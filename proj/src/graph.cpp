#include <qhs/graph.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <qhs/errors.hpp>
#include <qhs/rng.hpp>

namespace qhs {

Graph Graph::make(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw ValidationError("graph: negative vertex count");
    for (auto& [u, v] : edges) {
        if (u == v) throw ValidationError("graph: self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw ValidationError("graph: edge endpoint out of range");
        }
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Graph g;
    g.n = n;
    g.edges = std::move(edges);
    return g;
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [u, v] : edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    return adj;
}

bool operator==(const Graph& a, const Graph& b) {
    return a.n == b.n && a.edges == b.edges;
}

Graph read_edge_list(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m)) throw IoError("edge list: missing 'n m' header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(in >> u >> v)) {
            throw IoError("edge list: expected " + std::to_string(m) + " edges, got " +
                          std::to_string(i));
        }
        edges.emplace_back(u, v);
    }
    return Graph::make(n, std::move(edges));
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open graph file: " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.n << ' ' << g.edges.size() << '\n';
    for (const auto& [u, v] : g.edges) {
        out << u << ' ' << v << '\n';
    }
}

ClusteredGraph gen_clustered_graph(const ClusteredGraphSpec& spec) {
    if (spec.separators < 0) throw ValidationError("clustered graph: K must be >= 0");
    if (spec.max_component < 1) throw ValidationError("clustered graph: d must be >= 1");
    if (spec.clusters < 1) throw ValidationError("clustered graph: m must be >= 1");
    if (spec.intra_edge_prob < 0.0 || spec.intra_edge_prob > 1.0) {
        throw ValidationError("clustered graph: intra_edge_prob must be in [0, 1]");
    }

    auto rng = Xoshiro256ss::stream(spec.seed, 0x67726170ULL);
    const int d = spec.max_component;
    const int n = spec.clusters * d + spec.separators;
    std::vector<std::pair<int, int>> edges;

    // Cluster vertices come first, separators occupy the last K ids.
    const int sep_base = spec.clusters * d;
    for (int c = 0; c < spec.clusters; ++c) {
        const int base = c * d;
        // Random spanning tree keeps each cluster connected.
        for (int v = 1; v < d; ++v) {
            const int u = base + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v)));
            edges.emplace_back(u, base + v);
        }
        for (int a = 0; a < d; ++a) {
            for (int b = a + 1; b < d; ++b) {
                if (rng.next_double() < spec.intra_edge_prob) {
                    edges.emplace_back(base + a, base + b);
                }
            }
        }
        if (spec.separators > 0) {
            const int sep = sep_base +
                static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.separators)));
            const int anchor = base + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d)));
            edges.emplace_back(anchor, sep);
        }
    }

    ClusteredGraph out;
    out.graph = Graph::make(n, std::move(edges));
    out.separator_vertices.resize(static_cast<std::size_t>(spec.separators));
    std::iota(out.separator_vertices.begin(), out.separator_vertices.end(), sep_base);
    if (!satisfies_separator_bound(out.graph, out.separator_vertices, d)) {
        throw InternalError("clustered graph generator violated its own component bound");
    }
    return out;
}

bool satisfies_separator_bound(const Graph& g, const std::vector<int>& separators, int d) {
    std::vector<bool> removed(static_cast<std::size_t>(g.n), false);
    for (int s : separators) {
        if (s < 0 || s >= g.n) return false;
        removed[static_cast<std::size_t>(s)] = true;
    }
    // Union-find over the reduced graph.
    std::vector<int> parent(static_cast<std::size_t>(g.n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& [u, v] : g.edges) {
        if (removed[static_cast<std::size_t>(u)] || removed[static_cast<std::size_t>(v)]) continue;
        parent[static_cast<std::size_t>(find(u))] = find(v);
    }
    std::vector<int> size(static_cast<std::size_t>(g.n), 0);
    for (int v = 0; v < g.n; ++v) {
        if (removed[static_cast<std::size_t>(v)]) continue;
        if (++size[static_cast<std::size_t>(find(v))] > d) return false;
    }
    return true;
}

} // namespace qhs
