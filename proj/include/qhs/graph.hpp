#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qhs {

/// Simple undirected graph on vertices 0..n-1. Edges are stored sorted with
/// u < v; no self-loops, no duplicates.
struct Graph {
    int n{0};
    std::vector<std::pair<int, int>> edges;

    /// Normalizes (orders endpoints, sorts, dedups) and validates.
    static Graph make(int n, std::vector<std::pair<int, int>> edges);

    bool has_edge(int u, int v) const;
    std::vector<std::vector<int>> adjacency() const;
};

bool operator==(const Graph& a, const Graph& b);

/// Edge-list text format: first line "n m", then one "u v" line per edge.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

/// Generator spec for graphs with a K-vertex separator whose removal leaves
/// connected components of at most d vertices.
struct ClusteredGraphSpec {
    int separators{1};       // K
    int max_component{5};    // d
    int clusters{2};         // m
    double intra_edge_prob{0.5};
    std::uint64_t seed{0};
};

struct ClusteredGraph {
    Graph graph;
    std::vector<int> separator_vertices;
};

ClusteredGraph gen_clustered_graph(const ClusteredGraphSpec& spec);

/// True when removing `separators` from g leaves only connected components
/// of size <= d.
bool satisfies_separator_bound(const Graph& g, const std::vector<int>& separators, int d);

} // namespace qhs
