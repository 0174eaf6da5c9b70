#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace degen {

using Vertex = std::size_t;

// Unordered edge stored with u < v.
struct Edge {
    Vertex u;
    Vertex v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on dense vertex ids 0..N-1. Immutable once built.
// Construction rejects self-loops, out-of-range endpoints and repeated edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t vertex_count);
    Graph(std::size_t vertex_count, std::span<const std::pair<Vertex, Vertex>> edges);
    Graph(std::size_t vertex_count, std::initializer_list<std::pair<Vertex, Vertex>> edges);

    std::size_t vertex_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    // Sorted lexicographically.
    const std::vector<Edge>& edges() const { return edges_; }

    // Sorted ascending. Throws std::out_of_range.
    const std::vector<Vertex>& neighbors(Vertex k) const;

    std::size_t degree(Vertex k) const { return neighbors(k).size(); }
    bool has_edge(Vertex j, Vertex k) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void build(std::vector<std::pair<Vertex, Vertex>> pairs);

    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
};

std::size_t degree(const Graph& g, Vertex k);

// Each component sorted ascending; components ordered by their smallest vertex.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

struct Bipartition {
    bool bipartite = false;
    std::vector<Vertex> left;   // contains the lowest id of each component
    std::vector<Vertex> right;
    // Odd cycle v0, v1, ..., v_{2m} (closing edge back to v0 implied). Empty when bipartite.
    std::vector<Vertex> odd_cycle;
};

Bipartition is_bipartite(const Graph& g);

struct EulerianCheck {
    bool eulerian = false;
    std::optional<Vertex> odd_degree_vertex;
    // Two non-isolated vertices in different components, when that is the reason.
    std::optional<std::pair<Vertex, Vertex>> disconnected_pair;
    std::string reason;
};

// Isolated vertices are ignored; the edge-bearing part must be connected.
EulerianCheck is_eulerian(const Graph& g);

std::optional<std::array<Vertex, 3>> contains_triangle(const Graph& g);

// Checks the structural invariants directly on the stored data.
bool structure_is_valid(const Graph& g);

std::vector<std::vector<int>> adjacency_matrix(const Graph& g);

// ---- generators ----

Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph complete_bipartite_graph(std::size_t m, std::size_t n);
Graph hypercube_graph(std::size_t d);

// Adds vertices N, N+1, N+2 and the cycle k-N-(N+1)-(N+2)-k.
Graph glue_four_cycle(const Graph& g, Vertex k);

// G(n, p). Pair {i, j} is kept iff a hash of (seed, pair index) falls below p,
// so the outcome for a pair does not depend on the order pairs are visited.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

// Uniform double in [0, 1) derived from (seed, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t counter);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace degen
