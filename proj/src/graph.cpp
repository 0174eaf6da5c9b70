#include "degen/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace degen {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Graph::Graph(std::size_t vertex_count) : adjacency_(vertex_count) {}

Graph::Graph(std::size_t vertex_count, std::span<const std::pair<Vertex, Vertex>> edges)
    : adjacency_(vertex_count) {
    build({edges.begin(), edges.end()});
}

Graph::Graph(std::size_t vertex_count, std::initializer_list<std::pair<Vertex, Vertex>> edges)
    : adjacency_(vertex_count) {
    build({edges.begin(), edges.end()});
}

void Graph::build(std::vector<std::pair<Vertex, Vertex>> pairs) {
    const std::size_t n = adjacency_.size();
    edges_.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        if (a >= n || b >= n) {
            throw std::out_of_range("edge {" + std::to_string(a) + "," + std::to_string(b) +
                                    "} references a vertex outside 0.." + std::to_string(n) + "-1");
        }
        if (a == b) {
            throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
        }
        edges_.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
        throw std::invalid_argument("parallel edge {" + std::to_string(dup->u) + "," +
                                    std::to_string(dup->v) + "}");
    }
    for (const Edge& e : edges_) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

const std::vector<Vertex>& Graph::neighbors(Vertex k) const {
    if (k >= adjacency_.size()) {
        throw std::out_of_range("vertex " + std::to_string(k) + " out of range for graph with " +
                                std::to_string(adjacency_.size()) + " vertices");
    }
    return adjacency_[k];
}

bool Graph::has_edge(Vertex j, Vertex k) const {
    if (j >= adjacency_.size() || k >= adjacency_.size()) return false;
    const auto& nb = adjacency_[j];
    return std::binary_search(nb.begin(), nb.end(), k);
}

std::size_t degree(const Graph& g, Vertex k) { return g.degree(k); }

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<Vertex>> components;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp{s};
        seen[s] = true;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (Vertex w : g.neighbors(comp[i])) {
                if (!seen[w]) {
                    seen[w] = true;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

Bipartition is_bipartite(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<int> side(n, -1);
    std::vector<Vertex> parent(n, 0);
    std::vector<std::size_t> depth(n, 0);
    Bipartition result;

    for (Vertex s = 0; s < n; ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        parent[s] = s;
        std::queue<Vertex> frontier;
        frontier.push(s);
        while (!frontier.empty()) {
            Vertex u = frontier.front();
            frontier.pop();
            for (Vertex w : g.neighbors(u)) {
                if (side[w] == -1) {
                    side[w] = 1 - side[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    frontier.push(w);
                } else if (side[w] == side[u]) {
                    // Same BFS level parity: tree paths to the common ancestor plus {u,w} close an odd cycle.
                    std::vector<Vertex> up_u{u};
                    std::vector<Vertex> up_w{w};
                    Vertex a = u;
                    Vertex b = w;
                    while (depth[a] > depth[b]) { a = parent[a]; up_u.push_back(a); }
                    while (depth[b] > depth[a]) { b = parent[b]; up_w.push_back(b); }
                    while (a != b) {
                        a = parent[a]; up_u.push_back(a);
                        b = parent[b]; up_w.push_back(b);
                    }
                    up_w.pop_back();  // common ancestor already in up_u
                    result.odd_cycle.assign(up_u.rbegin(), up_u.rend());
                    result.odd_cycle.insert(result.odd_cycle.end(), up_w.begin(), up_w.end());
                    return result;
                }
            }
        }
    }
    result.bipartite = true;
    for (Vertex v = 0; v < n; ++v) (side[v] == 0 ? result.left : result.right).push_back(v);
    return result;
}

EulerianCheck is_eulerian(const Graph& g) {
    EulerianCheck check;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) % 2 != 0) {
            check.odd_degree_vertex = v;
            check.reason = "vertex " + std::to_string(v) + " has odd degree " + std::to_string(g.degree(v));
            return check;
        }
    }
    std::optional<Vertex> first;
    for (const auto& comp : connected_components(g)) {
        if (comp.size() < 2) continue;
        if (first) {
            check.disconnected_pair = std::make_pair(*first, comp.front());
            check.reason = "edges split across components containing " + std::to_string(*first) +
                           " and " + std::to_string(comp.front());
            return check;
        }
        first = comp.front();
    }
    check.eulerian = true;
    check.reason = "all degrees even and edges connected";
    return check;
}

std::optional<std::array<Vertex, 3>> contains_triangle(const Graph& g) {
    for (const Edge& e : g.edges()) {
        const auto& a = g.neighbors(e.u);
        const auto& b = g.neighbors(e.v);
        // Smallest common neighbour above v keeps the triple sorted.
        auto ia = std::upper_bound(a.begin(), a.end(), e.v);
        auto ib = std::upper_bound(b.begin(), b.end(), e.v);
        while (ia != a.end() && ib != b.end()) {
            if (*ia < *ib) ++ia;
            else if (*ib < *ia) ++ib;
            else return std::array<Vertex, 3>{e.u, e.v, *ia};
        }
    }
    return std::nullopt;
}

bool structure_is_valid(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::size_t incidences = 0;
    for (Vertex v = 0; v < n; ++v) {
        const auto& nb = g.neighbors(v);
        if (!std::is_sorted(nb.begin(), nb.end())) return false;
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) return false;
        for (Vertex w : nb) {
            if (w >= n || w == v || !g.has_edge(w, v)) return false;
        }
        incidences += nb.size();
    }
    for (const Edge& e : g.edges()) {
        if (!(e.u < e.v) || e.v >= n) return false;
    }
    return incidences == 2 * g.edge_count();
}

std::vector<std::vector<int>> adjacency_matrix(const Graph& g) {
    std::vector<std::vector<int>> a(g.vertex_count(), std::vector<int>(g.vertex_count(), 0));
    for (const Edge& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
    return a;
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw std::invalid_argument("cycle_graph needs n >= 3, got " + std::to_string(n));
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex k = 0; k < n; ++k) edges.emplace_back(k, (k + 1) % n);
    return Graph(n, edges);
}

Graph path_graph(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex k = 0; k + 1 < n; ++k) edges.emplace_back(k, k + 1);
    return Graph(n, edges);
}

Graph complete_graph(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex j = 0; j < n; ++j)
        for (Vertex k = j + 1; k < n; ++k) edges.emplace_back(j, k);
    return Graph(n, edges);
}

Graph star_graph(std::size_t leaves) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex k = 1; k <= leaves; ++k) edges.emplace_back(0, k);
    return Graph(leaves + 1, edges);
}

Graph complete_bipartite_graph(std::size_t m, std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex j = 0; j < m; ++j)
        for (Vertex k = 0; k < n; ++k) edges.emplace_back(j, m + k);
    return Graph(m + n, edges);
}

Graph hypercube_graph(std::size_t d) {
    if (d < 1) throw std::invalid_argument("hypercube_graph needs d >= 1");
    if (d > 20) throw std::invalid_argument("hypercube_graph: d = " + std::to_string(d) + " is too large");
    const std::size_t n = std::size_t{1} << d;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v < n; ++v)
        for (std::size_t bit = 0; bit < d; ++bit) {
            Vertex w = v ^ (std::size_t{1} << bit);
            if (v < w) edges.emplace_back(v, w);
        }
    return Graph(n, edges);
}

Graph glue_four_cycle(const Graph& g, Vertex k) {
    const std::size_t n = g.vertex_count();
    if (k >= n) throw std::out_of_range("glue vertex " + std::to_string(k) + " out of range");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const Edge& e : g.edges()) edges.emplace_back(e.u, e.v);
    edges.emplace_back(k, n);
    edges.emplace_back(n, n + 1);
    edges.emplace_back(n + 1, n + 2);
    edges.emplace_back(n + 2, k);
    return Graph(n + 3, edges);
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t h = splitmix64(splitmix64(seed) ^ (counter * 0xd1b54a32d192ed03ULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi: p must lie in [0, 1]");
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::uint64_t pair_index = 0;
    for (Vertex j = 0; j < n; ++j)
        for (Vertex k = j + 1; k < n; ++k, ++pair_index)
            if (counter_uniform(seed, pair_index) < p) edges.emplace_back(j, k);
    return Graph(n, edges);
}

}  // namespace degen
