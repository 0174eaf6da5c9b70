#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degen/degeneracy.hpp"
#include "degen/graph.hpp"

namespace degen {

struct RarityCounts {
    std::size_t edgeless = 0;
    std::size_t odd_degree = 0;
    std::size_t triangle = 0;
    std::size_t non_bipartite = 0;
    std::size_t enumeration_empty = 0;
    std::size_t budget_exceeded = 0;
    std::size_t admits = 0;

    std::size_t total() const {
        return edgeless + odd_degree + triangle + non_bipartite + enumeration_empty + budget_exceeded + admits;
    }
    friend bool operator==(const RarityCounts&, const RarityCounts&) = default;
};

struct RarityWitness {
    std::size_t sample = 0;
    std::vector<Edge> edges;
    friend bool operator==(const RarityWitness&, const RarityWitness&) = default;
};

struct RarityReport {
    std::size_t n = 0;
    double p = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t node_budget = 0;
    // Which filter of the admits_cde cascade decided each sample; partitions samples.
    RarityCounts counts;
    // Samples containing a triangle, whichever filter fired first.
    std::size_t triangle_samples = 0;
    // Non-trivial (edge-bearing) admits / samples with a 95% Wilson interval.
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::vector<RarityWitness> witnesses;

    double triangle_rate() const { return samples ? static_cast<double>(triangle_samples) / samples : 0.0; }
    friend bool operator==(const RarityReport&, const RarityReport&) = default;
};

struct WilsonInterval {
    double low;
    double high;
};

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

// Sample i is erdos_renyi(n, p, derive_seed(seed, i)).
RarityReport rarity_experiment(std::size_t n, double p, std::size_t samples, std::uint64_t seed,
                               const EnumerationOptions& opts = {});

struct SweepRow {
    std::size_t parameter = 0;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    bool admits = false;
    AdmitsReason reason = AdmitsReason::EnumerationEmpty;
    std::optional<std::size_t> cde_count;       // absent when the budget ran out
    std::optional<std::size_t> circuit_length;  // mod-4 circuit of the first CDE, connected graphs only
};

// Family names: "cycle" (parameter n), "hypercube" (parameter d), and
// "glue-chain" (parameter = number of 4-cycles glued). The glue chain starts
// from a seed graph and always glues at the most recently added vertex.
struct SweepSpec {
    std::string family;
    std::vector<std::size_t> parameters;
    std::string seed_graph = "c4";  // glue-chain only: c4, k24, c8, or cN
};

// Seeds for the glue chain: "c4"/"c8"/"cN" cycles and "k24", the six-vertex
// two-hub graph K_{2,4}.
Graph seed_graph(const std::string& name);

Graph family_member(const SweepSpec& spec, std::size_t parameter);

// Throws std::invalid_argument on an unknown family.
std::vector<SweepRow> family_sweep(const SweepSpec& spec, const EnumerationOptions& opts = {});

}  // namespace degen
