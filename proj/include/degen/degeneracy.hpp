#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "degen/graph.hpp"
#include "degen/oscillator.hpp"

namespace degen {

// A point on the quarter-turn lattice: theta_k = base + labels[k] * pi/2.
// Completely degenerate equilibria of connected graphs always have this form,
// so it is the exact representation used throughout this module.
struct QuarterLabeling {
    std::vector<int> labels;  // each in 0..3
    double base = 0.0;

    PhaseVector phases() const;
    friend bool operator==(const QuarterLabeling&, const QuarterLabeling&) = default;
};

// Closed walk v_0, ..., v_M with v_M == v_0.
struct EulerCircuit {
    std::vector<Vertex> vertices;

    std::size_t steps() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    friend bool operator==(const EulerCircuit&, const EulerCircuit&) = default;
};

inline constexpr double kDefaultDetectionTolerance = 1e-9;

struct CdeCheck {
    bool ok = false;
    std::optional<Vertex> vertex;    // first violating vertex
    std::optional<Vertex> neighbor;  // offending neighbour, when an edge is to blame
    std::string reason;
};

// Every neighbour of k sits at theta_k +- pi/2 and the two groups have equal size.
CdeCheck is_cde(const Graph& g, std::span<const double> theta, double tol = kDefaultDetectionTolerance);

struct NonidenticalCdeCheck {
    CdeCheck check;
    std::vector<double> ratios;      // omega_k / K
    std::vector<bool> ratio_integral;
    bool all_ratios_integral = false;
    bool ok() const { return check.ok; }
};

// cos(theta_j - theta_k) = 0 on every edge and sum_j sin(theta_j - theta_k) = -omega_k / K.
NonidenticalCdeCheck is_cde_nonidentical(const OscillatorSystem& sys, std::span<const double> theta,
                                         double tol = kDefaultDetectionTolerance);

class SearchBudgetExceeded : public std::runtime_error {
public:
    explicit SearchBudgetExceeded(std::size_t budget);
    std::size_t budget() const { return budget_; }

private:
    std::size_t budget_;
};

struct EnumerationOptions {
    // Label assignments tried, summed over all components.
    std::size_t node_budget = 1'000'000;
};

// CDEs of one connected component. Labels are indexed by global vertex id;
// vertices outside the component are left at 0.
struct ComponentLabelings {
    std::vector<Vertex> vertices;
    std::vector<QuarterLabeling> labelings;
};

// Backtracking over Z4 labels from the lowest vertex of each edge-bearing
// component (pinned to 0), visiting vertices in BFS order. Throws
// SearchBudgetExceeded.
std::vector<ComponentLabelings> enumerate_component_cdes(const Graph& g, const EnumerationOptions& opts = {});

// All CDEs modulo global rotation of each component: the product of the
// per-component lists, base 0, isolated vertices at label 0. Empty iff some
// edge-bearing component admits none. An edgeless graph yields the single
// all-zero labeling.
std::vector<QuarterLabeling> enumerate_cdes(const Graph& g, const EnumerationOptions& opts = {});

// The first labeling enumerate_cdes would return, or nothing. Throws SearchBudgetExceeded.
std::optional<QuarterLabeling> first_cde(const Graph& g, const EnumerationOptions& opts = {});

// Number of CDEs without materialising the product. Throws SearchBudgetExceeded.
std::size_t count_cdes(const Graph& g, const EnumerationOptions& opts = {});

class InvalidCircuit : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when walking a circuit assigns two labels to one vertex.
class InconsistentLabeling : public std::runtime_error {
public:
    InconsistentLabeling(Vertex vertex, std::size_t first_step, std::size_t second_step);
    Vertex vertex;
    std::size_t first_step;
    std::size_t second_step;
};

// Throws InvalidCircuit unless c is a closed walk using every edge of g exactly once.
void validate_circuit(const Graph& g, const EulerCircuit& c);

// Start vertex gets label 0, each step adds 1 mod 4. Vertices off the circuit
// stay at 0. Throws InvalidCircuit or InconsistentLabeling.
QuarterLabeling circuit_to_phases(const Graph& g, const EulerCircuit& c, double base = 0.0);

// Euler circuit along which every step raises the label by one. Starts at the
// lowest non-isolated vertex with label 0 (else the lowest non-isolated one),
// always takes the lowest unused increasing edge, and splices further closed
// walks in at the earliest walk position that still has unused edges.
// Requires g connected on its edges; throws std::invalid_argument if q is not a CDE.
EulerCircuit phases_to_circuit(const Graph& g, const QuarterLabeling& q);

struct Mod4Check {
    bool ok = false;
    std::optional<Vertex> vertex;
    std::size_t first_position = 0;
    std::size_t second_position = 0;
};

// Positions 0 and M both count as visits of the start vertex, so a passing
// circuit has M divisible by four.
Mod4Check check_mod4_circuit(const EulerCircuit& c);

struct NonidenticalConstruction {
    bool realizable = false;
    PhaseVector phases;
    std::vector<double> frequencies;
    std::vector<Vertex> odd_cycle;  // set when not realizable
};

// Bipartite g: 0 on the left part, pi/2 on the right, omega_k = -K sum_j sin(theta_j - theta_k).
NonidenticalConstruction construct_nonidentical_cde(const Graph& g, double coupling);

enum class AdmitsReason { Edgeless, OddDegree, Triangle, NotBipartite, EnumerationEmpty, Enumerated, BudgetExceeded };

const char* to_string(AdmitsReason reason);

struct AdmitsResult {
    bool admits = false;
    bool edgeless = false;  // trivial case: no edges, every constant state qualifies
    AdmitsReason reason = AdmitsReason::EnumerationEmpty;
    std::optional<Vertex> witness_vertex;
    std::vector<Vertex> witness_cycle;
};

// Cheap necessary filters first (odd degree, triangle, bipartiteness), then a
// per-component search that stops at the first solution. A blown budget is
// reported as BudgetExceeded with admits = false.
AdmitsResult admits_cde(const Graph& g, const EnumerationOptions& opts = {});

// Extends q to glue_four_cycle(g, k) with labels l_k+1, l_k+2, l_k+3 on the new vertices.
QuarterLabeling extend_glued_labeling(const QuarterLabeling& q, Vertex k);

}  // namespace degen
