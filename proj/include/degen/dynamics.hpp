#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "degen/degeneracy.hpp"
#include "degen/oscillator.hpp"

namespace degen {

struct SimulationTrace {
    std::vector<double> times;
    std::vector<PhaseVector> states;  // canonicalised snapshots
    // Identical systems: the torus energy. Otherwise the energy of the
    // continuous lift, which RK4 tracks because the raw state is never wrapped.
    std::vector<double> energies;
};

class NonFiniteState : public std::runtime_error {
public:
    explicit NonFiniteState(std::size_t step);
    std::size_t step;
};

inline constexpr double kDefaultTimeStep = 1e-3;

// One classical RK4 step of the oscillator flow, in place on raw coordinates.
void rk4_step(const OscillatorSystem& sys, std::vector<double>& state, double dt);

// steps + 1 snapshots at t = 0, dt, ..., steps * dt.
SimulationTrace integrate(const OscillatorSystem& sys, std::span<const double> theta0, double dt, std::size_t steps);

// theta_j + x and theta_k - x for the first step j -> k of the circuit.
// The circuit must pass the mod-4 test and raise q's label by one at every step.
PhaseVector edge_pair_perturbation(const Graph& g, const QuarterLabeling& q, const EulerCircuit& c, double x);

// E(theta) - E(theta^x) for the identical system, from the energy itself.
double energy_gap_identical(const Graph& g, const QuarterLabeling& q, const EulerCircuit& c, double x);

// Moves vertex k by x in lifted coordinates and returns E(theta) - E(theta^x).
// theta must be a CDE of sys; it is used as its own lift.
double vertex_perturbation_gap(const OscillatorSystem& sys, std::span<const double> theta, Vertex k, double x);

struct EscapeReport {
    bool escaped = false;
    double exit_time = 0.0;     // time of first exit, or the final time when none
    double max_distance = 0.0;  // largest max-over-vertices circular distance seen
    std::size_t steps = 0;
};

struct ProbeOptions {
    double x0 = 1e-3;
    double epsilon = 0.5;
    double dt = kDefaultTimeStep;
    std::size_t max_steps = 1'000'000;
};

// Integrates from theta + x0 * direction and reports whether the state leaves
// the epsilon ball (max-over-vertices circular metric) around theta.
// Requires max |F(theta)| < 1e-10 and |x0| < epsilon / 4.
EscapeReport instability_probe(const OscillatorSystem& sys, std::span<const double> theta,
                               std::span<const double> direction, const ProbeOptions& opts = {});

struct SaddleDirection {
    EulerCircuit circuit;
    std::vector<double> direction;  // e_j - e_k
    double signed_x0 = 0.0;         // on the side where the energy drops
};

// Picks the edge-pair direction of a CDE and the sign of x0 for which
// energy_gap_identical(+-x0) is positive.
SaddleDirection saddle_direction(const Graph& g, const QuarterLabeling& q, double x0);

// Identical-system probe from a CDE along its saddle direction.
EscapeReport probe_cde(const Graph& g, const QuarterLabeling& q, const ProbeOptions& opts = {});

}  // namespace degen
