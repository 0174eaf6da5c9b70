#include "degen/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace degen {

namespace {

void require_consistent(const Graph& g, const QuarterLabeling& q, const EulerCircuit& c) {
    if (q.labels.size() != g.vertex_count()) throw std::invalid_argument("labeling size does not match graph");
    validate_circuit(g, c);
    if (c.steps() == 0) throw InvalidCircuit("circuit has no steps");
    if (!check_mod4_circuit(c).ok) throw InvalidCircuit("circuit fails the mod-4 revisit test");
    for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i) {
        const int d = ((q.labels[c.vertices[i + 1]] - q.labels[c.vertices[i]]) % 4 + 4) % 4;
        if (d != 1) {
            throw std::invalid_argument("labeling does not increase along circuit step " + std::to_string(i));
        }
    }
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double torus_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, circular_distance(a[k], b[k]));
    return d;
}

}  // namespace

NonFiniteState::NonFiniteState(std::size_t s)
    : std::runtime_error("non-finite state at step " + std::to_string(s)), step(s) {}

void rk4_step(const OscillatorSystem& sys, std::vector<double>& state, double dt) {
    const std::size_t n = state.size();
    std::vector<double> stage(n);
    const auto k1 = vector_field(sys, state);
    for (std::size_t i = 0; i < n; ++i) stage[i] = state[i] + 0.5 * dt * k1[i];
    const auto k2 = vector_field(sys, stage);
    for (std::size_t i = 0; i < n; ++i) stage[i] = state[i] + 0.5 * dt * k2[i];
    const auto k3 = vector_field(sys, stage);
    for (std::size_t i = 0; i < n; ++i) stage[i] = state[i] + dt * k3[i];
    const auto k4 = vector_field(sys, stage);
    for (std::size_t i = 0; i < n; ++i) state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

SimulationTrace integrate(const OscillatorSystem& sys, std::span<const double> theta0, double dt, std::size_t steps) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (steps < 1) throw std::invalid_argument("need at least one step");
    if (theta0.size() != sys.size()) throw std::invalid_argument("initial state does not match graph");

    std::vector<double> state(theta0.begin(), theta0.end());
    for (double x : state)
        if (!std::isfinite(x)) throw NonFiniteState(0);

    const bool identical = sys.is_identical();
    SimulationTrace trace;
    trace.times.reserve(steps + 1);
    trace.states.reserve(steps + 1);
    trace.energies.reserve(steps + 1);
    auto record = [&](std::size_t step) {
        trace.times.push_back(static_cast<double>(step) * dt);
        trace.states.emplace_back(state);
        trace.energies.push_back(identical ? energy(sys, trace.states.back()) : energy(sys, state));
    };

    record(0);
    for (std::size_t step = 1; step <= steps; ++step) {
        rk4_step(sys, state, dt);
        for (double x : state)
            if (!std::isfinite(x)) throw NonFiniteState(step);
        record(step);
    }
    return trace;
}

PhaseVector edge_pair_perturbation(const Graph& g, const QuarterLabeling& q, const EulerCircuit& c, double x) {
    require_consistent(g, q, c);
    if (!std::isfinite(x)) throw std::invalid_argument("perturbation size must be finite");
    std::vector<double> theta = q.phases().values();
    theta[c.vertices[0]] += x;
    theta[c.vertices[1]] -= x;
    return PhaseVector(std::move(theta));
}

double energy_gap_identical(const Graph& g, const QuarterLabeling& q, const EulerCircuit& c, double x) {
    const OscillatorSystem sys(g);
    const PhaseVector perturbed = edge_pair_perturbation(g, q, c, x);
    return energy(sys, q.phases()) - energy(sys, perturbed);
}

double vertex_perturbation_gap(const OscillatorSystem& sys, std::span<const double> theta, Vertex k, double x) {
    if (k >= sys.size()) throw std::out_of_range("vertex " + std::to_string(k) + " out of range");
    if (auto check = is_cde_nonidentical(sys, theta); !check.ok()) {
        throw std::invalid_argument("state is not a CDE of the system: " + check.check.reason);
    }
    std::vector<double> moved(theta.begin(), theta.end());
    moved[k] += x;
    return energy(sys, theta) - energy(sys, moved);
}

EscapeReport instability_probe(const OscillatorSystem& sys, std::span<const double> theta,
                               std::span<const double> direction, const ProbeOptions& opts) {
    if (theta.size() != sys.size() || direction.size() != sys.size()) {
        throw std::invalid_argument("state and direction must match the graph size");
    }
    if (!(opts.epsilon > 0.0) || !(std::abs(opts.x0) < opts.epsilon / 4.0)) {
        throw std::invalid_argument("need epsilon > 0 and |x0| < epsilon / 4");
    }
    if (!(opts.dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (const double residual = max_abs(vector_field(sys, theta)); !(residual < 1e-10)) {
        throw std::invalid_argument("probe must start at an equilibrium (max |F| = " + std::to_string(residual) + ")");
    }

    std::vector<double> state(theta.begin(), theta.end());
    for (std::size_t k = 0; k < state.size(); ++k) state[k] += opts.x0 * direction[k];

    EscapeReport report;
    report.max_distance = torus_distance(state, theta);
    for (std::size_t step = 1; step <= opts.max_steps; ++step) {
        rk4_step(sys, state, opts.dt);
        const double d = torus_distance(state, theta);
        if (!std::isfinite(d)) throw NonFiniteState(step);
        report.max_distance = std::max(report.max_distance, d);
        report.steps = step;
        if (d > opts.epsilon) {
            report.escaped = true;
            report.exit_time = static_cast<double>(step) * opts.dt;
            return report;
        }
    }
    report.exit_time = static_cast<double>(report.steps) * opts.dt;
    return report;
}

SaddleDirection saddle_direction(const Graph& g, const QuarterLabeling& q, double x0) {
    SaddleDirection out;
    out.circuit = phases_to_circuit(g, q);
    out.direction.assign(g.vertex_count(), 0.0);
    out.direction[out.circuit.vertices[0]] = 1.0;
    out.direction[out.circuit.vertices[1]] = -1.0;
    const double x = std::abs(x0);
    out.signed_x0 = energy_gap_identical(g, q, out.circuit, x) > 0.0 ? x : -x;
    return out;
}

EscapeReport probe_cde(const Graph& g, const QuarterLabeling& q, const ProbeOptions& opts) {
    const SaddleDirection saddle = saddle_direction(g, q, opts.x0);
    ProbeOptions signed_opts = opts;
    signed_opts.x0 = saddle.signed_x0;
    return instability_probe(OscillatorSystem(g), q.phases(), saddle.direction, signed_opts);
}

}  // namespace degen
