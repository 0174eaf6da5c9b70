#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "degen/graph.hpp"

namespace degen {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kQuarterTurn = std::numbers::pi / 2.0;

// Reduces an angle to [0, 2pi).
double wrap_phase(double angle);

// Distance on the circle, in [0, pi].
double circular_distance(double a, double b);

// Phases on the torus, stored reduced to [0, 2pi).
class PhaseVector {
public:
    PhaseVector() = default;
    explicit PhaseVector(std::vector<double> phases);
    PhaseVector(std::initializer_list<double> phases);

    std::size_t size() const { return phases_.size(); }
    double operator[](std::size_t k) const { return phases_[k]; }
    const std::vector<double>& values() const { return phases_; }
    operator std::span<const double>() const { return phases_; }

    friend bool operator==(const PhaseVector&, const PhaseVector&) = default;

private:
    std::vector<double> phases_;
};

// theta_k' = omega_k + K sum_j a_jk sin(theta_j - theta_k)
class OscillatorSystem {
public:
    // Identical oscillators: K = 1, omega = 0.
    explicit OscillatorSystem(Graph graph);
    OscillatorSystem(Graph graph, double coupling, std::vector<double> frequencies);

    const Graph& graph() const { return graph_; }
    double coupling() const { return coupling_; }
    const std::vector<double>& frequencies() const { return frequencies_; }
    std::size_t size() const { return graph_.vertex_count(); }
    bool is_identical() const;

private:
    Graph graph_;
    double coupling_ = 1.0;
    std::vector<double> frequencies_;
};

// Dense row-major square matrix.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t size() const { return n_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    double max_abs() const;
    double frobenius_norm() const;
    double trace() const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// The state arguments below take raw reals so that lifted (unwrapped)
// coordinates can be passed; PhaseVector converts implicitly.

std::vector<double> vector_field(const OscillatorSystem& sys, std::span<const double> theta);

// Off-diagonal K a_jk cos(theta_j - theta_k); diagonal is the negated row sum.
Matrix jacobian(const OscillatorSystem& sys, std::span<const double> theta);

// E = K sum_{edges} (1 - cos(theta_j - theta_k)) - sum_k omega_k theta_k.
// With nonzero frequencies the linear term makes E a local function of a lift
// of theta, not a function on the torus.
double energy(const OscillatorSystem& sys, std::span<const double> theta);

// max_k |F_k + (E(theta + h e_k) - E(theta - h e_k)) / 2h|
double gradient_consistency(const OscillatorSystem& sys, std::span<const double> theta, double h);

struct SpectrumReport {
    std::vector<double> eigenvalues;  // ascending
    double max_offdiag_residual = 0.0;
    std::size_t sweeps = 0;
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
// 1e-12 * (||m||_F + 1). Throws std::invalid_argument on asymmetric input and
// std::runtime_error when max_sweeps is exhausted.
SpectrumReport symmetric_eigenvalues(const Matrix& m, std::size_t max_sweeps = 100);

enum class EdgeKind { Short, Long, Critical };

const char* to_string(EdgeKind kind);

inline constexpr double kDefaultCriticalTolerance = 1e-9;

// One label per edge, in g.edges() order.
std::vector<EdgeKind> classify_edges(const OscillatorSystem& sys, std::span<const double> theta,
                                     double tol = kDefaultCriticalTolerance);

}  // namespace degen
