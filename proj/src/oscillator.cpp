#include "degen/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace degen {

namespace {

void require_size(const OscillatorSystem& sys, std::span<const double> theta) {
    if (theta.size() != sys.size()) {
        throw std::invalid_argument("phase vector has " + std::to_string(theta.size()) +
                                    " entries, graph has " + std::to_string(sys.size()) + " vertices");
    }
}

}  // namespace

double wrap_phase(double angle) {
    if (!std::isfinite(angle)) throw std::invalid_argument("non-finite phase");
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2pi
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double circular_distance(double a, double b) {
    double d = wrap_phase(a - b);
    return std::min(d, kTwoPi - d);
}

PhaseVector::PhaseVector(std::vector<double> phases) : phases_(std::move(phases)) {
    for (double& p : phases_) p = wrap_phase(p);
}

PhaseVector::PhaseVector(std::initializer_list<double> phases) : PhaseVector(std::vector<double>(phases)) {}

OscillatorSystem::OscillatorSystem(Graph graph)
    : graph_(std::move(graph)), coupling_(1.0), frequencies_(graph_.vertex_count(), 0.0) {}

OscillatorSystem::OscillatorSystem(Graph graph, double coupling, std::vector<double> frequencies)
    : graph_(std::move(graph)), coupling_(coupling), frequencies_(std::move(frequencies)) {
    if (!(coupling_ > 0.0) || !std::isfinite(coupling_)) {
        throw std::invalid_argument("coupling strength must be positive and finite");
    }
    if (frequencies_.size() != graph_.vertex_count()) {
        throw std::invalid_argument("expected " + std::to_string(graph_.vertex_count()) +
                                    " frequencies, got " + std::to_string(frequencies_.size()));
    }
    for (double w : frequencies_)
        if (!std::isfinite(w)) throw std::invalid_argument("non-finite intrinsic frequency");
}

bool OscillatorSystem::is_identical() const {
    return coupling_ == 1.0 && std::all_of(frequencies_.begin(), frequencies_.end(),
                                           [](double w) { return w == 0.0; });
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
        if (row.size() != n_) throw std::invalid_argument("Matrix rows must form a square");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
}

double Matrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

std::vector<double> vector_field(const OscillatorSystem& sys, std::span<const double> theta) {
    require_size(sys, theta);
    std::vector<double> coupling_sum(theta.size(), 0.0);
    for (const Edge& e : sys.graph().edges()) {
        double s = std::sin(theta[e.u] - theta[e.v]);
        coupling_sum[e.v] += s;
        coupling_sum[e.u] -= s;
    }
    std::vector<double> f(theta.size());
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = sys.frequencies()[k] + sys.coupling() * coupling_sum[k];
    return f;
}

Matrix jacobian(const OscillatorSystem& sys, std::span<const double> theta) {
    require_size(sys, theta);
    Matrix df(theta.size());
    for (const Edge& e : sys.graph().edges()) {
        double c = sys.coupling() * std::cos(theta[e.u] - theta[e.v]);
        df(e.u, e.v) = c;
        df(e.v, e.u) = c;
        df(e.u, e.u) -= c;
        df(e.v, e.v) -= c;
    }
    return df;
}

double energy(const OscillatorSystem& sys, std::span<const double> theta) {
    require_size(sys, theta);
    double edge_sum = 0.0;
    for (const Edge& e : sys.graph().edges()) edge_sum += 1.0 - std::cos(theta[e.u] - theta[e.v]);
    double linear = 0.0;
    for (std::size_t k = 0; k < theta.size(); ++k) linear += sys.frequencies()[k] * theta[k];
    return sys.coupling() * edge_sum - linear;
}

double gradient_consistency(const OscillatorSystem& sys, std::span<const double> theta, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    const auto f = vector_field(sys, theta);
    std::vector<double> probe(theta.begin(), theta.end());
    double worst = 0.0;
    for (std::size_t k = 0; k < probe.size(); ++k) {
        const double saved = probe[k];
        probe[k] = saved + h;
        const double e_plus = energy(sys, probe);
        probe[k] = saved - h;
        const double e_minus = energy(sys, probe);
        probe[k] = saved;
        worst = std::max(worst, std::abs(f[k] + (e_plus - e_minus) / (2.0 * h)));
    }
    return worst;
}

SpectrumReport symmetric_eigenvalues(const Matrix& m, std::size_t max_sweeps) {
    const std::size_t n = m.size();
    const double scale = m.frobenius_norm();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > 1e-9 * std::max(1.0, scale)) {
                throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            }

    Matrix a = m;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    const double target = 1e-12 * (scale + 1.0);
    SpectrumReport report;
    double off = off_norm();
    while (off >= target) {
        if (report.sweeps == max_sweeps) {
            throw std::runtime_error("Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) +
                                     " sweeps; off-diagonal residual " + std::to_string(off));
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rotation angle zeroing a(p,q), computed in the stable tan form.
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
            }
        }
        ++report.sweeps;
        off = off_norm();
    }

    report.max_offdiag_residual = off;
    report.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) report.eigenvalues[i] = a(i, i);
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end());
    return report;
}

const char* to_string(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::Short: return "short";
        case EdgeKind::Long: return "long";
        case EdgeKind::Critical: return "critical";
    }
    return "?";
}

std::vector<EdgeKind> classify_edges(const OscillatorSystem& sys, std::span<const double> theta, double tol) {
    require_size(sys, theta);
    if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
    std::vector<EdgeKind> kinds;
    kinds.reserve(sys.graph().edge_count());
    for (const Edge& e : sys.graph().edges()) {
        const double d = circular_distance(theta[e.u], theta[e.v]);
        if (std::abs(d - kQuarterTurn) <= tol) kinds.push_back(EdgeKind::Critical);
        else if (d < kQuarterTurn) kinds.push_back(EdgeKind::Short);
        else kinds.push_back(EdgeKind::Long);
    }
    return kinds;
}

}  // namespace degen
