#include "degen/degeneracy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>

namespace degen {

namespace {

int mod4(long long x) { return static_cast<int>(((x % 4) + 4) % 4); }

// Exact CDE test on labels: every neighbour differs by +-1 and the two sides balance.
std::optional<std::pair<Vertex, std::string>> labeling_violation(const Graph& g, const std::vector<int>& labels) {
    for (Vertex k = 0; k < g.vertex_count(); ++k) {
        std::size_t up = 0;
        std::size_t down = 0;
        for (Vertex j : g.neighbors(k)) {
            const int d = mod4(labels[j] - labels[k]);
            if (d == 1) ++up;
            else if (d == 3) ++down;
            else return std::make_pair(k, "neighbour " + std::to_string(j) + " is not a quarter turn away");
        }
        if (up != down) {
            return std::make_pair(k, std::to_string(up) + " neighbours ahead vs " + std::to_string(down) + " behind");
        }
    }
    return std::nullopt;
}

class ComponentSearch {
public:
    using Visitor = std::function<bool(const std::vector<int>&)>;

    ComponentSearch(const Graph& g, const std::vector<Vertex>& component, std::size_t& nodes, std::size_t budget)
        : g_(g), nodes_(nodes), budget_(budget), labels_(g.vertex_count(), -1),
          ahead_(g.vertex_count(), 0), behind_(g.vertex_count(), 0) {
        // BFS order from the pinned (lowest) vertex; parent label seeds the two candidates.
        std::vector<bool> queued(g.vertex_count(), false);
        std::queue<Vertex> frontier;
        frontier.push(component.front());
        queued[component.front()] = true;
        parent_.assign(g.vertex_count(), component.front());
        while (!frontier.empty()) {
            Vertex v = frontier.front();
            frontier.pop();
            order_.push_back(v);
            for (Vertex w : g.neighbors(v)) {
                if (!queued[w]) {
                    queued[w] = true;
                    parent_[w] = v;
                    frontier.push(w);
                }
            }
        }
    }

    // Returns false when the visitor asked to stop.
    bool run(const Visitor& visit) { return assign(0, visit); }

private:
    bool place(Vertex v, int label) {
        const std::size_t half = g_.degree(v) / 2;
        for (Vertex w : g_.neighbors(v)) {
            if (labels_[w] < 0) continue;
            const int d = mod4(label - labels_[w]);
            if (d != 1 && d != 3) return false;
        }
        labels_[v] = label;
        bool feasible = true;
        for (Vertex w : g_.neighbors(v)) {
            if (labels_[w] < 0 || w == v) continue;
            if (mod4(label - labels_[w]) == 1) {
                ++ahead_[w];
                ++behind_[v];
            } else {
                ++behind_[w];
                ++ahead_[v];
            }
            const std::size_t half_w = g_.degree(w) / 2;
            if (ahead_[w] > half_w || behind_[w] > half_w) feasible = false;
        }
        if (ahead_[v] > half || behind_[v] > half) feasible = false;
        return feasible;
    }

    void unplace(Vertex v) {
        const int label = labels_[v];
        for (Vertex w : g_.neighbors(v)) {
            if (labels_[w] < 0) continue;
            if (mod4(label - labels_[w]) == 1) {
                --ahead_[w];
                --behind_[v];
            } else {
                --behind_[w];
                --ahead_[v];
            }
        }
        labels_[v] = -1;
    }

    bool assign(std::size_t idx, const Visitor& visit) {
        if (idx == order_.size()) return visit(labels_);
        const Vertex v = order_[idx];
        int candidates[2] = {0, -1};
        if (idx > 0) {
            candidates[0] = mod4(labels_[parent_[v]] + 1);
            candidates[1] = mod4(labels_[parent_[v]] + 3);
        }
        for (int label : candidates) {
            if (label < 0) break;
            if (++nodes_ > budget_) throw SearchBudgetExceeded(budget_);
            const bool ok = place(v, label);
            // place() only commits the label when the edge-difference test passes
            if (labels_[v] == label) {
                bool keep_going = true;
                if (ok) keep_going = assign(idx + 1, visit);
                unplace(v);
                if (!keep_going) return false;
            }
        }
        return true;
    }

    const Graph& g_;
    std::size_t& nodes_;
    std::size_t budget_;
    std::vector<int> labels_;
    std::vector<std::size_t> ahead_;
    std::vector<std::size_t> behind_;
    std::vector<Vertex> parent_;
    std::vector<Vertex> order_;
};

bool has_odd_degree(const Graph& g) {
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) % 2 != 0) return true;
    return false;
}

std::vector<std::vector<Vertex>> edge_components(const Graph& g) {
    std::vector<std::vector<Vertex>> out;
    for (auto& comp : connected_components(g))
        if (comp.size() > 1) out.push_back(std::move(comp));
    return out;
}

}  // namespace

PhaseVector QuarterLabeling::phases() const {
    std::vector<double> theta(labels.size());
    for (std::size_t k = 0; k < labels.size(); ++k) theta[k] = base + mod4(labels[k]) * kQuarterTurn;
    return PhaseVector(std::move(theta));
}

CdeCheck is_cde(const Graph& g, std::span<const double> theta, double tol) {
    if (theta.size() != g.vertex_count()) {
        throw std::invalid_argument("phase vector has " + std::to_string(theta.size()) + " entries, graph has " +
                                    std::to_string(g.vertex_count()) + " vertices");
    }
    CdeCheck check;
    for (Vertex k = 0; k < g.vertex_count(); ++k) {
        std::size_t ahead = 0;
        std::size_t behind = 0;
        for (Vertex j : g.neighbors(k)) {
            const double d = wrap_phase(theta[j] - theta[k]);
            if (std::abs(d - kQuarterTurn) <= tol) {
                ++ahead;
            } else if (std::abs(d - 3.0 * kQuarterTurn) <= tol) {
                ++behind;
            } else {
                check.vertex = k;
                check.neighbor = j;
                check.reason = "neighbour " + std::to_string(j) + " of vertex " + std::to_string(k) +
                               " is not at +-pi/2 (offset " + std::to_string(d) + " rad)";
                return check;
            }
        }
        if (ahead != behind) {
            check.vertex = k;
            check.reason = "vertex " + std::to_string(k) + " has " + std::to_string(ahead) +
                           " neighbours at +pi/2 and " + std::to_string(behind) + " at -pi/2";
            return check;
        }
    }
    check.ok = true;
    check.reason = "completely degenerate";
    return check;
}

NonidenticalCdeCheck is_cde_nonidentical(const OscillatorSystem& sys, std::span<const double> theta, double tol) {
    const Graph& g = sys.graph();
    if (theta.size() != g.vertex_count()) {
        throw std::invalid_argument("phase vector has " + std::to_string(theta.size()) + " entries, graph has " +
                                    std::to_string(g.vertex_count()) + " vertices");
    }
    NonidenticalCdeCheck result;
    result.all_ratios_integral = true;
    for (double w : sys.frequencies()) {
        const double r = w / sys.coupling();
        const bool integral = std::abs(r - std::round(r)) <= tol;
        result.ratios.push_back(r);
        result.ratio_integral.push_back(integral);
        result.all_ratios_integral = result.all_ratios_integral && integral;
    }

    CdeCheck& check = result.check;
    for (const Edge& e : g.edges()) {
        const double c = std::cos(theta[e.u] - theta[e.v]);
        if (std::abs(c) > tol) {
            check.vertex = e.u;
            check.neighbor = e.v;
            check.reason = "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           "} is not critical (cos = " + std::to_string(c) + ")";
            return result;
        }
    }
    for (Vertex k = 0; k < g.vertex_count(); ++k) {
        double s = 0.0;
        for (Vertex j : g.neighbors(k)) s += std::sin(theta[j] - theta[k]);
        const double residual = s + result.ratios[k];
        if (std::abs(residual) > tol * std::max<double>(1.0, static_cast<double>(g.degree(k)))) {
            check.vertex = k;
            check.reason = "sine balance fails at vertex " + std::to_string(k) + ": sum " + std::to_string(s) +
                           " vs -omega/K = " + std::to_string(-result.ratios[k]);
            return result;
        }
    }
    check.ok = true;
    check.reason = "completely degenerate";
    return result;
}

SearchBudgetExceeded::SearchBudgetExceeded(std::size_t budget)
    : std::runtime_error("CDE search exceeded its budget of " + std::to_string(budget) + " nodes"),
      budget_(budget) {}

std::vector<ComponentLabelings> enumerate_component_cdes(const Graph& g, const EnumerationOptions& opts) {
    std::vector<ComponentLabelings> out;
    std::size_t nodes = 0;
    for (auto& comp : edge_components(g)) {
        ComponentLabelings entry{std::move(comp), {}};
        const bool odd = std::any_of(entry.vertices.begin(), entry.vertices.end(),
                                     [&](Vertex v) { return g.degree(v) % 2 != 0; });
        if (!odd) {
            ComponentSearch search(g, entry.vertices, nodes, opts.node_budget);
            search.run([&](const std::vector<int>& labels) {
                QuarterLabeling q{std::vector<int>(g.vertex_count(), 0), 0.0};
                for (Vertex v : entry.vertices) q.labels[v] = labels[v];
                entry.labelings.push_back(std::move(q));
                return true;
            });
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<QuarterLabeling> enumerate_cdes(const Graph& g, const EnumerationOptions& opts) {
    const auto parts = enumerate_component_cdes(g, opts);
    std::vector<QuarterLabeling> result{QuarterLabeling{std::vector<int>(g.vertex_count(), 0), 0.0}};
    for (const auto& part : parts) {
        std::vector<QuarterLabeling> next;
        next.reserve(result.size() * part.labelings.size());
        for (const auto& partial : result) {
            for (const auto& local : part.labelings) {
                QuarterLabeling q = partial;
                for (Vertex v : part.vertices) q.labels[v] = local.labels[v];
                next.push_back(std::move(q));
            }
        }
        result = std::move(next);
    }
    return result;
}

std::optional<QuarterLabeling> first_cde(const Graph& g, const EnumerationOptions& opts) {
    if (has_odd_degree(g)) return std::nullopt;
    QuarterLabeling q{std::vector<int>(g.vertex_count(), 0), 0.0};
    std::size_t nodes = 0;
    for (const auto& comp : edge_components(g)) {
        bool found = false;
        ComponentSearch search(g, comp, nodes, opts.node_budget);
        search.run([&](const std::vector<int>& labels) {
            for (Vertex v : comp) q.labels[v] = labels[v];
            found = true;
            return false;
        });
        if (!found) return std::nullopt;
    }
    return q;
}

std::size_t count_cdes(const Graph& g, const EnumerationOptions& opts) {
    if (has_odd_degree(g)) return 0;
    std::size_t total = 1;
    std::size_t nodes = 0;
    for (const auto& comp : edge_components(g)) {
        std::size_t local = 0;
        ComponentSearch search(g, comp, nodes, opts.node_budget);
        search.run([&](const std::vector<int>&) {
            ++local;
            return true;
        });
        total *= local;
        if (total == 0) return 0;
    }
    return total;
}

InconsistentLabeling::InconsistentLabeling(Vertex v, std::size_t first, std::size_t second)
    : std::runtime_error("vertex " + std::to_string(v) + " revisited at steps " + std::to_string(first) + " and " +
                         std::to_string(second) + " (gap " + std::to_string(second - first) +
                         " is not a multiple of four)"),
      vertex(v), first_step(first), second_step(second) {}

void validate_circuit(const Graph& g, const EulerCircuit& c) {
    const auto& seq = c.vertices;
    if (seq.empty()) throw InvalidCircuit("circuit is empty");
    for (Vertex v : seq)
        if (v >= g.vertex_count()) throw InvalidCircuit("circuit visits unknown vertex " + std::to_string(v));
    if (seq.front() != seq.back()) throw InvalidCircuit("circuit is not closed");
    if (c.steps() != g.edge_count()) {
        throw InvalidCircuit("circuit has " + std::to_string(c.steps()) + " steps but the graph has " +
                             std::to_string(g.edge_count()) + " edges");
    }
    std::set<Edge> used;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        const Vertex a = seq[i];
        const Vertex b = seq[i + 1];
        if (!g.has_edge(a, b)) {
            throw InvalidCircuit("step " + std::to_string(i) + " uses non-edge {" + std::to_string(a) + "," +
                                 std::to_string(b) + "}");
        }
        if (!used.insert(Edge{std::min(a, b), std::max(a, b)}).second) {
            throw InvalidCircuit("edge {" + std::to_string(a) + "," + std::to_string(b) + "} used twice");
        }
    }
}

QuarterLabeling circuit_to_phases(const Graph& g, const EulerCircuit& c, double base) {
    validate_circuit(g, c);
    QuarterLabeling q{std::vector<int>(g.vertex_count(), 0), wrap_phase(base)};
    std::vector<std::optional<std::size_t>> first_visit(g.vertex_count());
    for (std::size_t step = 0; step < c.vertices.size(); ++step) {
        const Vertex v = c.vertices[step];
        const int label = static_cast<int>(step % 4);
        if (!first_visit[v]) {
            first_visit[v] = step;
            q.labels[v] = label;
        } else if (q.labels[v] != label) {
            throw InconsistentLabeling(v, *first_visit[v], step);
        }
    }
    return q;
}

EulerCircuit phases_to_circuit(const Graph& g, const QuarterLabeling& q) {
    if (q.labels.size() != g.vertex_count()) throw std::invalid_argument("labeling size does not match graph");
    if (g.edge_count() == 0) throw std::invalid_argument("graph has no edges");
    if (edge_components(g).size() != 1) throw std::invalid_argument("graph edges are not connected");
    if (auto bad = labeling_violation(g, q.labels)) {
        throw std::invalid_argument("labeling is not a CDE at vertex " + std::to_string(bad->first) + ": " +
                                    bad->second);
    }

    const std::size_t n = g.vertex_count();
    // Orient each edge along +1 mod 4; a CDE makes every vertex balanced.
    std::vector<std::vector<Vertex>> forward(n);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(v))
            if (mod4(q.labels[w] - q.labels[v]) == 1) forward[v].push_back(w);
    std::vector<std::size_t> next_edge(n, 0);

    auto closed_walk = [&](Vertex start) {
        std::vector<Vertex> walk{start};
        Vertex cur = start;
        while (next_edge[cur] < forward[cur].size()) {
            cur = forward[cur][next_edge[cur]++];
            walk.push_back(cur);
        }
        return walk;
    };

    std::optional<Vertex> start;
    for (Vertex v = 0; v < n && !start; ++v)
        if (g.degree(v) > 0 && mod4(q.labels[v]) == 0) start = v;
    for (Vertex v = 0; v < n && !start; ++v)
        if (g.degree(v) > 0) start = v;

    std::vector<Vertex> walk = closed_walk(*start);
    for (;;) {
        auto splice_at = std::find_if(walk.begin(), walk.end(),
                                      [&](Vertex v) { return next_edge[v] < forward[v].size(); });
        if (splice_at == walk.end()) break;
        const auto loop = closed_walk(*splice_at);
        walk.insert(splice_at + 1, loop.begin() + 1, loop.end());
    }
    return EulerCircuit{std::move(walk)};
}

Mod4Check check_mod4_circuit(const EulerCircuit& c) {
    const auto& seq = c.vertices;
    if (seq.empty() || seq.front() != seq.back()) throw InvalidCircuit("circuit is not closed");
    Mod4Check result;
    std::vector<std::optional<std::size_t>> first_visit(*std::max_element(seq.begin(), seq.end()) + 1);
    for (std::size_t pos = 0; pos < seq.size(); ++pos) {
        const Vertex v = seq[pos];
        if (!first_visit[v]) {
            first_visit[v] = pos;
        } else if ((pos - *first_visit[v]) % 4 != 0) {
            result.vertex = v;
            result.first_position = *first_visit[v];
            result.second_position = pos;
            return result;
        }
    }
    result.ok = true;
    return result;
}

NonidenticalConstruction construct_nonidentical_cde(const Graph& g, double coupling) {
    if (!(coupling > 0.0)) throw std::invalid_argument("coupling strength must be positive");
    NonidenticalConstruction out;
    auto parts = is_bipartite(g);
    if (!parts.bipartite) {
        out.odd_cycle = std::move(parts.odd_cycle);
        return out;
    }
    std::vector<double> theta(g.vertex_count(), 0.0);
    for (Vertex v : parts.right) theta[v] = kQuarterTurn;
    out.frequencies.assign(g.vertex_count(), 0.0);
    for (Vertex k = 0; k < g.vertex_count(); ++k) {
        double s = 0.0;
        for (Vertex j : g.neighbors(k)) s += std::sin(theta[j] - theta[k]);
        out.frequencies[k] = -coupling * s;
    }
    out.phases = PhaseVector(std::move(theta));
    out.realizable = true;
    return out;
}

const char* to_string(AdmitsReason reason) {
    switch (reason) {
        case AdmitsReason::Edgeless: return "edgeless";
        case AdmitsReason::OddDegree: return "odd-degree";
        case AdmitsReason::Triangle: return "triangle";
        case AdmitsReason::NotBipartite: return "non-bipartite";
        case AdmitsReason::EnumerationEmpty: return "enumeration-empty";
        case AdmitsReason::Enumerated: return "enumerated";
        case AdmitsReason::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

AdmitsResult admits_cde(const Graph& g, const EnumerationOptions& opts) {
    AdmitsResult r;
    if (g.edge_count() == 0) {
        r.admits = true;
        r.edgeless = true;
        r.reason = AdmitsReason::Edgeless;
        return r;
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) % 2 != 0) {
            r.reason = AdmitsReason::OddDegree;
            r.witness_vertex = v;
            return r;
        }
    }
    if (auto tri = contains_triangle(g)) {
        r.reason = AdmitsReason::Triangle;
        r.witness_cycle.assign(tri->begin(), tri->end());
        return r;
    }
    if (auto parts = is_bipartite(g); !parts.bipartite) {
        r.reason = AdmitsReason::NotBipartite;
        r.witness_cycle = std::move(parts.odd_cycle);
        return r;
    }
    std::size_t nodes = 0;
    try {
        for (const auto& comp : edge_components(g)) {
            bool found = false;
            ComponentSearch search(g, comp, nodes, opts.node_budget);
            search.run([&](const std::vector<int>&) {
                found = true;
                return false;
            });
            if (!found) {
                r.reason = AdmitsReason::EnumerationEmpty;
                r.witness_vertex = comp.front();
                return r;
            }
        }
    } catch (const SearchBudgetExceeded&) {
        r.reason = AdmitsReason::BudgetExceeded;
        return r;
    }
    r.admits = true;
    r.reason = AdmitsReason::Enumerated;
    return r;
}

QuarterLabeling extend_glued_labeling(const QuarterLabeling& q, Vertex k) {
    if (k >= q.labels.size()) throw std::out_of_range("glue vertex out of range");
    QuarterLabeling out = q;
    const int lk = q.labels[k];
    for (int step = 1; step <= 3; ++step) out.labels.push_back(mod4(lk + step));
    return out;
}

}  // namespace degen
