// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "degen/degeneracy.hpp"
#include "degen/dynamics.hpp"
#include "degen/experiments.hpp"
#include "degen/io.hpp"
#include "degen/oscillator.hpp"
#include "oracles.hpp"

using namespace degen;
using std::numbers::pi;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
    void expect(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.ok) ++failures;
    std::printf("[%s] %2d %s (%.2fs)%s%s\n", o.ok ? "PASS" : "FAIL", id, title, secs, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// Connected graphs on <= 7 vertices. Up to 6 vertices every labelled graph is
// visited; on 7 vertices only the even-degree ones, since a vertex of odd
// degree cannot balance its +pi/2 and -pi/2 neighbours.
void for_each_corpus_graph(const std::function<void(const Graph&)>& visit) {
    for (std::size_t n = 2; n <= 6; ++n)
        oracle::for_each_graph(n, [&](const Graph& g) {
            if (oracle::is_connected(g)) visit(g);
        });
    oracle::for_each_even_graph(7, [&](const Graph& g) {
        if (oracle::is_connected(g)) visit(g);
    });
}

struct CorpusEntry {
    Graph graph;
    std::vector<QuarterLabeling> cdes;
};

std::vector<CorpusEntry>& admitting_corpus() {
    static std::vector<CorpusEntry> corpus;
    return corpus;
}

Graph random_connected(std::size_t n, double p, std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Graph g = erdos_renyi(n, p, derive_seed(seed, attempt));
        if (g.edge_count() > 0 && oracle::is_connected(g)) return g;
    }
}

Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (g.has_edge(vertices[a], vertices[b])) edges.emplace_back(a, b);
    return Graph(vertices.size(), edges);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    criterion(1, "C4 ground truth", [](Outcome& o) {
        const PhaseVector theta{0.0, pi / 2, pi, 3 * pi / 2};
        const Graph c4 = cycle_graph(4);
        o.expect(is_cde(c4, theta).ok, "is_cde rejected the C4 state");
        const double m = jacobian(OscillatorSystem(c4), theta).max_abs();
        o.expect(m < 1e-12, "jacobian max abs " + std::to_string(m));
    });

    criterion(2, "4N-cycles admit CDEs, other even cycles do not", [](Outcome& o) {
        const auto start = std::chrono::steady_clock::now();
        for (std::size_t n : {4, 8, 12, 16}) {
            std::vector<double> theta(n);
            for (std::size_t k = 0; k < n; ++k) theta[k] = static_cast<double>(k) * pi / 2;
            o.expect(is_cde(cycle_graph(n), theta).ok, "C" + std::to_string(n) + " state rejected");
        }
        for (std::size_t n : {6, 10, 14})
            o.expect(enumerate_cdes(cycle_graph(n)).empty(), "C" + std::to_string(n) + " has a CDE");
        o.expect(seconds_since(start) < 1.0, "slower than 1 s");
    });

    criterion(3, "Q4 CDEs use each quarter label on 4 vertices", [](Outcome& o) {
        const auto start = std::chrono::steady_clock::now();
        const auto all = enumerate_cdes(hypercube_graph(4));
        o.expect(!all.empty(), "no CDE found on Q4");
        for (const auto& q : all) {
            int count[4] = {0, 0, 0, 0};
            for (int l : q.labels) ++count[l];
            for (int c : count) o.expect(c == 4, "unbalanced label counts");
        }
        o.expect(seconds_since(start) < 10.0, "slower than 10 s");
    });

    criterion(4, "CDE <-> mod-4 circuit round trip on all connected graphs up to 7 vertices", [](Outcome& o) {
        std::size_t graphs = 0;
        for_each_corpus_graph([&](const Graph& g) {
            ++graphs;
            const auto found = enumerate_cdes(g);
            std::vector<std::vector<int>> mine;
            for (const auto& q : found) mine.push_back(q.labels);
            std::sort(mine.begin(), mine.end());
            if (mine != oracle::brute_force_cdes(g)) {
                o.fail("enumeration disagrees with brute force on a graph with " + std::to_string(g.edge_count()) +
                       " edges");
                return;
            }
            if (found.empty()) return;
            for (const auto& q : found) {
                const EulerCircuit c = phases_to_circuit(g, q);
                validate_circuit(g, c);
                o.expect(check_mod4_circuit(c).ok, "circuit fails the mod-4 test");
                o.expect(circuit_to_phases(g, c, q.base) == q, "circuit does not reproduce the labeling");
            }
            admitting_corpus().push_back({g, found});
        });
        o.expect(graphs > 0 && !admitting_corpus().empty(), "empty corpus");
    });

    criterion(5, "admitting graphs are Eulerian and bipartite (1000 random graphs)", [](Outcome& o) {
        for (std::uint64_t i = 0; i < 1000; ++i) {
            const std::size_t n = 4 + i % 7;
            const double p = (i / 7) % 2 ? 0.5 : 0.2;
            const Graph g = erdos_renyi(n, p, derive_seed(5, i));
            if (!admits_cde(g).admits) continue;
            for (const auto& comp : connected_components(g))
                o.expect(is_eulerian(induced_subgraph(g, comp)).eulerian, "admitting graph has a non-Eulerian component");
            o.expect(is_bipartite(g).bipartite, "admitting graph is not bipartite");
        }
    });

    criterion(6, "saddle energy gap equals sin 2x - 2 sin x", [](Outcome& o) {
        if (admitting_corpus().empty()) throw std::runtime_error("round-trip corpus is empty");
        for (const auto& entry : admitting_corpus()) {
            for (const auto& q : entry.cdes) {
                const EulerCircuit c = phases_to_circuit(entry.graph, q);
                for (double x : {0.3, -0.3, 0.1, -0.1, 0.01, -0.01}) {
                    const double gap = energy_gap_identical(entry.graph, q, c, x);
                    o.expect(std::abs(gap - (std::sin(2 * x) - 2 * std::sin(x))) < 1e-12, "gap mismatch");
                }
                const double plus = energy_gap_identical(entry.graph, q, c, 0.01);
                const double minus = energy_gap_identical(entry.graph, q, c, -0.01);
                o.expect(plus * minus < 0.0, "gap does not change sign across 0");
            }
        }
    });

    criterion(7, "escape from C4, C8, Q4 CDEs; no escape from synchrony", [](Outcome& o) {
        ProbeOptions opts;  // x0 = 1e-3, epsilon = 0.5, dt = 1e-3, 10^6 steps
        for (const Graph& g : {cycle_graph(4), cycle_graph(8), hypercube_graph(4)}) {
            const auto q = first_cde(g);
            if (!q) {
                o.fail("no CDE to probe");
                continue;
            }
            const auto rep = probe_cde(g, *q, opts);
            o.expect(rep.escaped, "no escape on a graph with " + std::to_string(g.vertex_count()) + " vertices");
        }
        const OscillatorSystem c4(cycle_graph(4));
        const std::vector<double> zero(4, 0.0);
        const std::vector<double> dir{1.0, -1.0, 0.0, 0.0};
        o.expect(!instability_probe(c4, zero, dir, opts).escaped, "synchronised state escaped");
    });

    criterion(8, "F = -grad E by central differences (100 random pairs)", [](Outcome& o) {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        for (std::uint64_t i = 0; i < 100; ++i) {
            const std::size_t n = 2 + i % 11;
            const OscillatorSystem sys(erdos_renyi(n, 0.4, derive_seed(8, i)));
            std::vector<double> theta(n);
            for (double& x : theta) x = angle(rng);
            const double err = gradient_consistency(sys, theta, 1e-5);
            o.expect(err < 1e-6, "gradient mismatch " + std::to_string(err));
        }
    });

    criterion(9, "energy is non-increasing along 50 trajectories", [](Outcome& o) {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        for (std::uint64_t i = 0; i < 50; ++i) {
            const std::size_t n = 3 + i % 8;
            const OscillatorSystem sys(erdos_renyi(n, 0.5, derive_seed(9, i)));
            std::vector<double> theta(n);
            for (double& x : theta) x = angle(rng);
            const auto trace = integrate(sys, theta, 1e-3, 10'000);
            for (std::size_t s = 1; s < trace.energies.size(); ++s)
                if (trace.energies[s] - trace.energies[s - 1] > 1e-10) {
                    o.fail("energy rose at step " + std::to_string(s));
                    break;
                }
        }
    });

    criterion(10, "non-identical construction on bipartite graphs, refusal otherwise", [](Outcome& o) {
        std::size_t made = 0, refused = 0;
        for (std::uint64_t i = 0; made < 200 || refused < 200; ++i) {
            const std::size_t n = 3 + i % 10;
            const Graph g = erdos_renyi(n, 0.35, derive_seed(10, i));
            const double k = 0.5 + static_cast<double>(i % 4);
            const auto out = construct_nonidentical_cde(g, k);
            if (is_bipartite(g).bipartite) {
                if (made >= 200) continue;
                ++made;
                if (!out.realizable) {
                    o.fail("refused a bipartite graph");
                    continue;
                }
                const auto check = is_cde_nonidentical(OscillatorSystem(g, k, out.frequencies), out.phases, 1e-12);
                o.expect(check.ok(), "construction is not a CDE: " + check.check.reason);
                o.expect(check.all_ratios_integral, "omega/K not integral");
            } else {
                if (refused >= 200) continue;
                ++refused;
                o.expect(!out.realizable, "realised a non-bipartite graph");
                const auto& cyc = out.odd_cycle;
                o.expect(cyc.size() % 2 == 1 && std::set<Vertex>(cyc.begin(), cyc.end()).size() == cyc.size(),
                         "witness is not a simple odd cycle");
                for (std::size_t j = 0; j < cyc.size(); ++j)
                    o.expect(g.has_edge(cyc[j], cyc[(j + 1) % cyc.size()]), "witness uses a non-edge");
            }
        }
    });

    criterion(11, "vertex perturbation gap matches omega x + (a - b) sin x", [](Outcome& o) {
        auto check_vertex = [&](const OscillatorSystem& sys, const std::vector<double>& theta, Vertex k) {
            int a = 0, b = 0;
            for (Vertex j : sys.graph().neighbors(k)) {
                const double s = std::sin(theta[j] - theta[k]);
                (s > 0 ? a : b) += 1;
            }
            for (double x : {0.3, -0.3, 0.1, -0.1, 0.01, -0.01}) {
                const double expected = sys.frequencies()[k] * x + (a - b) * std::sin(x);
                const double gap = vertex_perturbation_gap(sys, theta, k, x);
                o.expect(std::abs(gap - expected) < 1e-12, "gap mismatch at vertex " + std::to_string(k));
            }
        };
        const Graph star = star_graph(3);
        check_vertex(OscillatorSystem(star, 1.0, {-3, 1, 1, 1}), {0, pi / 2, pi / 2, pi / 2}, 0);

        std::size_t checked = 0;
        for (std::uint64_t i = 0; i < 400; ++i) {
            const Graph g = erdos_renyi(3 + i % 9, 0.35, derive_seed(11, i));
            const auto out = construct_nonidentical_cde(g, 1.0);
            if (!out.realizable) continue;
            const OscillatorSystem sys(g, 1.0, out.frequencies);
            const std::vector<double> theta = out.phases.values();
            for (Vertex k = 0; k < g.vertex_count(); ++k)
                if (out.frequencies[k] != 0.0) {
                    check_vertex(sys, theta, k);
                    ++checked;
                }
        }
        o.expect(checked > 0, "no unbalanced vertices checked");
    });

    criterion(12, "dense G(12, 1/2): triangles nearly always, no admitting graph", [](Outcome& o) {
        const auto start = std::chrono::steady_clock::now();
        const auto rep = rarity_experiment(12, 0.5, 500, 12);
        o.expect(rep.triangle_rate() >= 0.99, "triangle rate " + std::to_string(rep.triangle_rate()));
        o.expect(rep.counts.admits == 0, std::to_string(rep.counts.admits) + " admitting samples");
        o.expect(seconds_since(start) < 30.0, "slower than 30 s");
    });

    criterion(13, "glue chains and 4m-cycles cover every vertex count 6..16", [](Outcome& o) {
        std::set<std::size_t> covered;
        auto record = [&](const Graph& g) {
            if (!oracle::is_connected(g)) {
                o.fail("disconnected family member");
                return;
            }
            if (enumerate_cdes(g).empty()) {
                o.fail("family member with " + std::to_string(g.vertex_count()) + " vertices has no CDE");
                return;
            }
            covered.insert(g.vertex_count());
        };
        for (const char* seed : {"c4", "k24", "c8"}) {
            const SweepSpec spec{"glue-chain", {0, 1, 2, 3, 4}, seed};
            for (const auto& row : family_sweep(spec)) {
                if (row.vertex_count > 16) continue;
                o.expect(row.admits, "sweep row does not admit");
                record(family_member(spec, row.parameter));
            }
        }
        for (std::size_t m = 1; 4 * m <= 16; ++m) record(cycle_graph(4 * m));
        for (std::size_t n = 6; n <= 16; ++n)
            o.expect(covered.count(n) == 1, "vertex count " + std::to_string(n) + " not covered");
    });

    criterion(14, "synchrony has a strictly negative Jacobian eigenvalue", [](Outcome& o) {
        std::vector<Graph> graphs{cycle_graph(4), cycle_graph(7), hypercube_graph(4), complete_graph(5),
                                  star_graph(4), Graph(2, {{0, 1}})};
        for (std::uint64_t i = 0; i < 100; ++i) graphs.push_back(random_connected(2 + i % 11, 0.4, derive_seed(14, i)));
        for (const Graph& g : graphs) {
            const OscillatorSystem sys(g);
            const auto rep = symmetric_eigenvalues(jacobian(sys, std::vector<double>(g.vertex_count(), 0.0)));
            o.expect(rep.eigenvalues.front() < -1e-9, "no negative eigenvalue");
        }
    });

    criterion(15, "JSON round trip and SVG goldens", [](Outcome& o) {
        for (std::uint64_t i = 0; i < 50; ++i) {
            GraphDocument doc;
            doc.graph = erdos_renyi(3 + i % 8, 0.4, derive_seed(15, i));
            const std::size_t n = doc.graph.vertex_count();
            std::mt19937_64 rng(i);
            std::uniform_real_distribution<double> u(-10.0, 10.0);
            std::vector<double> phases(n), freqs(n);
            for (double& x : phases) x = u(rng);
            for (double& x : freqs) x = u(rng);
            if (i % 2) doc.phases = phases;
            if (i % 3) doc.frequencies = freqs;
            if (i % 5 == 0) doc.coupling = 0.5 + static_cast<double>(i);
            if (auto q = first_cde(doc.graph); q && i % 2 == 0) doc.labeling = *q;
            const std::string text = emit_json(doc);
            o.expect(parse_document(text) == doc, "parse(emit(doc)) differs");
            o.expect(emit_json(parse_document(text)) == text, "emit(parse(text)) differs");
        }
        const std::string dir = DEGEN_GOLDEN_DIR;
        o.expect(render_svg(cycle_graph(4), QuarterLabeling{{0, 1, 2, 3}, 0.0}) == read_file(dir + "/c4_cde.svg"),
                 "C4 SVG differs from golden");
        const Graph q4 = hypercube_graph(4);
        o.expect(render_svg(q4, *first_cde(q4), Layout::hypercube()) == read_file(dir + "/q4_cde.svg"),
                 "Q4 SVG differs from golden");
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
