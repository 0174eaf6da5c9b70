#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "degen/degeneracy.hpp"
#include "oracles.hpp"

using namespace degen;
using std::numbers::pi;

namespace {

std::vector<std::vector<int>> labels_of(const std::vector<QuarterLabeling>& qs) {
    std::vector<std::vector<int>> out;
    for (const auto& q : qs) out.push_back(q.labels);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> cycle_cde(std::size_t n) {
    std::vector<double> theta(n);
    for (std::size_t k = 0; k < n; ++k) theta[k] = static_cast<double>(k) * pi / 2;
    return theta;
}

}  // namespace

TEST_CASE("is_cde") {
    CHECK(is_cde(cycle_graph(4), PhaseVector{0, pi / 2, pi, 3 * pi / 2}).ok);
    auto flat = is_cde(cycle_graph(4), PhaseVector{0, 0, 0, 0});
    CHECK_FALSE(flat.ok);
    CHECK(flat.vertex == 0u);
    CHECK(flat.neighbor == 1u);
    CHECK(is_cde(cycle_graph(8), cycle_cde(8)).ok);

    // every neighbour at a quarter turn but unbalanced
    auto star = is_cde(star_graph(2), PhaseVector{0, pi / 2, pi / 2});
    CHECK_FALSE(star.ok);
    CHECK(star.vertex == 0u);
    CHECK_FALSE(star.neighbor.has_value());

    // a global rotation keeps a CDE a CDE
    std::vector<double> shifted = cycle_cde(8);
    for (double& x : shifted) x += 0.77;
    CHECK(is_cde(cycle_graph(8), shifted).ok);

    CHECK_THROWS_AS(is_cde(cycle_graph(4), PhaseVector{0, 1}), std::invalid_argument);
}

TEST_CASE("is_cde_nonidentical") {
    const QuarterLabeling c4{{0, 1, 2, 3}, 0.0};
    auto ident = is_cde_nonidentical(OscillatorSystem(cycle_graph(4)), c4.phases());
    CHECK(ident.ok());
    for (double r : ident.ratios) CHECK(r == 0.0);

    const Graph star = star_graph(3);
    const PhaseVector theta{0, pi / 2, pi / 2, pi / 2};
    auto driven = is_cde_nonidentical(OscillatorSystem(star, 1.0, {-3, 1, 1, 1}), theta);
    CHECK(driven.ok());
    CHECK(driven.all_ratios_integral);

    auto undriven = is_cde_nonidentical(OscillatorSystem(star, 1.0, {0, 0, 0, 0}), theta);
    CHECK_FALSE(undriven.ok());
    CHECK(undriven.check.vertex == 0u);

    auto fractional = is_cde_nonidentical(OscillatorSystem(star, 2.0, {-3, 1, 1, 1}), theta);
    CHECK_FALSE(fractional.all_ratios_integral);
    CHECK_FALSE(fractional.ok());
}

TEST_CASE("enumerate_cdes examples") {
    const auto c4 = enumerate_cdes(cycle_graph(4));
    REQUIRE(c4.size() == 2);
    CHECK(c4[0].labels == std::vector<int>{0, 1, 2, 3});
    CHECK(c4[1].labels == std::vector<int>{0, 3, 2, 1});
    CHECK(labels_of(c4) == oracle::brute_force_cdes(cycle_graph(4)));

    CHECK(enumerate_cdes(complete_graph(3)).empty());
    CHECK(enumerate_cdes(cycle_graph(6)).empty());
    CHECK(oracle::brute_force_cdes(cycle_graph(6)).empty());
    CHECK(enumerate_cdes(hypercube_graph(3)).empty());
}

TEST_CASE("enumeration over components") {
    // two disjoint C4s plus an isolated vertex: 2 x 2 labelings
    Graph g(9, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}});
    const auto all = enumerate_cdes(g);
    CHECK(all.size() == 4);
    CHECK(count_cdes(g) == 4);
    for (const auto& q : all) {
        CHECK(q.labels[0] == 0);
        CHECK(q.labels[4] == 0);
        CHECK(q.labels[8] == 0);
        CHECK(is_cde(g, q.phases(), 1e-12).ok);
    }
    // one blocked component empties the product
    Graph blocked(9, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 4}});
    CHECK(enumerate_cdes(blocked).empty());

    const auto edgeless = enumerate_cdes(Graph(3));
    REQUIRE(edgeless.size() == 1);
    CHECK(edgeless[0].labels == std::vector<int>{0, 0, 0});
}

TEST_CASE("search budget") {
    CHECK_THROWS_AS(enumerate_cdes(hypercube_graph(4), {10}), SearchBudgetExceeded);
    auto verdict = admits_cde(hypercube_graph(4), {3});
    CHECK_FALSE(verdict.admits);
    CHECK(verdict.reason == AdmitsReason::BudgetExceeded);
}

TEST_CASE("enumeration is sound and complete on small graphs") {
    for (std::size_t n = 2; n <= 5; ++n) {
        oracle::for_each_graph(n, [&](const Graph& g) {
            if (!oracle::is_connected(g)) return;
            const auto found = enumerate_cdes(g);
            for (const auto& q : found) {
                CHECK(is_cde(g, q.phases(), 1e-12).ok);
                CHECK(jacobian(OscillatorSystem(g), q.phases()).max_abs() < 1e-12);
            }
            CHECK(labels_of(found) == oracle::brute_force_cdes(g));
            CHECK(count_cdes(g) == found.size());
            CHECK(admits_cde(g).admits == !found.empty());
        });
    }
    oracle::for_each_even_graph(6, [&](const Graph& g) {
        if (!oracle::is_connected(g)) return;
        CHECK(labels_of(enumerate_cdes(g)) == oracle::brute_force_cdes(g));
    });
}

TEST_CASE("circuit_to_phases") {
    const Graph c4 = cycle_graph(4);
    const auto q = circuit_to_phases(c4, EulerCircuit{{0, 1, 2, 3, 0}}, 0.0);
    CHECK(q.labels == std::vector<int>{0, 1, 2, 3});
    CHECK(is_cde(c4, q.phases()).ok);

    const auto q8 = circuit_to_phases(cycle_graph(8), EulerCircuit{{0, 1, 2, 3, 4, 5, 6, 7, 0}});
    CHECK(q8.labels == std::vector<int>{0, 1, 2, 3, 0, 1, 2, 3});

    try {
        circuit_to_phases(cycle_graph(6), EulerCircuit{{0, 1, 2, 3, 4, 5, 0}});
        FAIL("expected an inconsistent labeling");
    } catch (const InconsistentLabeling& e) {
        CHECK(e.vertex == 0u);
        CHECK(e.first_step == 0u);
        CHECK(e.second_step == 6u);
    }

    CHECK_THROWS_AS(circuit_to_phases(c4, EulerCircuit{{0, 1, 2, 3}}), InvalidCircuit);
    CHECK_THROWS_AS(circuit_to_phases(c4, EulerCircuit{{0, 2, 1, 3, 0}}), InvalidCircuit);
    CHECK_THROWS_AS(circuit_to_phases(c4, EulerCircuit{{0, 1, 0, 1, 0}}), InvalidCircuit);
    CHECK_THROWS_AS(circuit_to_phases(c4, EulerCircuit{{0, 1, 2, 1, 0}}), InvalidCircuit);

    const auto based = circuit_to_phases(c4, EulerCircuit{{0, 1, 2, 3, 0}}, 1.25);
    CHECK(based.base == 1.25);
    CHECK(based.phases()[1] == doctest::Approx(1.25 + pi / 2));
}

TEST_CASE("phases_to_circuit") {
    const Graph c4 = cycle_graph(4);
    const EulerCircuit c = phases_to_circuit(c4, QuarterLabeling{{0, 1, 2, 3}, 0.0});
    CHECK(c.vertices == std::vector<Vertex>{0, 1, 2, 3, 0});

    const Graph q4 = hypercube_graph(4);
    const auto q4_cde = first_cde(q4);
    REQUIRE(q4_cde);
    const EulerCircuit cq = phases_to_circuit(q4, *q4_cde);
    CHECK(cq.steps() == 32);
    CHECK(check_mod4_circuit(cq).ok);
    CHECK_NOTHROW(validate_circuit(q4, cq));

    const Graph glued = glue_four_cycle(c4, 0);
    const auto glued_cdes = enumerate_cdes(glued);
    REQUIRE_FALSE(glued_cdes.empty());
    const EulerCircuit cg = phases_to_circuit(glued, glued_cdes.front());
    CHECK(cg.steps() == 8);
    CHECK(check_mod4_circuit(cg).ok);
    std::vector<std::size_t> zero_positions;
    for (std::size_t i = 0; i < cg.vertices.size(); ++i)
        if (cg.vertices[i] == 0) zero_positions.push_back(i);
    CHECK(zero_positions == std::vector<std::size_t>{0, 4, 8});

    CHECK_THROWS_AS(phases_to_circuit(c4, QuarterLabeling{{0, 1, 2, 2}, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(phases_to_circuit(Graph(3), QuarterLabeling{{0, 0, 0}, 0.0}), std::invalid_argument);
}

TEST_CASE("check_mod4_circuit") {
    CHECK(check_mod4_circuit(EulerCircuit{{0, 1, 2, 3, 0}}).ok);
    auto bad = check_mod4_circuit(EulerCircuit{{0, 1, 2, 3, 4, 5, 0}});
    CHECK_FALSE(bad.ok);
    CHECK(bad.vertex == 0u);
    CHECK(bad.first_position == 0u);
    CHECK(bad.second_position == 6u);
    CHECK_THROWS_AS(check_mod4_circuit(EulerCircuit{{0, 1, 2}}), InvalidCircuit);
}

TEST_CASE("labeling and mod-4 circuit round trip on small connected graphs") {
    for (std::size_t n = 4; n <= 6; ++n) {
        oracle::for_each_even_graph(n, [&](const Graph& g) {
            if (!oracle::is_connected(g) || g.edge_count() == 0) return;
            for (const auto& q : enumerate_cdes(g)) {
                const EulerCircuit c = phases_to_circuit(g, q);
                CHECK_NOTHROW(validate_circuit(g, c));
                CHECK(check_mod4_circuit(c).ok);
                CHECK(circuit_to_phases(g, c, q.base) == q);
            }
        });
    }
}

TEST_CASE("construct_nonidentical_cde") {
    const auto edge = construct_nonidentical_cde(Graph(2, {{0, 1}}), 2.5);
    REQUIRE(edge.realizable);
    CHECK(edge.phases[0] == 0.0);
    CHECK(edge.phases[1] == doctest::Approx(pi / 2));
    CHECK(edge.frequencies == std::vector<double>{-2.5, 2.5});

    const auto tri = construct_nonidentical_cde(complete_graph(3), 1.0);
    CHECK_FALSE(tri.realizable);
    CHECK(tri.odd_cycle.size() == 3);

    const auto c4 = construct_nonidentical_cde(cycle_graph(4), 1.5);
    REQUIRE(c4.realizable);
    CHECK(c4.phases[0] == 0.0);
    CHECK(c4.phases[2] == 0.0);
    CHECK(c4.phases[1] == doctest::Approx(pi / 2));
    CHECK(c4.phases[3] == doctest::Approx(pi / 2));
    CHECK(c4.frequencies == std::vector<double>{-3.0, 3.0, -3.0, 3.0});

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Graph g = erdos_renyi(9, 0.3, seed);
        const double k = 0.5 + static_cast<double>(seed % 5);
        const auto made = construct_nonidentical_cde(g, k);
        CHECK(made.realizable == is_bipartite(g).bipartite);
        if (!made.realizable) continue;
        const auto check = is_cde_nonidentical(OscillatorSystem(g, k, made.frequencies), made.phases, 1e-12);
        CHECK(check.ok());
        CHECK(check.all_ratios_integral);
    }
    CHECK_THROWS_AS(construct_nonidentical_cde(cycle_graph(4), 0.0), std::invalid_argument);
}

TEST_CASE("admits_cde filters") {
    auto k3 = admits_cde(complete_graph(3));
    CHECK_FALSE(k3.admits);
    CHECK(k3.reason == AdmitsReason::Triangle);

    auto c4 = admits_cde(cycle_graph(4));
    CHECK(c4.admits);
    CHECK(c4.reason == AdmitsReason::Enumerated);

    auto c6 = admits_cde(cycle_graph(6));
    CHECK_FALSE(c6.admits);
    CHECK(c6.reason == AdmitsReason::EnumerationEmpty);

    auto path = admits_cde(path_graph(3));
    CHECK(path.reason == AdmitsReason::OddDegree);
    CHECK(path.witness_vertex == 0u);

    // even degrees, no triangle, odd 5-cycle
    auto c5 = admits_cde(cycle_graph(5));
    CHECK(c5.reason == AdmitsReason::NotBipartite);
    CHECK(c5.witness_cycle.size() % 2 == 1);

    auto empty = admits_cde(Graph(4));
    CHECK(empty.admits);
    CHECK(empty.edgeless);
    CHECK(empty.reason == AdmitsReason::Edgeless);
}

TEST_CASE("admitting graphs are eulerian and bipartite") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Graph g = erdos_renyi(8, seed % 2 ? 0.2 : 0.5, seed);
        if (!admits_cde(g).admits) continue;
        CHECK(is_eulerian(g).eulerian == (connected_components(g).size() - std::count_if(
                                              connected_components(g).begin(), connected_components(g).end(),
                                              [](const auto& c) { return c.size() == 1; }) <= 1));
        CHECK(is_bipartite(g).bipartite);
    }
}

TEST_CASE("gluing a four-cycle preserves CDEs") {
    const Graph seeds[] = {cycle_graph(4), cycle_graph(8), complete_bipartite_graph(2, 4), hypercube_graph(2)};
    for (const Graph& g : seeds) {
        for (const auto& q : enumerate_cdes(g)) {
            for (Vertex k = 0; k < g.vertex_count(); ++k) {
                const Graph glued = glue_four_cycle(g, k);
                CHECK(is_cde(glued, extend_glued_labeling(q, k).phases(), 1e-12).ok);
            }
        }
    }
}

TEST_CASE("small admitting graphs") {
    // six-vertex two-hub graph with the pictured colouring
    const Graph k24 = complete_bipartite_graph(2, 4);
    CHECK(is_cde(k24, QuarterLabeling{{0, 2, 3, 1, 1, 3}, 0.0}.phases()).ok);
    CHECK_FALSE(enumerate_cdes(k24).empty());
    // seven vertices: two four-cycles sharing a vertex
    CHECK_FALSE(enumerate_cdes(glue_four_cycle(cycle_graph(4), 0)).empty());
}
