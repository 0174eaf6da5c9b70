#include "degen/experiments.hpp"

#include <cmath>
#include <stdexcept>

namespace degen {

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval needs at least one trial");
    if (successes > trials) throw std::invalid_argument("more successes than trials");
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    const double low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
    const double high = successes == trials ? 1.0 : std::min(1.0, centre + half);
    return {low, high};
}

RarityReport rarity_experiment(std::size_t n, double p, std::size_t samples, std::uint64_t seed,
                               const EnumerationOptions& opts) {
    if (samples < 1) throw std::invalid_argument("rarity_experiment needs at least one sample");
    RarityReport report;
    report.n = n;
    report.p = p;
    report.samples = samples;
    report.seed = seed;
    report.node_budget = opts.node_budget;

    for (std::size_t i = 0; i < samples; ++i) {
        const Graph g = erdos_renyi(n, p, derive_seed(seed, i));
        if (contains_triangle(g)) ++report.triangle_samples;
        const AdmitsResult r = admits_cde(g, opts);
        switch (r.reason) {
            case AdmitsReason::Edgeless: ++report.counts.edgeless; break;
            case AdmitsReason::OddDegree: ++report.counts.odd_degree; break;
            case AdmitsReason::Triangle: ++report.counts.triangle; break;
            case AdmitsReason::NotBipartite: ++report.counts.non_bipartite; break;
            case AdmitsReason::EnumerationEmpty: ++report.counts.enumeration_empty; break;
            case AdmitsReason::BudgetExceeded: ++report.counts.budget_exceeded; break;
            case AdmitsReason::Enumerated:
                ++report.counts.admits;
                report.witnesses.push_back({i, g.edges()});
                break;
        }
    }
    report.estimate = static_cast<double>(report.counts.admits) / static_cast<double>(samples);
    const auto ci = wilson_interval(report.counts.admits, samples);
    report.ci_low = ci.low;
    report.ci_high = ci.high;
    return report;
}

Graph seed_graph(const std::string& name) {
    if (name == "k24") return complete_bipartite_graph(2, 4);
    if (name.size() > 1 && name[0] == 'c') {
        std::size_t pos = 0;
        const auto n = std::stoul(name.substr(1), &pos);
        if (pos == name.size() - 1) return cycle_graph(n);
    }
    throw std::invalid_argument("unknown seed graph '" + name + "' (expected k24 or cN)");
}

Graph family_member(const SweepSpec& spec, std::size_t parameter) {
    if (spec.family == "cycle") return cycle_graph(parameter);
    if (spec.family == "hypercube") return hypercube_graph(parameter);
    if (spec.family == "glue-chain") {
        Graph g = seed_graph(spec.seed_graph);
        Vertex anchor = 0;
        for (std::size_t i = 0; i < parameter; ++i) {
            g = glue_four_cycle(g, anchor);
            anchor = g.vertex_count() - 1;
        }
        return g;
    }
    throw std::invalid_argument("unknown family '" + spec.family + "' (expected cycle, hypercube or glue-chain)");
}

std::vector<SweepRow> family_sweep(const SweepSpec& spec, const EnumerationOptions& opts) {
    if (spec.family != "cycle" && spec.family != "hypercube" && spec.family != "glue-chain") {
        throw std::invalid_argument("unknown family '" + spec.family + "' (expected cycle, hypercube or glue-chain)");
    }
    std::vector<SweepRow> rows;
    for (std::size_t parameter : spec.parameters) {
        const Graph g = family_member(spec, parameter);
        SweepRow row;
        row.parameter = parameter;
        row.vertex_count = g.vertex_count();
        row.edge_count = g.edge_count();
        const AdmitsResult verdict = admits_cde(g, opts);
        row.admits = verdict.admits;
        row.reason = verdict.reason;
        try {
            row.cde_count = count_cdes(g, opts);
        } catch (const SearchBudgetExceeded&) {
        }
        if (row.admits && !verdict.edgeless && connected_components(g).size() == 1) {
            if (auto q = first_cde(g, opts)) row.circuit_length = phases_to_circuit(g, *q).steps();
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace degen
