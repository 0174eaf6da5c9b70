#include "degen/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "degen/io.hpp"

namespace degen {

namespace {

using nlohmann::json;

struct Options {
    std::string input;
    std::string output;
    std::string phases;
    std::string labels;
    std::string circuit;
    std::string direction;
    std::string frequencies;
    std::string layout = "circular";
    std::string family;
    std::string params;
    std::string seed_graph = "c4";
    double base = 0.0;
    double coupling = 0.0;
    double tol = kDefaultDetectionTolerance;
    double dt = kDefaultTimeStep;
    double epsilon = 0.5;
    double x0 = 1e-3;
    double p = 0.5;
    std::size_t steps = 1000;
    std::size_t max_steps = 1'000'000;
    std::size_t budget = 1'000'000;
    std::size_t n = 12;
    std::size_t samples = 500;
    std::uint64_t seed = 0;
};

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_reals(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    return values;
}

std::vector<std::size_t> parse_indices(const std::string& text, const char* what) {
    std::vector<std::size_t> values;
    for (double x : parse_reals(text, what)) {
        if (x < 0 || x != std::floor(x)) throw DomainError(std::string(what) + " must be non-negative integers");
        values.push_back(static_cast<std::size_t>(x));
    }
    return values;
}

// "3..12" or "3,4,8"
std::vector<std::size_t> parse_range(const std::string& text) {
    if (auto dots = text.find(".."); dots != std::string::npos) {
        const auto lo = parse_indices(text.substr(0, dots), "--params");
        const auto hi = parse_indices(text.substr(dots + 2), "--params");
        if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) throw DomainError("bad --params range '" + text + "'");
        std::vector<std::size_t> out;
        for (std::size_t v = lo[0]; v <= hi[0]; ++v) out.push_back(v);
        return out;
    }
    return parse_indices(text, "--params");
}

GraphDocument load_input(const Options& o) {
    if (o.input.empty()) throw DomainError("--input is required");
    std::ifstream file(o.input);
    if (!file) throw DomainError("cannot read input file '" + o.input + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    GraphDocument doc = parse_document(buffer.str());
    const std::size_t n = doc.graph.vertex_count();
    if (!o.phases.empty()) {
        doc.phases = parse_reals(o.phases, "--phases");
        if (doc.phases->size() != n) throw DomainError("--phases needs " + std::to_string(n) + " values");
    }
    if (!o.labels.empty()) {
        QuarterLabeling q;
        for (std::size_t l : parse_indices(o.labels, "--labels")) {
            if (l > 3) throw DomainError("--labels entries must be in 0..3");
            q.labels.push_back(static_cast<int>(l));
        }
        if (q.labels.size() != n) throw DomainError("--labels needs " + std::to_string(n) + " values");
        q.base = o.base;
        doc.labeling = std::move(q);
    }
    if (!o.frequencies.empty()) {
        doc.frequencies = parse_reals(o.frequencies, "--frequencies");
        if (doc.frequencies->size() != n) throw DomainError("--frequencies needs " + std::to_string(n) + " values");
    }
    if (o.coupling > 0.0) doc.coupling = o.coupling;
    return doc;
}

OscillatorSystem system_of(const GraphDocument& doc) {
    if (!doc.frequencies && !doc.coupling) return OscillatorSystem(doc.graph);
    return OscillatorSystem(doc.graph, doc.coupling.value_or(1.0),
                            doc.frequencies.value_or(std::vector<double>(doc.graph.vertex_count(), 0.0)));
}

std::vector<double> state_of(const GraphDocument& doc) {
    if (doc.phases) return *doc.phases;
    if (doc.labeling) return doc.labeling->phases().values();
    throw DomainError("no state given: pass --phases, --labels or include them in the JSON input");
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.output);
    if (!file) throw DomainError("cannot write output file '" + o.output + "'");
    file << text;
}

void cmd_detect(const Options& o, std::ostream& out) {
    const GraphDocument doc = load_input(o);
    const auto theta = state_of(doc);
    json result;
    CdeCheck check;
    if (doc.frequencies || doc.coupling) {
        const auto nonid = is_cde_nonidentical(system_of(doc), theta, o.tol);
        check = nonid.check;
        result["ratios"] = nonid.ratios;
        result["ratios_integral"] = nonid.all_ratios_integral;
    } else {
        check = is_cde(doc.graph, theta, o.tol);
    }
    result["cde"] = check.ok;
    result["reason"] = check.reason;
    if (check.vertex) result["vertex"] = *check.vertex;
    if (check.neighbor) result["neighbor"] = *check.neighbor;
    if (!check.ok) {
        if (auto tri = contains_triangle(doc.graph)) {
            result["triangle"] = *tri;
            result["note"] = "the graph contains a triangle; quarter-turn offsets cannot close a 3-cycle, so no CDE exists";
        }
    }
    emit(o, out, canonical_json(result));
}

void cmd_enumerate(const Options& o, std::ostream& out) {
    const GraphDocument doc = load_input(o);
    std::vector<QuarterLabeling> all;
    try {
        all = enumerate_cdes(doc.graph, {o.budget});
    } catch (const SearchBudgetExceeded& e) {
        throw DomainError(e.what());
    }
    json cdes = json::array();
    for (const auto& q : all) cdes.push_back(to_json(q));
    json result = to_json(GraphDocument{doc.graph, doc.names, {}, {}, {}, {}, {}});
    result["cdes"] = std::move(cdes);
    result["count"] = all.size();
    emit(o, out, canonical_json(result));
}

void cmd_circuit(const Options& o, std::ostream& out) {
    const GraphDocument doc = load_input(o);
    json result;
    if (!o.circuit.empty()) {
        const EulerCircuit c{parse_indices(o.circuit, "--circuit")};
        const Mod4Check mod4 = check_mod4_circuit(c);
        result["mod4"] = mod4.ok;
        if (!mod4.ok) {
            result["witness"] = {{"vertex", *mod4.vertex}, {"positions", {mod4.first_position, mod4.second_position}}};
        }
        try {
            const QuarterLabeling q = circuit_to_phases(doc.graph, c, o.base);
            result["quarter_labels"] = q.labels;
            result["base"] = q.base;
            result["cde"] = is_cde(doc.graph, q.phases(), o.tol).ok;
        } catch (const InconsistentLabeling& e) {
            throw DomainError(e.what());
        }
    } else {
        QuarterLabeling q;
        if (doc.labeling) {
            q = *doc.labeling;
        } else if (auto found = first_cde(doc.graph, {o.budget})) {
            q = *found;
        } else {
            throw DomainError("graph admits no completely degenerate equilibrium");
        }
        const EulerCircuit c = phases_to_circuit(doc.graph, q);
        result["circuit"] = c.vertices;
        result["steps"] = c.steps();
        result["mod4"] = check_mod4_circuit(c).ok;
        result["quarter_labels"] = q.labels;
    }
    emit(o, out, canonical_json(result));
}

void cmd_construct(const Options& o, std::ostream& out) {
    const GraphDocument doc = load_input(o);
    const double k = doc.coupling.value_or(1.0);
    const auto made = construct_nonidentical_cde(doc.graph, k);
    json result;
    if (made.realizable) {
        GraphDocument outdoc{doc.graph, doc.names, made.phases.values(), {}, made.frequencies, k, {}};
        result = to_json(outdoc);
        result["realizable"] = true;
    } else {
        result = to_json(GraphDocument{doc.graph, doc.names, {}, {}, {}, {}, {}});
        result["realizable"] = false;
        result["odd_cycle"] = made.odd_cycle;
    }
    emit(o, out, canonical_json(result));
}

void cmd_simulate(const Options& o, std::ostream& out) {
    const GraphDocument doc = load_input(o);
    std::vector<double> theta0;
    if (doc.phases || doc.labeling) {
        theta0 = state_of(doc);
    } else {
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        theta0.resize(doc.graph.vertex_count());
        for (double& x : theta0) x = angle(rng);
    }
    emit(o, out, trace_csv(integrate(system_of(doc), theta0, o.dt, o.steps)));
}

void cmd_probe(const Options& o, std::ostream& out) {
    const GraphDocument doc = load_input(o);
    const ProbeOptions popts{o.x0, o.epsilon, o.dt, o.max_steps};
    EscapeReport report;
    if (o.direction.empty()) {
        if (!doc.labeling) throw DomainError("without --direction the probe needs a CDE given by --labels");
        if (doc.frequencies || doc.coupling) throw DomainError("the automatic saddle direction applies to identical oscillators");
        report = probe_cde(doc.graph, *doc.labeling, popts);
    } else {
        const auto direction = parse_reals(o.direction, "--direction");
        report = instability_probe(system_of(doc), state_of(doc), direction, popts);
    }
    emit(o, out, canonical_json(to_json(report)));
}

void cmd_rarity(const Options& o, std::ostream& out) {
    if (!(o.p >= 0.0 && o.p <= 1.0)) throw DomainError("--p must lie in [0, 1]");
    if (o.samples < 1) throw DomainError("--samples must be at least 1");
    emit(o, out, canonical_json(to_json(rarity_experiment(o.n, o.p, o.samples, o.seed, {o.budget}))));
}

void cmd_sweep(const Options& o, std::ostream& out) {
    SweepSpec spec{o.family, parse_range(o.params), o.seed_graph};
    emit(o, out, sweep_csv(family_sweep(spec, {o.budget})));
}

void cmd_render(const Options& o, std::ostream& out) {
    const GraphDocument doc = load_input(o);
    Layout layout;
    if (o.layout == "hypercube") layout = Layout::hypercube();
    else if (o.layout != "circular") throw DomainError("unknown layout '" + o.layout + "'");
    emit(o, out, render_svg(doc.graph, state_of(doc), layout));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Completely degenerate equilibria of phase-oscillator networks"};
    app.require_subcommand(1);
    Options o;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", o.input, "edge list or degen-kuramoto/1 JSON document");
        sub->add_option("--output", o.output, "write the result here instead of stdout");
    };
    auto add_state = [&](CLI::App* sub) {
        sub->add_option("--phases", o.phases, "comma-separated phases in radians");
        sub->add_option("--labels", o.labels, "comma-separated quarter labels 0..3");
        sub->add_option("--base", o.base, "base phase for --labels");
    };
    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--frequencies", o.frequencies, "comma-separated intrinsic frequencies");
        sub->add_option("--coupling", o.coupling, "coupling strength K > 0");
    };

    auto* detect = app.add_subcommand("detect", "test whether a state is a completely degenerate equilibrium");
    add_input(detect);
    add_state(detect);
    add_params(detect);
    detect->add_option("--tol", o.tol, "detection tolerance");

    auto* enumerate = app.add_subcommand("enumerate", "list all CDEs modulo rotation as JSON");
    add_input(enumerate);
    enumerate->add_option("--budget", o.budget, "search node budget");

    auto* circuit = app.add_subcommand("circuit", "convert between CDEs and mod-4 Euler circuits");
    add_input(circuit);
    add_state(circuit);
    circuit->add_option("--circuit", o.circuit, "comma-separated closed vertex sequence");
    circuit->add_option("--budget", o.budget, "search node budget");
    circuit->add_option("--tol", o.tol, "detection tolerance");

    auto* construct = app.add_subcommand("construct-nonidentical", "frequencies realising a CDE on a bipartite graph");
    add_input(construct);
    construct->add_option("--coupling", o.coupling, "coupling strength K > 0");

    auto* simulate = app.add_subcommand("simulate", "RK4 trajectory as CSV");
    add_input(simulate);
    add_state(simulate);
    add_params(simulate);
    simulate->add_option("--dt", o.dt, "time step");
    simulate->add_option("--steps", o.steps, "number of steps");
    simulate->add_option("--seed", o.seed, "seed for a random initial state");

    auto* probe = app.add_subcommand("probe", "escape test from an equilibrium");
    add_input(probe);
    add_state(probe);
    add_params(probe);
    probe->add_option("--direction", o.direction, "comma-separated perturbation direction");
    probe->add_option("--x0", o.x0, "perturbation size");
    probe->add_option("--epsilon", o.epsilon, "escape radius (rad)");
    probe->add_option("--dt", o.dt, "time step");
    probe->add_option("--steps", o.max_steps, "step budget");

    auto* rarity = app.add_subcommand("rarity", "Monte Carlo frequency of CDE-admitting G(n, p) graphs");
    rarity->add_option("--n", o.n, "vertex count");
    rarity->add_option("--p", o.p, "edge probability");
    rarity->add_option("--samples", o.samples, "number of graphs");
    rarity->add_option("--seed", o.seed, "experiment seed");
    rarity->add_option("--budget", o.budget, "search node budget per sample");
    rarity->add_option("--output", o.output, "write the result here instead of stdout");

    auto* sweep = app.add_subcommand("sweep", "degeneracy table over a graph family as CSV");
    sweep->add_option("--family", o.family, "cycle, hypercube or glue-chain")->required();
    sweep->add_option("--params", o.params, "range a..b or list a,b,c")->required();
    sweep->add_option("--seed-graph", o.seed_graph, "glue-chain seed: c4, k24, c8, ...");
    sweep->add_option("--budget", o.budget, "search node budget");
    sweep->add_option("--output", o.output, "write the result here instead of stdout");

    auto* render = app.add_subcommand("render", "SVG drawing coloured by phase");
    add_input(render);
    add_state(render);
    render->add_option("--layout", o.layout, "circular or hypercube");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (*detect) cmd_detect(o, out);
        else if (*enumerate) cmd_enumerate(o, out);
        else if (*circuit) cmd_circuit(o, out);
        else if (*construct) cmd_construct(o, out);
        else if (*simulate) cmd_simulate(o, out);
        else if (*probe) cmd_probe(o, out);
        else if (*rarity) cmd_rarity(o, out);
        else if (*sweep) cmd_sweep(o, out);
        else if (*render) cmd_render(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace degen
