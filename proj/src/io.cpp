#include "degen/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace degen {

using nlohmann::json;

namespace {

std::string format_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("cannot serialise a non-finite number");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::string fixed(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

bool is_scalar(const json& v) { return !v.is_array() && !v.is_object(); }

void write_json(const json& v, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    if (v.is_object()) {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += inner + json(it.key()).dump() + ": ";
            write_json(it.value(), out, indent + 1);
        }
        out += "\n" + pad + "}";
    } else if (v.is_array()) {
        if (std::all_of(v.begin(), v.end(), is_scalar) ||
            std::all_of(v.begin(), v.end(), [](const json& e) {
                return e.is_array() && std::all_of(e.begin(), e.end(), is_scalar) && e.size() <= 3;
            })) {
            // short rows such as edges stay on one line
            out += "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ", ";
                write_json(v[i], out, indent + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",\n";
            out += inner;
            write_json(v[i], out, indent + 1);
        }
        out += "\n" + pad + "]";
    } else if (v.is_number_float()) {
        out += format_double(v.get<double>());
    } else {
        out += v.dump();
    }
}

bool parse_unsigned(std::string_view token, unsigned long long& value) {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

std::vector<double> real_array(const json& v, const char* key, std::size_t expected) {
    if (!v.is_array()) throw ParseError(0, std::string("'") + key + "' must be an array");
    if (v.size() != expected) {
        throw ParseError(0, std::string("'") + key + "' has " + std::to_string(v.size()) + " entries, expected " +
                                std::to_string(expected));
    }
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ParseError(0, std::string("'") + key + "' must contain numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::pair<double, double> vertex_position(const Layout& layout, std::size_t k, std::size_t n) {
    switch (layout.kind) {
        case Layout::Kind::Provided:
            return layout.coordinates.at(k);
        case Layout::Kind::Hypercube: {
            // Nested squares: bits 0/1 pick the corner, bit 2 shifts the square,
            // bit 3 selects the inner or outer copy.
            const double sx = (k & 1) ? 1.0 : -1.0;
            const double sy = (k & 2) ? 1.0 : -1.0;
            const double scale = (k & 8) ? 2.5 : 1.0;
            const bool shifted = (k & 4) != 0;
            return {scale * (sx + (shifted ? 0.4 : 0.0)), -scale * (sy + (shifted ? 0.2 : 0.0))};
        }
        case Layout::Kind::Circular:
            break;
    }
    const double angle = kTwoPi * static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(n, 1));
    return {std::cos(angle), -std::sin(angle)};
}

}  // namespace

ParseError::ParseError(std::size_t l, const std::string& message)
    : std::runtime_error(l ? "line " + std::to_string(l) + ": " + message : message), line(l) {}

GraphDocument parse_edge_list(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> raw;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) tokens.push_back(t);
        if (tokens.empty()) continue;
        if (tokens.size() != 2) {
            throw ParseError(line_no, "expected two vertex tokens, found " + std::to_string(tokens.size()));
        }
        if (tokens[0] == tokens[1]) throw ParseError(line_no, "self-loop at vertex '" + tokens[0] + "'");
        raw.emplace_back(tokens[0], tokens[1]);
    }

    std::set<std::string> distinct;
    for (const auto& [a, b] : raw) {
        distinct.insert(a);
        distinct.insert(b);
    }
    std::vector<std::string> names(distinct.begin(), distinct.end());
    const bool numeric = std::all_of(names.begin(), names.end(), [](const std::string& s) {
        unsigned long long v = 0;
        return parse_unsigned(s, v);
    });
    if (numeric) {
        std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
            unsigned long long x = 0, y = 0;
            parse_unsigned(a, x);
            parse_unsigned(b, y);
            return x < y;
        });
    }
    std::map<std::string, Vertex> id;
    for (Vertex k = 0; k < names.size(); ++k) id[names[k]] = k;

    std::set<std::pair<Vertex, Vertex>> edges;
    for (const auto& [a, b] : raw) edges.insert(std::minmax(id[a], id[b]));
    std::vector<std::pair<Vertex, Vertex>> edge_list(edges.begin(), edges.end());

    GraphDocument doc;
    doc.graph = Graph(names.size(), edge_list);
    doc.names = std::move(names);
    return doc;
}

GraphDocument parse_json_document(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(0, std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParseError(0, "document must be a JSON object");
    if (root.value("format", std::string{}) != kFormatVersion) {
        throw ParseError(0, std::string("unsupported or missing format, expected \"") + kFormatVersion + "\"");
    }
    if (!root.contains("vertex_count") || !root["vertex_count"].is_number_unsigned()) {
        throw ParseError(0, "'vertex_count' must be a non-negative integer");
    }
    const std::size_t n = root["vertex_count"].get<std::size_t>();

    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : root.value("edges", json::array())) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
            throw ParseError(0, "each edge must be a pair of vertex ids");
        }
        const Vertex a = e[0].get<Vertex>();
        const Vertex b = e[1].get<Vertex>();
        if (a >= n || b >= n) throw ParseError(0, "edge references undeclared vertex");
        edges.emplace_back(a, b);
    }

    GraphDocument doc;
    try {
        doc.graph = Graph(n, edges);
    } catch (const std::exception& e) {
        throw ParseError(0, e.what());
    }
    if (root.contains("vertices")) {
        for (const auto& name : root["vertices"]) {
            if (!name.is_string()) throw ParseError(0, "'vertices' must contain strings");
            doc.names.push_back(name.get<std::string>());
        }
        if (doc.names.size() != n) throw ParseError(0, "'vertices' does not match vertex_count");
    }
    if (root.contains("phases")) doc.phases = real_array(root["phases"], "phases", n);
    if (root.contains("quarter_labels")) {
        QuarterLabeling q;
        for (const auto& l : root["quarter_labels"]) {
            if (!l.is_number_integer() || l.get<int>() < 0 || l.get<int>() > 3) {
                throw ParseError(0, "'quarter_labels' must be integers in 0..3");
            }
            q.labels.push_back(l.get<int>());
        }
        if (q.labels.size() != n) throw ParseError(0, "'quarter_labels' does not match vertex_count");
        q.base = root.value("base", 0.0);
        doc.labeling = std::move(q);
    }
    if (root.contains("frequencies")) doc.frequencies = real_array(root["frequencies"], "frequencies", n);
    if (root.contains("coupling")) {
        if (!root["coupling"].is_number() || !(root["coupling"].get<double>() > 0.0)) {
            throw ParseError(0, "'coupling' must be a positive number");
        }
        doc.coupling = root["coupling"].get<double>();
    }
    if (root.contains("report")) doc.report = root["report"];
    return doc;
}

GraphDocument parse_document(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return parse_json_document(text);
    return parse_edge_list(text);
}

std::string canonical_json(const json& value) {
    std::string out;
    write_json(value, out, 0);
    out += "\n";
    return out;
}

json to_json(const GraphDocument& doc) {
    const std::size_t n = doc.graph.vertex_count();
    auto check = [n](std::size_t size, const char* what) {
        if (size != n) throw std::invalid_argument(std::string(what) + " does not match the vertex count");
    };
    json root;
    root["format"] = kFormatVersion;
    root["vertex_count"] = n;
    json edges = json::array();
    for (const Edge& e : doc.graph.edges()) edges.push_back({e.u, e.v});
    root["edges"] = std::move(edges);
    if (!doc.names.empty()) {
        check(doc.names.size(), "vertex names");
        root["vertices"] = doc.names;
    }
    if (doc.phases) {
        check(doc.phases->size(), "phases");
        root["phases"] = *doc.phases;
    }
    if (doc.labeling) {
        check(doc.labeling->labels.size(), "quarter labels");
        root["quarter_labels"] = doc.labeling->labels;
        root["base"] = doc.labeling->base;
    }
    if (doc.frequencies) {
        check(doc.frequencies->size(), "frequencies");
        root["frequencies"] = *doc.frequencies;
    }
    if (doc.coupling) root["coupling"] = *doc.coupling;
    if (doc.report) root["report"] = *doc.report;
    return root;
}

std::string emit_json(const GraphDocument& doc) { return canonical_json(to_json(doc)); }

json to_json(const RarityReport& r) {
    json counts = {
        {"edgeless", r.counts.edgeless},
        {"odd_degree", r.counts.odd_degree},
        {"triangle", r.counts.triangle},
        {"non_bipartite", r.counts.non_bipartite},
        {"enumeration_empty", r.counts.enumeration_empty},
        {"budget_exceeded", r.counts.budget_exceeded},
        {"admits", r.counts.admits},
    };
    json witnesses = json::array();
    for (const auto& w : r.witnesses) {
        json edges = json::array();
        for (const Edge& e : w.edges) edges.push_back({e.u, e.v});
        witnesses.push_back({{"sample", w.sample}, {"edges", std::move(edges)}});
    }
    return {
        {"n", r.n},
        {"p", r.p},
        {"samples", r.samples},
        {"seed", r.seed},
        {"node_budget", r.node_budget},
        {"counts", std::move(counts)},
        {"triangle_samples", r.triangle_samples},
        {"triangle_rate", r.triangle_rate()},
        {"estimate", r.estimate},
        {"ci95", {r.ci_low, r.ci_high}},
        {"witnesses", std::move(witnesses)},
    };
}

json to_json(const EscapeReport& r) {
    return {{"escaped", r.escaped}, {"exit_time", r.exit_time}, {"max_distance", r.max_distance}, {"steps", r.steps}};
}

json to_json(const QuarterLabeling& q) { return {{"quarter_labels", q.labels}, {"base", q.base}}; }

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "parameter,vertices,edges,admits,reason,cde_count,circuit_length\n";
    for (const auto& r : rows) {
        out += std::to_string(r.parameter) + "," + std::to_string(r.vertex_count) + "," + std::to_string(r.edge_count) +
               "," + (r.admits ? "true" : "false") + "," + to_string(r.reason) + "," +
               (r.cde_count ? std::to_string(*r.cde_count) : std::string("budget")) + "," +
               (r.circuit_length ? std::to_string(*r.circuit_length) : std::string()) + "\n";
    }
    return out;
}

std::string trace_csv(const SimulationTrace& trace) {
    std::string out = "t";
    const std::size_t n = trace.states.empty() ? 0 : trace.states.front().size();
    for (std::size_t k = 0; k < n; ++k) out += ",theta_" + std::to_string(k);
    out += ",E\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        out += format_double(trace.times[i]);
        for (double x : trace.states[i].values()) out += "," + format_double(x);
        out += "," + format_double(trace.energies[i]) + "\n";
    }
    return out;
}

std::string render_svg(const Graph& g, std::span<const double> theta, const Layout& layout) {
    const std::size_t n = g.vertex_count();
    if (theta.size() != n) throw std::invalid_argument("phase vector does not match the vertex count");
    if (layout.kind == Layout::Kind::Provided && layout.coordinates.size() != n) {
        throw std::invalid_argument("layout coordinates do not match the vertex count");
    }

    constexpr double size = 400.0;
    constexpr double margin = 30.0;
    constexpr double legend_height = 60.0;
    std::vector<std::pair<double, double>> pos(n);
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    for (std::size_t k = 0; k < n; ++k) {
        pos[k] = vertex_position(layout, k, n);
        if (k == 0 || pos[k].first < min_x) min_x = pos[k].first;
        if (k == 0 || pos[k].first > max_x) max_x = pos[k].first;
        if (k == 0 || pos[k].second < min_y) min_y = pos[k].second;
        if (k == 0 || pos[k].second > max_y) max_y = pos[k].second;
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
    const double scale = (size - 2 * margin) / span;
    for (auto& [x, y] : pos) {
        x = margin + (x - min_x) * scale + 0.5 * ((size - 2 * margin) - (max_x - min_x) * scale);
        y = margin + (y - min_y) * scale + 0.5 * ((size - 2 * margin) - (max_y - min_y) * scale);
    }

    bool continuous = false;
    std::vector<std::string> fill(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double phase = wrap_phase(theta[k]);
        const double quarters = phase / kQuarterTurn;
        const double nearest = std::round(quarters);
        if (std::abs(quarters - nearest) * kQuarterTurn <= 1e-6) {
            fill[k] = kQuarterColors[static_cast<int>(nearest) % 4];
        } else {
            continuous = true;
            fill[k] = "hsl(" + fixed(360.0 * phase / kTwoPi) + ",80%,50%)";
        }
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"" + std::to_string(static_cast<int>(size + legend_height)) +
           "\" viewBox=\"0 0 400 " + std::to_string(static_cast<int>(size + legend_height)) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<g stroke=\"#333333\" stroke-width=\"1.5\">\n";
    for (const Edge& e : g.edges()) {
        svg += "<line x1=\"" + fixed(pos[e.u].first) + "\" y1=\"" + fixed(pos[e.u].second) + "\" x2=\"" +
               fixed(pos[e.v].first) + "\" y2=\"" + fixed(pos[e.v].second) + "\"/>\n";
    }
    svg += "</g>\n<g>\n";
    for (std::size_t k = 0; k < n; ++k) {
        svg += "<circle data-vertex=\"" + std::to_string(k) + "\" cx=\"" + fixed(pos[k].first) + "\" cy=\"" +
               fixed(pos[k].second) + "\" r=\"8.00\" fill=\"" + fill[k] + "\"/>\n";
    }
    svg += "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
    const char* labels[4] = {"0", "pi/2", "pi", "3pi/2"};
    for (int i = 0; i < 4; ++i) {
        const double x = 20.0 + 90.0 * i;
        svg += "<rect class=\"legend\" x=\"" + fixed(x) + "\" y=\"" + fixed(size + 8) +
               "\" width=\"12.00\" height=\"12.00\" fill=\"" + kQuarterColors[i] + "\"/>\n";
        svg += "<text x=\"" + fixed(x + 18) + "\" y=\"" + fixed(size + 18) + "\">" + labels[i] + "</text>\n";
    }
    if (continuous) {
        svg += "<text x=\"20.00\" y=\"" + fixed(size + 42) +
               "\">off-lattice phases: hue = phase / 2pi around the colour wheel</text>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

std::string render_svg(const Graph& g, const QuarterLabeling& q, const Layout& layout) {
    return render_svg(g, q.phases(), layout);
}

}  // namespace degen
