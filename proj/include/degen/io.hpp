#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "degen/degeneracy.hpp"
#include "degen/dynamics.hpp"
#include "degen/experiments.hpp"
#include "degen/graph.hpp"

namespace degen {

inline constexpr const char* kFormatVersion = "degen-kuramoto/1";

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line;  // 0 when not tied to a line
};

// A graph plus the optional state and parameters that travel with it.
// Angles are radians; quarter labels are kept as integers.
struct GraphDocument {
    Graph graph;
    std::vector<std::string> names;  // empty: vertices are named by id
    std::optional<std::vector<double>> phases;
    std::optional<QuarterLabeling> labeling;
    std::optional<std::vector<double>> frequencies;
    std::optional<double> coupling;
    std::optional<nlohmann::json> report;

    friend bool operator==(const GraphDocument&, const GraphDocument&) = default;
};

// Lines of "u v"; '#' starts a comment. Vertex names are the distinct tokens,
// sorted numerically when all are integers and lexicographically otherwise.
GraphDocument parse_edge_list(std::string_view text);

GraphDocument parse_json_document(std::string_view text);

// Dispatches on the first non-blank character ('{' means JSON).
GraphDocument parse_document(std::string_view text);

// Sorted keys, two-space indentation, scalar arrays on one line and doubles
// printed with 17 significant digits.
std::string canonical_json(const nlohmann::json& value);

nlohmann::json to_json(const GraphDocument& doc);
std::string emit_json(const GraphDocument& doc);

nlohmann::json to_json(const RarityReport& report);
nlohmann::json to_json(const EscapeReport& report);
nlohmann::json to_json(const QuarterLabeling& q);

std::string sweep_csv(std::span<const SweepRow> rows);

// Header t,theta_0..theta_{N-1},E then one row per snapshot.
std::string trace_csv(const SimulationTrace& trace);

struct Layout {
    enum class Kind { Circular, Hypercube, Provided };
    Kind kind = Kind::Circular;
    std::vector<std::pair<double, double>> coordinates;  // Provided only

    static Layout circular() { return {}; }
    static Layout hypercube() { return {Kind::Hypercube, {}}; }
    static Layout provided(std::vector<std::pair<double, double>> xy) { return {Kind::Provided, std::move(xy)}; }
};

// Quarter-turn palette, indexed by label.
inline constexpr const char* kQuarterColors[4] = {"#1f77b4", "#2ca02c", "#d62728", "#f2c80f"};

// Lattice phases (multiples of pi/2 within 1e-6) use the four-colour palette;
// anything else is placed on a continuous hue wheel and the legend says so.
std::string render_svg(const Graph& g, std::span<const double> theta, const Layout& layout = Layout::circular());
std::string render_svg(const Graph& g, const QuarterLabeling& q, const Layout& layout = Layout::circular());

}  // namespace degen
