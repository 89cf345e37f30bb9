#pragma once

#include "modstrip/current.hpp"
#include "modstrip/standardpair.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace modstrip {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

/// Spec document layout:
///   {
///     "domain": "disk" | "half_plane" | "strip",
///     "phase": [re, im],
///     "blaschke": [{"a": [re, im], "mult": 1}, ...],
///     "singular": [{"loc": <number or "inf">, "weight": w}, ...],
///     "generator": {"c": 0, "atoms": [{"lambda": l, "weight": w}], "c1": 0, "c2": 0},
///     "grid": {"n": 4096, "q_max": 16, "s_max": 13.0, "s_sym": 6.5},
///     "expect_fail": ["symmetry", ...]
///   }
/// Disk data stores atom locations as boundary angles; half-plane data as
/// real boundary points, with "inf" for the point at infinity.
InnerFunctionSpec inner_spec_from_json(const Json& j);
Json to_json(const InnerFunctionSpec& spec);

GeneratorSpec generator_from_json(const Json& j);
Json to_json(const GeneratorSpec& gen);

RapidityGrid rapidity_grid_from_json(const Json& j);
SubspaceHandle subspace_from_json(const Json& j);   // bands from the grid object

/// Scenario layout for the current-module suites:
///   { "phi": <inner spec>, "intervals": {"I1": [a,b], "I2": [c,d]},
///     "ell": {"kind": "bump", "support": [a,b], "charge": g},
///     "grid": {"m": 8192, "X": 12.8}, "t_values": [...] }
struct Scenario {
    InnerFunctionSpec phi;
    Interval i1, i2;
    Interval ell_support{0.5, 2.5};
    double charge = 2.0;
    SpatialGrid grid;
    std::vector<double> t_values;
    bool has_intervals = false;
    bool has_ell = false;
};

Scenario scenario_from_json(const Json& j);
SpatialGrid spatial_grid_from_json(const Json& j);

Json load_json_file(const std::string& path);   // throws ParseError

} // namespace modstrip
