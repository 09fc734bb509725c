#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qvcz/closedform.hpp"
#include "qvcz/core.hpp"
#include "qvcz/grating.hpp"
#include "qvcz/quadrature.hpp"

namespace qvcz {

struct Range {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    /// start, start+step, ... up to stop inclusive (with a 1e-9·step slack).
    std::vector<double> values() const;
    friend bool operator==(const Range&, const Range&) = default;
};

/// Dimensional sweep: ν = L·ΔX/(λz) for each ΔX. Lengths in units of L.
struct GeometrySweep {
    double lambda = 1e-3;
    double z = 1.0;
    Range delta_x;
    friend bool operator==(const GeometrySweep&, const GeometrySweep&) = default;
};

struct StatsConfig {
    double x = 0.4;                                                   // units of L
    std::vector<double> z = {0, 50, 100, 150, 200, 250, 300, 350};    // units of L
    double total_mean_photons = 2.0;
    int n_max = 64;
    int display_cutoff = 10;
    int source_samples = 8192;
    friend bool operator==(const StatsConfig&, const StatsConfig&) = default;
};

/// Everything a CLI run needs. Distances are stored in units of the grating
/// length L; `L` itself is the absolute length that bare numbers refer to.
struct Scenario {
    SourceKind source = SourceKind::UnpolarizedTwoMode;
    std::vector<ElementIndex> elements;   // basis order; all 16 by default
    Range nu{0.0, 4.0, 0.05};
    std::optional<GeometrySweep> geometry;
    QuadratureSpec quadrature;
    double compare_tol = 1e-6;
    double L = 1.0;
    double lambda = 1e-3;                 // units of L
    StatsConfig stats;
    ElementIndex search_element = ElementIndex::parse("VHHV");
    Interval search{1.2, 2.0};

    Scenario();

    /// ν grid, from the geometry sweep when present.
    std::vector<double> nu_values() const;

    /// Throws ConfigError if any invariant fails.
    void validate() const;

    bool operator==(const Scenario& other) const;
};

/// Parses the flat `key = value` format. Comments start with '#'.
/// Dimensional values accept an `L` suffix (`z = 350 L`); bare numbers are
/// absolute lengths in the same units as `L`. Errors carry line and field.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

/// Canonical text form; parse_scenario(dump_scenario(s)) == s.
std::string dump_scenario(const Scenario& s);

std::vector<ElementIndex> parse_element_list(std::string_view text);
Range parse_range(std::string_view text);

}  // namespace qvcz
