#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qvcz/closedform.hpp"
#include "qvcz/photonstats.hpp"
#include "qvcz/scenario.hpp"

namespace qvcz {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 2,
    kExitConvergenceFailure = 3,
    kExitComparisonFailure = 4,
    kExitNumericError = 5,
};

enum class OutputFormat { Csv, Json };

struct ElementSample {
    ElementIndex element;
    Complex numeric;
    Complex closed;

    double abs_err() const { return std::abs(numeric - closed); }
};

struct SweepRecord {
    double nu = 0.0;
    std::vector<ElementSample> samples;   // scenario element order
    double quad_delta = 0.0;              // max |g(N) - g(2N)| over the selected elements
    bool converged = true;
};

/// One record per ν, ascending, elements in basis order. ν points are
/// evaluated with OpenMP when `parallel` is set; the output is identical.
std::vector<SweepRecord> run_sweep(const Scenario& scenario, bool parallel = true);

void write_sweep(std::ostream& out, const std::vector<SweepRecord>& records, OutputFormat format);

struct ElementComparison {
    ElementIndex element;
    double max_abs_err = 0.0;
    double worst_nu = 0.0;
    double max_quad_delta = 0.0;
    bool pass = true;
    double printed_max_abs_err = -1.0;   // horizontal source only
};

struct CompareReport {
    SourceKind source = SourceKind::UnpolarizedTwoMode;
    int nodes = 0;
    double tolerance = 0.0;
    std::vector<ElementComparison> elements;
    int unconverged_points = 0;
    bool pass = true;
    std::vector<std::string> notes;
};

CompareReport run_compare(const Scenario& scenario);
void write_compare(std::ostream& out, const CompareReport& report, OutputFormat format);

struct StatsRow {
    double z_over_L = 0.0;
    double x_over_L = 0.0;
    DetectorPoint point;
    PhotonDistribution distribution;
    double g2 = 0.0;
};

std::vector<StatsRow> run_stats(const Scenario& scenario);
void write_stats(std::ostream& out, const std::vector<StatsRow>& rows, int display_cutoff, OutputFormat format);

struct ResurrectionReport {
    ElementIndex element;
    SourceKind source = SourceKind::UnpolarizedTwoMode;
    Interval interval;
    Extremum kind = Extremum::Maximum;
    ExtremumLocation location;
};

ResurrectionReport run_resurrection(const Scenario& scenario, Extremum kind = Extremum::Maximum);
void write_resurrection(std::ostream& out, const ResurrectionReport& report, OutputFormat format);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qvcz
