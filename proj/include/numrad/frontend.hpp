#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "numrad/bounds.hpp"

namespace numrad {

/// Upper bounds may undershoot w.lo, and lower bounds overshoot w.hi, by at
/// most this much before they count as violations.
inline constexpr double kSoundnessSlack = 1e-7;

struct Violation {
    std::string name;
    double margin = 0.0;  // negative: how far past the enclosure the bound lies
};

struct BoundsReport {
    std::string matrix_name;
    int dim = 0;
    Enclosure w;
    std::vector<BoundRecord> records;
    std::string sharpest_upper;
    std::vector<Violation> violations;

    /// Throws std::out_of_range for unknown names.
    const BoundRecord& record(std::string_view name) const;
    double value(std::string_view name) const { return record(name).value; }
};

/// Every bound for one operator, checked against an enclosure of w of width
/// `width_target`. Records come in a fixed order (see summary_csv_header()).
BoundsReport compare_all(const ComplexMatrix& m, const TGrid& g, double width_target = 1e-8,
                         std::string name = "");

std::string summary_csv_header();
std::string summary_csv_row(const BoundsReport& r);
std::string report_json(const BoundsReport& r);
std::string report_table(const BoundsReport& r);

struct EnsembleRun {
    std::vector<BoundsReport> reports;
    std::vector<std::string> rows;  // summary CSV rows, no header
};

EnsembleRun run_ensemble(const EnsembleConfig& cfg, const TGrid& g, double width_target = 1e-8);

struct ReproCheck {
    std::string label;
    double expected = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// The worked-example numbers for fixtures A..E. Failures are reported, not
/// thrown.
std::vector<ReproCheck> reproduce_paper();
std::string repro_table(const std::vector<ReproCheck>& checks);

}  // namespace numrad
