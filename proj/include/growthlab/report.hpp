#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "growthlab/disc_grid.hpp"

namespace growthlab {

struct Quantity {
    std::string name;
    double value = 0.0;
    std::optional<Complex> argmax;
};

struct Expectation {
    enum class Kind { Equal, AtMost };
    std::string quantity;
    double value = 0.0;
    double tol = 0.0;
    Kind kind = Kind::Equal;
    std::string note; // provenance of the pinned constant
};

struct ExpectationResult {
    Expectation expected;
    double measured = 0.0;
    bool pass = false;
};

/// Structured result of one harness run. Every expectation of the scenario
/// appears exactly once; membership-style verdicts are carried as
/// (value, trend) quantities, never as bare booleans.
struct Report {
    std::string scenario;
    std::vector<Quantity> quantities;
    std::vector<ExpectationResult> expectations;
    std::map<std::string, double> counts;
    std::map<std::string, std::string> labels; // textual outputs (conclusions, verdicts)
    int grid_rings = 0;
    double angular_factor = 0.0;
    std::string status = "ok"; // "failed" when a run aborts
    std::string error;

    bool all_pass() const;
    void add(std::string name, double value, std::optional<Complex> argmax = std::nullopt);
    /// Records the expectation result; returns pass.
    bool check(const Expectation& e, double measured);

    nlohmann::json to_json() const; // schema version 1
    static std::string csv_header();
    void append_csv(std::string& out) const;
};

/// Writes content via a temporary file plus rename, so partial output never
/// lands at the target path.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Polar heatmap of log10(values) per grid node (ring-major layout, one
/// vector per ring; angular decimation is the caller's concern).
std::string svg_heatmap(const DiscGrid& grid, const std::vector<std::vector<double>>& ring_values,
                        const std::string& title);

} // namespace growthlab
