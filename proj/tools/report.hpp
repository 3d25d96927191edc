#pragma once

#include <optional>
#include <string>
#include <vector>

#include "divlab/common.hpp"
#include "json.hpp"

namespace divlab::tools {

// Insertion-ordered JSON keeps report field order stable across runs.
using ordered_json = nlohmann::ordered_json;

struct Check {
    std::string name;
    std::optional<double> band_lo;  // closed interval; absent side is unbounded
    std::optional<double> band_hi;
    double observed = 0;
    bool pass = false;
};

struct ExperimentReport {
    std::string command;
    ordered_json params = ordered_json::object();
    std::optional<u64> seed;
    ordered_json results = ordered_json::object();
    std::vector<Check> checks;
    bool timings = false;  // wall-clock fields are opt-in; default reports
    std::string started;   // stay bit-identical across re-runs
    std::string finished;

    Check& add_check(std::string name, std::optional<double> lo,
                     std::optional<double> hi, double observed);
    bool all_pass() const;
    ordered_json to_json() const;
    std::string dump() const;  // to_json, 2-space indent, trailing newline
};

// %.17g, the shortest fixed form that round-trips a double.
std::string csv_number(double v);

std::string now_rfc3339();

// Writes to the path, or stdout when the path is empty.
void write_output(const std::string& text, const std::string& out_path);

}  // namespace divlab::tools
