#include "report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace divlab::tools {

Check& ExperimentReport::add_check(std::string name, std::optional<double> lo,
                                   std::optional<double> hi, double observed) {
    Check c;
    c.name = std::move(name);
    c.band_lo = lo;
    c.band_hi = hi;
    c.observed = observed;
    c.pass = !std::isnan(observed) && (!lo || observed >= *lo) &&
             (!hi || observed <= *hi);
    checks.push_back(std::move(c));
    return checks.back();
}

bool ExperimentReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

ordered_json ExperimentReport::to_json() const {
    ordered_json j;
    j["command"] = command;
    j["tool_version"] = version;
    j["params"] = params;
    if (seed) j["seed"] = *seed;
    if (timings) {
        j["started"] = started;
        j["finished"] = finished;
    }
    j["results"] = results;
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["band"]["lo"] = c.band_lo ? ordered_json(*c.band_lo) : ordered_json(nullptr);
        jc["band"]["hi"] = c.band_hi ? ordered_json(*c.band_hi) : ordered_json(nullptr);
        jc["observed"] = c.observed;
        jc["pass"] = c.pass;
        arr.push_back(std::move(jc));
    }
    j["checks"] = std::move(arr);
    return j;
}

std::string ExperimentReport::dump() const { return to_json().dump(2) + "\n"; }

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string now_rfc3339() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace divlab::tools
