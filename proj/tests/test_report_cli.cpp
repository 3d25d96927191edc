#include "cli.hpp"
#include "report.hpp"

#include <divlab/parallel.hpp>

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

int run_cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv = {"divlab"};
    argv.insert(argv.end(), args.begin(), args.end());
    return divlab::tools::run((int)argv.size(), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const char* tag) {
        path = std::string("divlab_test_") + tag + "_" +
               std::to_string((unsigned long)::getpid()) + ".tmp";
    }
    ~TempFile() { std::remove(path.c_str()); }
};

// Structural contract every JSON report obeys; mirrors docs/report.schema.json.
void check_report_shape(const json& r) {
    REQUIRE(r.is_object());
    REQUIRE(r.contains("command"));
    REQUIRE(r["command"].is_string());
    REQUIRE(r.contains("tool_version"));
    REQUIRE(r.contains("params"));
    REQUIRE(r["params"].is_object());
    REQUIRE(r.contains("results"));
    REQUIRE(r.contains("checks"));
    REQUIRE(r["checks"].is_array());
    for (auto& c : r["checks"]) {
        REQUIRE(c.contains("name"));
        REQUIRE(c.contains("band"));
        REQUIRE(c["band"].contains("lo"));
        REQUIRE(c["band"].contains("hi"));
        REQUIRE(c.contains("observed"));
        REQUIRE(c.contains("pass"));
        REQUIRE(c["pass"].is_boolean());
    }
}

}  // namespace

TEST_CASE("sieve CSV output is the exact golden table") {
    TempFile tmp("sieve");
    int rc = run_cli({"sieve", "--lo", "1", "--hi", "13", "--kind", "d",
                      "--format", "csv", "--out", tmp.path.c_str()});
    CHECK(rc == 0);
    CHECK(slurp(tmp.path) ==
          "n,value\n1,1\n2,2\n3,2\n4,3\n5,2\n6,4\n7,2\n8,4\n9,3\n10,4\n11,2\n12,6\n");
}

TEST_CASE("delta JSON report carries the exact divisor sum and shape") {
    TempFile tmp("delta");
    int rc = run_cli({"delta", "--x", "4", "--out", tmp.path.c_str()});
    CHECK(rc == 0);
    auto r = json::parse(slurp(tmp.path));
    check_report_shape(r);
    CHECK(r["command"] == "delta");
    CHECK(r["results"]["exact_sum"] == 8);
    CHECK(r["results"].contains("delta"));
    // Timestamps only appear under --timings.
    CHECK_FALSE(r.contains("started"));
    TempFile tmp2("delta_t");
    run_cli({"--timings", "delta", "--x", "4", "--out", tmp2.path.c_str()});
    auto r2 = json::parse(slurp(tmp2.path));
    CHECK(r2.contains("started"));
    CHECK(r2.contains("finished"));
}

TEST_CASE("reports are byte-identical across thread counts") {
    for (auto spec : {std::vector<const char*>{"shortint", "--T", "100000", "--H",
                                               "100000", "--U", "50", "--stat",
                                               "integral"},
                      std::vector<const char*>{"sumiter", "--x", "200000", "--k", "2"},
                      std::vector<const char*>{"erdos-short", "--samples", "100",
                                               "--window", "1000000", "--regime",
                                               "super", "--c", "2.0"}}) {
        std::string first;
        for (const char* threads : {"1", "4", "8"}) {
            TempFile tmp("det");
            std::vector<const char*> argv = {"divlab", "--threads", threads, "--out",
                                             tmp.path.c_str()};
            argv.insert(argv.end(), spec.begin(), spec.end());
            int rc = divlab::tools::run((int)argv.size(), argv.data());
            REQUIRE(rc == 0);
            std::string body = slurp(tmp.path);
            REQUIRE(!body.empty());
            if (first.empty())
                first = body;
            else
                REQUIRE(body == first);
        }
    }
    divlab::set_max_threads(0);  // back to the default for later tests
}

TEST_CASE("exit codes: usage errors are 2, failed checks are 1") {
    CHECK(run_cli({"no-such-command"}) == 2);
    CHECK(run_cli({"sieve", "--lo", "5", "--hi", "2"}) == 2);
    CHECK(run_cli({"delta", "--x", "not-a-number"}) == 2);
    CHECK(run_cli({"sieve", "--lo", "1", "--hi", "10", "--kind", "dk:0"}) == 2);
    TempFile tmp("verify");
    CHECK(run_cli({"verify", "--profile", "quick", "--out", tmp.path.c_str()}) == 0);
    auto r = json::parse(slurp(tmp.path));
    check_report_shape(r);
    CHECK(r["results"]["checks_passed"] == r["results"]["checks_total"]);
}

TEST_CASE("count arguments accept scientific notation and reject junk") {
    TempFile tmp("sci");
    CHECK(run_cli({"sumiter", "--x", "1e4", "--k", "2", "--out", tmp.path.c_str()}) == 0);
    auto r = json::parse(slurp(tmp.path));
    CHECK(r["params"]["x"] == 10000);
    CHECK(run_cli({"sumiter", "--x", "-5", "--k", "2"}) == 2);
    CHECK(run_cli({"sumiter", "--x", "1e25", "--k", "2"}) == 2);
    CHECK(run_cli({"sumiter", "--x", "12.5", "--k", "2"}) == 2);
}

TEST_CASE("CSV numbers survive a parse round trip") {
    using divlab::tools::csv_number;
    for (double v : {3.141592653589793, 0.1, 1e-300, 12345678901234567.0, -2.5e-8}) {
        double back = std::strtod(csv_number(v).c_str(), nullptr);
        CHECK(back == v);
    }
    CHECK(csv_number(2.0) == "2");
}

TEST_CASE("voronoi grid CSV rows are ordered and within schema") {
    TempFile tmp("vg");
    int rc = run_cli({"voronoi", "--grid", "8", "--xmin", "10000", "--xmax", "20000",
                      "--N", "200", "--format", "csv", "--out", tmp.path.c_str()});
    CHECK(rc == 0);
    std::istringstream rows(slurp(tmp.path));
    std::string header;
    std::getline(rows, header);
    CHECK(header == "x,N,approx,exact,abs_err");
    double prev = 0;
    int count = 0;
    for (std::string line; std::getline(rows, line);) {
        double x = std::strtod(line.c_str(), nullptr);
        CHECK(x > prev);
        prev = x;
        ++count;
    }
    CHECK(count == 8);
}

TEST_CASE("check bands catch displaced observations") {
    using divlab::tools::ExperimentReport;
    ExperimentReport rep;
    rep.command = "probe";
    rep.add_check("inside", 1.0, 2.0, 1.5);
    rep.add_check("below", 1.0, 2.0, 0.5);
    rep.add_check("above", 1.0, 2.0, 2.5);
    rep.add_check("one_sided", 1.0, std::nullopt, 100.0);
    rep.add_check("nan_never_passes", 0.0, 1.0,
                  std::numeric_limits<double>::quiet_NaN());
    CHECK(rep.checks[0].pass);
    CHECK_FALSE(rep.checks[1].pass);
    CHECK_FALSE(rep.checks[2].pass);
    CHECK(rep.checks[3].pass);
    CHECK_FALSE(rep.checks[4].pass);
    CHECK_FALSE(rep.all_pass());
    auto j = rep.to_json();
    CHECK(j["checks"][3]["band"]["hi"].is_null());
}

TEST_CASE("failing physical check propagates exit code 1") {
    // The cubic coefficient lands outside its band at this scale; the command
    // must say so and exit 1 rather than hide it.
    TempFile tmp("c3");
    int rc = run_cli({"shortint", "--T", "1000000", "--U", "100", "--stat", "discrete",
                      "--out", tmp.path.c_str()});
    CHECK(rc == 1);
    auto r = json::parse(slurp(tmp.path));
    check_report_shape(r);
    bool some_fail = false;
    for (auto& c : r["checks"])
        if (!c["pass"].get<bool>()) some_fail = true;
    CHECK(some_fail);
}
