#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "battery.hpp"
#include "divlab/iterate.hpp"
#include "divlab/main_term.hpp"
#include "divlab/parallel.hpp"
#include "divlab/prefix.hpp"
#include "divlab/shifted.hpp"
#include "divlab/short_interval.hpp"
#include "divlab/sieve.hpp"
#include "divlab/voronoi.hpp"
#include "report.hpp"

namespace divlab::tools {
namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Counts may be written as plain integers or integral scientific notation
// ("1e6"); anything fractional or negative is a usage error.
u64 parse_count(const std::string& text, const char* flag) {
    char* end = nullptr;
    long double v = strtold(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !(v >= 0) || v != floorl(v) ||
        v > 9.2e18L)
        throw usage_error(std::string(flag) + ": expected a nonnegative integer, got '" +
                          text + "'");
    return static_cast<u64>(v);
}

FuncKind parse_kind(const std::string& text, const char* flag) {
    if (text == "d") return FuncKind{func_tag::dk, 2};
    if (text == "omega") return FuncKind{func_tag::omega, 0};
    if (text == "bigomega") return FuncKind{func_tag::bigomega, 0};
    if (text.rfind("dk:", 0) == 0) {
        u64 k = parse_count(text.substr(3), flag);
        if (k >= 1 && k <= 100) return FuncKind{func_tag::dk, static_cast<int>(k)};
    }
    throw usage_error(std::string(flag) + ": expected d, dk:K, omega or bigomega, got '" +
                      text + "'");
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t next = std::min({row[j] + 1, row[j - 1] + 1,
                                         diag + (a[i - 1] != b[j - 1] ? 1 : 0)});
            diag = row[j];
            row[j] = next;
        }
    }
    return row[b.size()];
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{
        "sieve",   "delta",   "delta-meansq", "voronoi",     "shifted",
        "shifted-fit", "avg-delta3", "shortint", "iterate",  "records",
        "sumiter", "ivic",    "erdos-short",  "dkplus",      "verify"};
    return names;
}

std::string suggest_command(const std::string& given) {
    std::string best;
    std::size_t best_d = 4;  // suggest only close misses
    for (const auto& name : command_names()) {
        std::size_t d = edit_distance(given, name);
        if (d < best_d) {
            best_d = d;
            best = name;
        }
    }
    return best;
}

struct GlobalOpts {
    int threads = 0;
    std::string out;
    std::string format = "auto";
    u64 seed = 1;
    bool timings = false;
};

// "auto" resolves to the command's natural serialization.
std::string resolve_format(const GlobalOpts& g, const std::string& command,
                           bool has_csv) {
    std::string f = g.format;
    if (f == "auto") f = (command == "sieve" || command == "voronoi") ? "csv" : "json";
    if (f == "csv" && !has_csv)
        throw usage_error(command + ": no CSV form; use --format json");
    return f;
}

int emit_report(ExperimentReport& rep, const GlobalOpts& g) {
    if (rep.timings) rep.finished = now_rfc3339();
    write_output(rep.dump(), g.out);
    return rep.all_pass() ? 0 : 1;
}

int emit_csv(const std::string& text, const GlobalOpts& g) {
    write_output(text, g.out);
    return 0;
}

ordered_json stat_json(const ShortIntervalStat& st) {
    ordered_json j;
    j["T"] = st.T;
    j["H"] = st.H;
    j["U"] = st.U;
    j["mode"] = interval_stat_mode_name(st.mode);
    j["mean_square"] = st.mean_square;
    return j;
}

int run_sieve(const GlobalOpts& g, bool timings, const std::string& kind_s,
              const std::string& lo_s, const std::string& hi_s,
              const std::string& block_s) {
    FuncKind kind = parse_kind(kind_s, "--kind");
    u64 lo = parse_count(lo_s, "--lo");
    u64 hi = parse_count(hi_s, "--hi");
    u64 block = block_s.empty() ? default_block_size : parse_count(block_s, "--block");
    if (lo < 1 || hi <= lo) throw usage_error("sieve: need 1 <= lo < hi");
    if (block < 1) throw usage_error("sieve: --block must be positive");
    std::string fmt = resolve_format(g, "sieve", true);
    if (fmt == "csv") {
        std::string csv = "n,value\n";
        for_each_block(lo, hi, kind, block, [&](const DivisorBlock& b) {
            for (u64 n = b.lo; n < b.hi; ++n) {
                csv += std::to_string(n);
                csv += ',';
                csv += std::to_string(b.values[n - b.lo]);
                csv += '\n';
            }
        });
        return emit_csv(csv, g);
    }
    ExperimentReport rep;
    rep.command = "sieve";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"kind", kind_s}, {"lo", lo}, {"hi", hi}, {"block", block}};
    rep.results["values"] = sieve_values(lo, hi, kind, block);
    return emit_report(rep, g);
}

int run_delta(const GlobalOpts& g, bool timings, int k, double x) {
    resolve_format(g, "delta", false);
    ExperimentReport rep;
    rep.command = "delta";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"k", k}, {"x", x}};
    auto s = delta_k(x, k);
    rep.results = {{"x", s.x}, {"exact_sum", s.exact_sum}, {"main", s.main},
                   {"delta", s.delta}};
    return emit_report(rep, g);
}

int run_delta_meansq(const GlobalOpts& g, bool timings, int k, double X,
                     const std::string& mode_s, const std::string& samples_s) {
    resolve_format(g, "delta-meansq", false);
    integration_mode mode;
    if (mode_s == "exact")
        mode = integration_mode::exact;
    else if (mode_s == "sampled")
        mode = integration_mode::sampled;
    else
        throw usage_error("delta-meansq: --mode must be exact or sampled");
    u64 samples = samples_s.empty() ? 100000 : parse_count(samples_s, "--samples");
    ExperimentReport rep;
    rep.command = "delta-meansq";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"k", k}, {"X", X}, {"mode", mode_s}, {"samples", samples}};
    rep.results = {{"k", k}, {"X", X}, {"mode", mode_s},
                   {"mean_square", mean_square_delta(k, X, mode, samples)}};
    return emit_report(rep, g);
}

int run_voronoi(const GlobalOpts& g, bool timings, const std::string& x_s,
                const std::string& N_s, const std::string& grid_s, double xmin,
                double xmax) {
    u64 N = parse_count(N_s, "--N");
    bool grid_mode = !grid_s.empty();
    if (grid_mode == !x_s.empty())
        throw usage_error("voronoi: give either --x or --grid with --xmin/--xmax");
    std::vector<VoronoiEval> evals;
    auto tab = sieve_values(1, N + 1, FuncKind{});
    if (grid_mode) {
        u64 count = parse_count(grid_s, "--grid");
        if (count < 1 || xmin < 2 || xmax <= xmin)
            throw usage_error("voronoi: need --grid >= 1 and 2 <= xmin < xmax");
        DivisorPrefix prefix(static_cast<u64>(xmax) + 1);
        evals = voronoi_grid(xmin, xmax, count, N, tab, prefix);
    } else {
        double x = strtod(x_s.c_str(), nullptr);
        if (!(x >= 2)) throw usage_error("voronoi: need x >= 2");
        DivisorPrefix prefix(static_cast<u64>(x) + 1);
        evals.push_back(delta_voronoi(x, N, tab, prefix));
    }
    std::string fmt = resolve_format(g, "voronoi", true);
    if (fmt == "csv") {
        std::string csv = "x,N,approx,exact,abs_err\n";
        for (const auto& e : evals) {
            csv += csv_number(e.x);
            csv += ',';
            csv += std::to_string(e.trunc_n);
            csv += ',';
            csv += csv_number(e.approx);
            csv += ',';
            csv += csv_number(e.exact);
            csv += ',';
            csv += csv_number(e.abs_err);
            csv += '\n';
        }
        return emit_csv(csv, g);
    }
    ExperimentReport rep;
    rep.command = "voronoi";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params["N"] = N;
    if (grid_mode) {
        rep.params["grid"] = evals.size();
        rep.params["xmin"] = xmin;
        rep.params["xmax"] = xmax;
    } else {
        rep.params["x"] = evals[0].x;
    }
    ordered_json rows = ordered_json::array();
    for (const auto& e : evals)
        rows.push_back({{"x", e.x}, {"N", e.trunc_n}, {"approx", e.approx},
                        {"exact", e.exact}, {"abs_err", e.abs_err}});
    rep.results["points"] = std::move(rows);
    return emit_report(rep, g);
}

range_mode parse_range_mode(const std::string& s) {
    if (s == "upto") return range_mode::upto_n;
    if (s == "dyadic") return range_mode::dyadic;
    throw usage_error("--mode must be upto or dyadic");
}

std::string shifted_csv_row(const ShiftedSumRecord& r, bool with_fit) {
    std::string row = std::to_string(r.k);
    row += ',';
    row += std::to_string(r.f);
    row += ',';
    row += std::to_string(r.N);
    row += ',';
    row += range_mode_name(r.mode);
    row += ',';
    row += std::to_string(r.sum);
    row += ',';
    if (with_fit) row += csv_number(r.fitted_main);
    row += ',';
    if (with_fit) row += csv_number(r.residual);
    row += '\n';
    return row;
}

int run_shifted(const GlobalOpts& g, bool timings, int k, const std::string& f_s,
                const std::string& N_s, const std::string& mode_s) {
    u64 f = parse_count(f_s, "--f");
    u64 N = parse_count(N_s, "--N");
    range_mode mode = parse_range_mode(mode_s);
    u64 sum = shifted_sum(k, N, f, mode);
    std::string fmt = resolve_format(g, "shifted", true);
    if (fmt == "csv") {
        ShiftedSumRecord r{k, f, N, mode, sum, 0, 0};
        return emit_csv("k,f,N,mode,sum,fitted_main,residual\n" +
                            shifted_csv_row(r, false),
                        g);
    }
    ExperimentReport rep;
    rep.command = "shifted";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"k", k}, {"f", f}, {"N", N}, {"mode", mode_s}};
    rep.results = {{"k", k}, {"f", f}, {"N", N}, {"mode", range_mode_name(mode)},
                   {"sum", sum}};
    return emit_report(rep, g);
}

int run_shifted_fit(const GlobalOpts& g, bool timings, int k, const std::string& f_s,
                    const std::vector<std::string>& cp_s, const std::string& mode_s) {
    u64 f = parse_count(f_s, "--f");
    range_mode mode = parse_range_mode(mode_s);
    std::vector<u64> cps;
    for (const auto& s : cp_s) cps.push_back(parse_count(s, "--checkpoints"));
    auto an = fit_ingham(k, f, cps, mode);
    std::string fmt = resolve_format(g, "shifted-fit", true);
    if (fmt == "csv") {
        std::string csv = "k,f,N,mode,sum,fitted_main,residual\n";
        for (const auto& r : an.records) csv += shifted_csv_row(r, true);
        return emit_csv(csv, g);
    }
    ExperimentReport rep;
    rep.command = "shifted-fit";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"k", k}, {"f", f}, {"checkpoints", cps}, {"mode", mode_s}};
    rep.results["coeffs"] = an.fit.coeffs;
    rep.results["max_rel_residual"] = an.fit.max_rel_residual;
    ordered_json rows = ordered_json::array();
    for (const auto& r : an.records)
        rows.push_back({{"N", r.N}, {"sum", r.sum}, {"fitted_main", r.fitted_main},
                        {"residual", r.residual}});
    rep.results["records"] = std::move(rows);
    return emit_report(rep, g);
}

int run_avg_delta3(const GlobalOpts& g, bool timings, const std::string& N_s,
                   const std::string& H_s) {
    resolve_format(g, "avg-delta3", false);
    u64 N = parse_count(N_s, "--N");
    u64 H = parse_count(H_s, "--H");
    ExperimentReport rep;
    rep.command = "avg-delta3";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"N", N}, {"H", H}};
    auto ad = averaged_delta3(N, H);
    rep.results = {{"N", ad.N}, {"H", ad.H}, {"sum_residuals", ad.sum_residuals},
                   {"band", ad.band}, {"within_band", ad.within_band}};
    rep.add_check("avg_delta3_within_band", -ad.band, ad.band, ad.sum_residuals);
    return emit_report(rep, g);
}

int run_shortint(const GlobalOpts& g, bool timings, double T, double H, double U,
                 const std::string& stat, double cplus, double cminus) {
    resolve_format(g, "shortint", false);
    ExperimentReport rep;
    rep.command = "shortint";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"T", T}, {"H", H}, {"U", U}, {"stat", stat}};
    if (stat == "discrete") {
        if (T != std::floor(T) || U != std::floor(U))
            throw usage_error("shortint --stat discrete: T and U must be integers");
        u64 Ti = static_cast<u64>(T), Ui = static_cast<u64>(U);
        std::vector<u64> ladder;
        for (u64 cand : {32, 64, 128, 256, 512})
            if (cand >= 1 && static_cast<double>(cand) <= std::sqrt(T) / 2)
                ladder.push_back(cand);
        u64 need = 2 * Ti + std::max<u64>(Ui, ladder.empty() ? 0 : ladder.back()) + 2;
        DivisorPrefix prefix(need);
        auto st = diff_mean_square_discrete(Ti, Ui, prefix);
        if (ladder.size() >= 4) {
            auto fit = fit_short_interval_cubic(Ti, ladder, prefix);
            st.fitted_cubic = fit.coeffs;
            double target = 8.0 / (M_PI * M_PI);
            rep.add_check("c3_vs_8_pi2", 0.75 * target, 1.25 * target, fit.c3());
        }
        rep.results = stat_json(st);
        rep.results["fitted_cubic"] = st.fitted_cubic;
    } else if (stat == "integral") {
        DivisorPrefix prefix(static_cast<u64>(T + H + U) + 2);
        rep.results = stat_json(diff_mean_square_integral(T, H, U, prefix));
    } else if (stat == "jutila") {
        double rhs = jutila_rhs(T, H, U);
        rep.results["rhs"] = rhs;
        bool regime = U >= 1 && U <= std::sqrt(T) / 2 && std::sqrt(T) <= H && H <= T;
        rep.results["identity_regime"] = regime;
        if (regime) {
            DivisorPrefix prefix(static_cast<u64>(T + H + U) + 2);
            double lhs = diff_mean_square_integral(T, H, U, prefix).mean_square;
            rep.results["lhs"] = lhs;
            rep.results["abs_gap"] = std::fabs(lhs - rhs);
            rep.add_check("jutila_identity_gap", 0, 10 * T * std::log(T),
                          std::fabs(lhs - rhs));
        }
    } else if (stat == "maxwin") {
        DivisorPrefix prefix(static_cast<u64>(T + H + U) + 2);
        double value = max_window_stat(T, H, U, prefix);
        rep.results["max_window_integral"] = value;
        if (T >= 16) {
            double L = std::log(T), ll = std::log(L);
            double band = 3 * (H * U * std::pow(L, 5) + T * std::pow(L, 4) * ll +
                               std::cbrt(H) * std::pow(T, 2.0 / 3.0) *
                                   std::pow(U, 2.0 / 3.0) * std::pow(L, 10.0 / 3.0) *
                                   std::pow(ll, 2.0 / 3.0));
            rep.add_check("maxwin_theorem_band", 0, band, value);
        }
    } else if (stat == "large") {
        rep.params["cplus"] = cplus;
        rep.params["cminus"] = cminus;
        DivisorPrefix prefix(static_cast<u64>(T + H + U) + 2);
        auto det = detect_large_values(T, H, U, cplus, cminus, prefix);
        rep.results["positive_intervals"] = det.positive_intervals;
        rep.results["negative_intervals"] = det.negative_intervals;
        rep.results["u_in_regime"] = det.u_in_regime;
        rep.results["h_in_regime"] = det.h_in_regime;
        ordered_json rows = ordered_json::array();
        for (const auto& iv : det.interval_list)
            rows.push_back({{"start", iv.start}, {"end", iv.end}, {"sign", iv.sign}});
        rep.results["intervals"] = std::move(rows);
    } else {
        throw usage_error(
            "shortint: --stat must be discrete, integral, jutila, maxwin or large");
    }
    return emit_report(rep, g);
}

int run_iterate(const GlobalOpts& g, bool timings, int k, const std::string& n_s) {
    resolve_format(g, "iterate", false);
    u64 n = parse_count(n_s, "--n");
    ExperimentReport rep;
    rep.command = "iterate";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"k", k}, {"n", n}};
    rep.results = {{"n", n}, {"k", k}, {"value", iterate_d(n, k)}};
    return emit_report(rep, g);
}

int run_records(const GlobalOpts& g, bool timings, int k, const std::string& xmax_s) {
    u64 xmax = parse_count(xmax_s, "--xmax");
    auto scan = scan_iterated_max(xmax, k);
    std::string fmt = resolve_format(g, "records", true);
    if (fmt == "csv") {
        std::string csv = "n,value,normalized\n";
        for (const auto& r : scan.records) {
            csv += std::to_string(r.n);
            csv += ',';
            csv += std::to_string(r.value);
            csv += ',';
            csv += csv_number(r.normalized);
            csv += '\n';
        }
        return emit_csv(csv, g);
    }
    ExperimentReport rep;
    rep.command = "records";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"k", k}, {"xmax", xmax}};
    ordered_json rows = ordered_json::array();
    for (const auto& r : scan.records)
        rows.push_back({{"n", r.n}, {"value", r.value}, {"normalized", r.normalized}});
    rep.results["records"] = std::move(rows);
    return emit_report(rep, g);
}

int run_sumiter(const GlobalOpts& g, bool timings, int k, const std::string& x_s) {
    resolve_format(g, "sumiter", false);
    u64 x = parse_count(x_s, "--x");
    ExperimentReport rep;
    rep.command = "sumiter";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"k", k}, {"x", x}};
    auto s = sum_iterated(x, k);
    rep.results = {{"x", s.x}, {"k", s.k}, {"sum", s.sum}, {"normalized", s.normalized}};
    return emit_report(rep, g);
}

int run_ivic(const GlobalOpts& g, bool timings, const std::string& x_s,
             const std::string& variant) {
    resolve_format(g, "ivic", false);
    u64 x = parse_count(x_s, "--x");
    FuncKind kind = parse_kind(variant, "--variant");
    ExperimentReport rep;
    rep.command = "ivic";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"x", x}, {"variant", variant}};
    auto s = ivic_conjecture_scan(x, kind);
    rep.results = {{"x", s.x}, {"variant", variant}, {"sum", s.sum},
                   {"b_estimate", s.b_estimate}};
    return emit_report(rep, g);
}

int run_erdos_short(const GlobalOpts& g, bool timings, const std::string& window_s,
                    const std::string& samples_s, const std::string& regime_s,
                    double c, double delta) {
    resolve_format(g, "erdos-short", false);
    u64 window = parse_count(window_s, "--window");
    u64 samples = parse_count(samples_s, "--samples");
    erdos_regime regime;
    if (regime_s == "super")
        regime = erdos_regime::supercritical;
    else if (regime_s == "sub")
        regime = erdos_regime::subcritical;
    else
        throw usage_error("erdos-short: --regime must be super or sub");
    ExperimentReport rep;
    rep.command = "erdos-short";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"window", window}, {"samples", samples}, {"regime", regime_s},
                  {"c", c}, {"delta", delta}};
    rep.seed = g.seed;
    auto res = erdos_short_interval_check(samples, regime, c, window, g.seed, delta);
    rep.results = {{"fraction", res.fraction}, {"mean_ratio", res.mean_ratio},
                   {"mean_length", res.mean_length},
                   {"regime", erdos_regime_name(res.regime)}};
    // The almost-all band applies in the supercritical regime only.
    if (regime == erdos_regime::supercritical)
        rep.add_check("supercritical_fraction", 0.9, 1.0, res.fraction);
    return emit_report(rep, g);
}

int run_dkplus(const GlobalOpts& g, bool timings, int k, const std::string& x_s) {
    resolve_format(g, "dkplus", false);
    u64 x = parse_count(x_s, "--x");
    ExperimentReport rep;
    rep.command = "dkplus";
    rep.timings = timings;
    if (timings) rep.started = now_rfc3339();
    rep.params = {{"k", k}, {"x", x}};
    auto s = dk_plus_sum(x, k);
    rep.results = {{"x", s.x}, {"k", s.k}, {"sum", s.sum}, {"normalized", s.normalized}};
    return emit_report(rep, g);
}

int run_verify(const GlobalOpts& g, bool timings, const std::string& profile) {
    resolve_format(g, "verify", false);
    ExperimentReport rep = verify_suite(profile);
    rep.timings = timings;
    if (timings) {
        rep.started = now_rfc3339();  // battery already ran; stamps mark emission
    }
    return emit_report(rep, g);
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"numerical laboratory for divisor sums and their error terms"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--threads", g.threads, "worker thread cap (default: env DIVLAB_THREADS or hardware)");
    app.add_option("--out", g.out, "write output to this path instead of stdout");
    app.add_option("--format", g.format, "json or csv (default depends on command)")
        ->check(CLI::IsMember({"auto", "json", "csv"}));
    app.add_option("--seed", g.seed, "RNG seed for sampling commands");
    app.add_flag("--timings", g.timings, "include wall-clock timestamps in reports");

    std::string kind = "d", lo_s, hi_s, block_s;
    auto* sieve = app.add_subcommand("sieve", "tabulate d, d_k, omega or bigomega over [lo, hi)");
    sieve->add_option("--kind", kind, "d | dk:K | omega | bigomega");
    sieve->add_option("--lo", lo_s)->required();
    sieve->add_option("--hi", hi_s)->required();
    sieve->add_option("--block", block_s, "sieve block size");

    int dk = 2;
    double dx = 0;
    auto* delta = app.add_subcommand("delta", "error term Delta_k(x) at one point");
    delta->add_option("--k", dk);
    delta->add_option("--x", dx)->required();

    int mk = 2;
    double mX = 0;
    std::string mmode = "exact", msamples;
    auto* meansq = app.add_subcommand("delta-meansq", "integral of Delta_k^2 over [1, X]");
    meansq->add_option("--k", mk);
    meansq->add_option("--X", mX)->required();
    meansq->add_option("--mode", mmode, "exact | sampled");
    meansq->add_option("--samples", msamples, "sample count for sampled mode");

    std::string vx_s, vN_s, vgrid_s;
    double vxmin = 0, vxmax = 0;
    auto* voronoi = app.add_subcommand("voronoi", "truncated oscillating-series approximation of Delta");
    voronoi->add_option("--x", vx_s, "single evaluation point");
    voronoi->add_option("--N", vN_s, "truncation length")->required();
    voronoi->add_option("--grid", vgrid_s, "evaluate on a half-integer grid of this many points");
    voronoi->add_option("--xmin", vxmin);
    voronoi->add_option("--xmax", vxmax);

    int sk = 2;
    std::string sf_s = "1", sN_s, smode = "upto";
    auto* shifted = app.add_subcommand("shifted", "correlation sum of d_k(n) d_k(n+f)");
    shifted->add_option("--k", sk);
    shifted->add_option("--f", sf_s);
    shifted->add_option("--N", sN_s)->required();
    shifted->add_option("--mode", smode, "upto | dyadic");

    int fk = 2;
    std::string ff_s = "1", fmode = "upto";
    std::vector<std::string> fcps;
    auto* sfit = app.add_subcommand("shifted-fit", "fit correlation sums against N log^j N");
    sfit->add_option("--k", fk);
    sfit->add_option("--f", ff_s);
    sfit->add_option("--checkpoints", fcps)->required()->expected(-1);
    sfit->add_option("--mode", fmode, "upto | dyadic");

    std::string aN_s, aH_s;
    auto* avg = app.add_subcommand("avg-delta3", "shift-averaged d_3 correlation residual");
    avg->add_option("--N", aN_s)->required();
    avg->add_option("--H", aH_s)->required();

    double iT = 0, iH = 0, iU = 0, cplus = 0.5, cminus = 0.5;
    std::string istat;
    auto* shortint = app.add_subcommand("shortint", "short-interval statistics of Delta");
    shortint->add_option("--T", iT)->required();
    shortint->add_option("--H", iH);
    shortint->add_option("--U", iU)->required();
    shortint->add_option("--stat", istat, "discrete | integral | jutila | maxwin | large")
        ->required();
    shortint->add_option("--cplus", cplus, "positive threshold coefficient");
    shortint->add_option("--cminus", cminus, "negative threshold coefficient");

    int itk = 2;
    std::string itn_s;
    auto* iterate = app.add_subcommand("iterate", "k-fold iterate of d at one n");
    iterate->add_option("--k", itk);
    iterate->add_option("--n", itn_s)->required();

    int rk = 2;
    std::string rx_s;
    auto* records = app.add_subcommand("records", "running maxima of the k-fold iterate of d");
    records->add_option("--k", rk);
    records->add_option("--xmax", rx_s)->required();

    int suk = 2;
    std::string sux_s;
    auto* sumiter = app.add_subcommand("sumiter", "sum of the k-fold iterate of d up to x");
    sumiter->add_option("--k", suk);
    sumiter->add_option("--x", sux_s)->required();

    std::string ivx_s, ivvar = "d";
    auto* ivic = app.add_subcommand("ivic", "sum of f(n + f(n)) up to x");
    ivic->add_option("--x", ivx_s)->required();
    ivic->add_option("--variant", ivvar, "d | omega | bigomega | dk:K");

    std::string ew_s, es_s, ereg;
    double ec = 2.0, edelta = 0.25;
    auto* erdos = app.add_subcommand("erdos-short", "divisor sums over short random intervals");
    erdos->add_option("--window", ew_s, "x drawn from [window, 2 window]")->required();
    erdos->add_option("--samples", es_s)->required();
    erdos->add_option("--regime", ereg, "super | sub")->required();
    erdos->add_option("--c", ec, "strength in exp(+-c sqrt(loglog x))");
    erdos->add_option("--delta", edelta, "acceptance half-width around ratio 1");

    int pk = 2;
    std::string px_s;
    auto* dkplus = app.add_subcommand("dkplus", "sum of max d(n+h) over h < k");
    dkplus->add_option("--k", pk);
    dkplus->add_option("--x", px_s)->required();

    std::string profile = "quick";
    auto* verify = app.add_subcommand("verify", "built-in verification battery");
    verify->add_option("--profile", profile, "quick | full");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (argc > 1 && argv[1][0] != '-') {
            std::string hint = suggest_command(argv[1]);
            bool known = std::find(command_names().begin(), command_names().end(),
                                   argv[1]) != command_names().end();
            if (!known && !hint.empty())
                std::cerr << "did you mean '" << hint << "'?\n";
        }
        return 2;
    }

    if (g.threads > 0) set_max_threads(g.threads);

    try {
        if (*sieve) return run_sieve(g, g.timings, kind, lo_s, hi_s, block_s);
        if (*delta) return run_delta(g, g.timings, dk, dx);
        if (*meansq) return run_delta_meansq(g, g.timings, mk, mX, mmode, msamples);
        if (*voronoi) return run_voronoi(g, g.timings, vx_s, vN_s, vgrid_s, vxmin, vxmax);
        if (*shifted) return run_shifted(g, g.timings, sk, sf_s, sN_s, smode);
        if (*sfit) return run_shifted_fit(g, g.timings, fk, ff_s, fcps, fmode);
        if (*avg) return run_avg_delta3(g, g.timings, aN_s, aH_s);
        if (*shortint) return run_shortint(g, g.timings, iT, iH, iU, istat, cplus, cminus);
        if (*iterate) return run_iterate(g, g.timings, itk, itn_s);
        if (*records) return run_records(g, g.timings, rk, rx_s);
        if (*sumiter) return run_sumiter(g, g.timings, suk, sux_s);
        if (*ivic) return run_ivic(g, g.timings, ivx_s, ivvar);
        if (*erdos) return run_erdos_short(g, g.timings, ew_s, es_s, ereg, ec, edelta);
        if (*dkplus) return run_dkplus(g, g.timings, pk, px_s);
        if (*verify) return run_verify(g, g.timings, profile);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}

}  // namespace divlab::tools
