// dissipair command line front end: figure presets and parameter scans.
// Output is CSV with a single '#'-prefixed JSON header recording the
// resolved configuration, so every artifact is self-describing.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dissipair/ck.hpp"
#include "dissipair/cl.hpp"
#include "dissipair/pair.hpp"
#include "dissipair/two_slit.hpp"
#include "dissipair/types.hpp"

using nlohmann::json;
using namespace dissipair;

namespace {

struct RunConfig {
    std::string framework = "ck";
    std::string observable = "mss";
    std::vector<std::string> stats = {"mb", "be", "fd"};
    std::vector<double> gammas = {0.1};
    std::vector<double> kbts = {5.0};
    double sigma0 = 1.0, sigmabar0 = 0.9;
    double p0 = 3.0, pbar0 = 3.0;
    double x0 = 0.0, xbar0 = 0.0;
    double d = 1.0;               // detector half width
    double detector_offset = 1.0; // +-D for the two-detector schemes
    double slit_x = 4.0, slit_width = 1.0, t0 = 1.0;
    double t_max = 10.0;
    int t_steps = 100;
    std::vector<double> t_list; // overrides the uniform t grid when nonempty
    double x_min = -15.0, x_max = 15.0;
    int x_steps = 300;
    std::string normalize = "none"; // none | max (per-curve)
    std::string out;                // empty -> stdout
    int threads = 0;                // 0 -> hardware concurrency
};

json to_json(const RunConfig& c) {
    return json{{"framework", c.framework},
                {"observable", c.observable},
                {"stats", c.stats},
                {"gamma", c.gammas},
                {"kbt", c.kbts},
                {"sigma0", c.sigma0},
                {"sigmabar0", c.sigmabar0},
                {"p0", c.p0},
                {"pbar0", c.pbar0},
                {"x0", c.x0},
                {"xbar0", c.xbar0},
                {"d", c.d},
                {"detector_offset", c.detector_offset},
                {"slit_x", c.slit_x},
                {"slit_width", c.slit_width},
                {"t0", c.t0},
                {"t_max", c.t_max},
                {"t_steps", c.t_steps},
                {"t_list", c.t_list},
                {"x_min", c.x_min},
                {"x_max", c.x_max},
                {"x_steps", c.x_steps},
                {"normalize", c.normalize}};
}

void from_json_overlay(const json& j, RunConfig& c) {
    if (j.contains("framework")) j.at("framework").get_to(c.framework);
    if (j.contains("observable")) j.at("observable").get_to(c.observable);
    if (j.contains("stats")) j.at("stats").get_to(c.stats);
    if (j.contains("gamma")) j.at("gamma").get_to(c.gammas);
    if (j.contains("kbt")) j.at("kbt").get_to(c.kbts);
    if (j.contains("sigma0")) j.at("sigma0").get_to(c.sigma0);
    if (j.contains("sigmabar0")) j.at("sigmabar0").get_to(c.sigmabar0);
    if (j.contains("p0")) j.at("p0").get_to(c.p0);
    if (j.contains("pbar0")) j.at("pbar0").get_to(c.pbar0);
    if (j.contains("x0")) j.at("x0").get_to(c.x0);
    if (j.contains("xbar0")) j.at("xbar0").get_to(c.xbar0);
    if (j.contains("d")) j.at("d").get_to(c.d);
    if (j.contains("detector_offset")) j.at("detector_offset").get_to(c.detector_offset);
    if (j.contains("slit_x")) j.at("slit_x").get_to(c.slit_x);
    if (j.contains("slit_width")) j.at("slit_width").get_to(c.slit_width);
    if (j.contains("t0")) j.at("t0").get_to(c.t0);
    if (j.contains("t_max")) j.at("t_max").get_to(c.t_max);
    if (j.contains("t_steps")) j.at("t_steps").get_to(c.t_steps);
    if (j.contains("t_list")) j.at("t_list").get_to(c.t_list);
    if (j.contains("x_min")) j.at("x_min").get_to(c.x_min);
    if (j.contains("x_max")) j.at("x_max").get_to(c.x_max);
    if (j.contains("x_steps")) j.at("x_steps").get_to(c.x_steps);
    if (j.contains("normalize")) j.at("normalize").get_to(c.normalize);
    if (j.contains("threads")) j.at("threads").get_to(c.threads);
}

Statistics parse_stats(const std::string& s) {
    if (s == "mb") return Statistics::MB;
    if (s == "be") return Statistics::BE;
    if (s == "fd") return Statistics::FD;
    throw CLI::ValidationError("--stats", "unknown statistics '" + s + "'");
}

bool uses_x_grid(const std::string& obs) {
    return obs == "sp-density" || obs == "sp-current" || obs == "joint-fixed-moving";
}

bool needs_pure_state(const std::string& obs) {
    return obs == "detect2" || obs == "detect-point" || obs == "sp-current" ||
           obs == "joint-fixed-moving";
}

void validate(const RunConfig& c) {
    static const std::vector<std::string> observables = {
        "mss",        "detect1",    "detect2",          "detect-point",
        "sp-density", "sp-current", "joint-fixed-moving"};
    if (c.framework != "ck" && c.framework != "cl")
        throw CLI::ValidationError("--framework", "must be ck or cl");
    if (std::find(observables.begin(), observables.end(), c.observable) == observables.end())
        throw CLI::ValidationError("--observable", "unknown observable '" + c.observable + "'");
    if (c.framework == "cl" && needs_pure_state(c.observable))
        throw CLI::ValidationError(
            "--observable", c.observable + " needs wavefunction-level access; use --framework ck");
    if (c.stats.empty()) throw CLI::ValidationError("--stats", "need at least one of mb,be,fd");
    for (const auto& s : c.stats) parse_stats(s);
    if (c.gammas.empty()) throw CLI::ValidationError("--gamma", "need at least one value");
    if (c.sigma0 <= 0.0 || c.sigmabar0 <= 0.0)
        throw CLI::ValidationError("--sigma0", "widths must be positive");
    if (c.d < 0.0) throw CLI::ValidationError("--d", "half width must be >= 0");
    if (c.t_steps < 1 || c.x_steps < 1)
        throw CLI::ValidationError("--t-steps", "grids need at least one step");
    for (double g : c.gammas)
        if (g < 0.0) throw CLI::ValidationError("--gamma", "gamma must be >= 0");
    for (double T : c.kbts)
        if (T < 0.0) throw CLI::ValidationError("--kbt", "kBT must be >= 0");
    if (c.normalize != "none" && c.normalize != "max")
        throw CLI::ValidationError("--normalize", "must be none or max");
}

std::vector<double> t_grid(const RunConfig& c) {
    if (!c.t_list.empty()) return c.t_list;
    // slit branches are only defined from the arrival time on
    const double lo = c.observable == "joint-fixed-moving" ? c.t0 : 0.0;
    std::vector<double> ts(c.t_steps + 1);
    for (int i = 0; i <= c.t_steps; ++i)
        ts[i] = lo + (c.t_max - lo) * double(i) / double(c.t_steps);
    return ts;
}

std::vector<double> x_grid(const RunConfig& c) {
    std::vector<double> xs(c.x_steps + 1);
    for (int i = 0; i <= c.x_steps; ++i)
        xs[i] = c.x_min + (c.x_max - c.x_min) * double(i) / double(c.x_steps);
    return xs;
}

// Shared per-(gamma, kBT) evaluation context; built once, used by many rows.
struct EnvContext {
    Environment env;
    std::unique_ptr<PairKernel> kernel;
    std::optional<PureStatePair> pure;
    GaussianPacket a, b;
    SlitConfig slits;
};

std::shared_ptr<EnvContext> make_context(const RunConfig& c, double gamma, double kbt) {
    auto ctx = std::make_shared<EnvContext>();
    ctx->env = Environment{1.0, 1.0, gamma, kbt};
    ctx->a = GaussianPacket{c.x0, c.p0, c.sigma0};
    ctx->b = GaussianPacket{c.xbar0, c.pbar0, c.sigmabar0};
    ctx->slits = SlitConfig{c.slit_x, c.slit_width, c.t0};
    if (c.observable == "joint-fixed-moving") {
        ctx->pure = make_slit_pair(ctx->a, ctx->b, ctx->slits, ctx->env);
    } else if (c.framework == "cl") {
        ctx->kernel = std::make_unique<CLKernel>(ctx->a, ctx->b, ctx->env);
    } else {
        ctx->pure = make_ck_pair(ctx->a, ctx->b, ctx->env);
        ctx->kernel = std::make_unique<PureKernel>(*ctx->pure);
    }
    return ctx;
}

struct Row {
    std::vector<double> keys;   // gamma [, kbt], t [, x]
    std::vector<double> values; // one per requested statistics (+ delta_p)
};

double evaluate(const RunConfig& c, const EnvContext& ctx, Statistics st, double t, double x) {
    if (c.observable == "mss") return mss(st, *ctx.kernel, t);
    if (c.observable == "detect1") return detection_ratio_single(st, *ctx.kernel, t, c.d);
    if (c.observable == "detect2")
        return detection_ratio_double(st, *ctx.pure, t, c.detector_offset, c.d);
    if (c.observable == "detect-point")
        return detection_ratio_point(st, *ctx.pure, t, c.detector_offset);
    if (c.observable == "sp-density") return sp_density(st, *ctx.kernel, x, t);
    if (c.observable == "sp-current") return sp_current(st, *ctx.pure, x, t);
    return joint_fixed_moving(st, ctx.a, ctx.b, ctx.slits, x, t, ctx.env);
}

bool has_stat(const RunConfig& c, const char* s) {
    return std::find(c.stats.begin(), c.stats.end(), s) != c.stats.end();
}

bool is_detect(const std::string& obs) {
    return obs == "detect1" || obs == "detect2" || obs == "detect-point";
}

std::vector<std::string> column_names(const RunConfig& c) {
    std::vector<std::string> cols = {"gamma"};
    if (c.framework == "cl") cols.push_back("kbt");
    cols.push_back("t");
    if (uses_x_grid(c.observable)) cols.push_back("x");
    std::string prefix = "val";
    if (c.observable == "mss") prefix = "mss";
    else if (is_detect(c.observable)) prefix = "p";
    else if (c.observable == "sp-density") prefix = "rho";
    else if (c.observable == "sp-current") prefix = "j";
    else if (c.observable == "joint-fixed-moving") prefix = "joint";
    for (const auto& s : c.stats) cols.push_back(prefix + "_" + s);
    if (is_detect(c.observable) && has_stat(c, "be") && has_stat(c, "fd"))
        cols.push_back("delta_p");
    return cols;
}

// All rows in deterministic (gamma, kbt, t, x) order; the value cells are
// filled in parallel over a shared atomic row counter.
std::vector<Row> compute(const RunConfig& c) {
    const auto ts = t_grid(c);
    const auto xs = uses_x_grid(c.observable) ? x_grid(c) : std::vector<double>{0.0};
    const auto kbts = c.framework == "cl" ? c.kbts : std::vector<double>{0.0};
    const bool emit_kbt = c.framework == "cl";
    const bool emit_x = uses_x_grid(c.observable);

    std::vector<Row> rows;
    std::vector<std::shared_ptr<EnvContext>> ctx_of_row;
    for (double g : c.gammas)
        for (double T : kbts) {
            auto ctx = make_context(c, g, T);
            for (double t : ts)
                for (double x : xs) {
                    Row r;
                    r.keys.push_back(g);
                    if (emit_kbt) r.keys.push_back(T);
                    r.keys.push_back(t);
                    if (emit_x) r.keys.push_back(x);
                    rows.push_back(std::move(r));
                    ctx_of_row.push_back(ctx);
                }
        }

    int nthreads = c.threads;
    if (nthreads <= 0) {
        if (const char* env = std::getenv("DISSIPAIR_THREADS")) nthreads = std::atoi(env);
        if (nthreads <= 0) nthreads = int(std::thread::hardware_concurrency());
        if (nthreads <= 0) nthreads = 1;
    }
    nthreads = std::min<int>(nthreads, int(rows.size()));

    const bool delta = is_detect(c.observable) && has_stat(c, "be") && has_stat(c, "fd");
    std::atomic<size_t> next{0};
    std::mutex err_mutex;
    size_t err_row = rows.size();
    std::exception_ptr err;

    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1)) {
            try {
                Row& r = rows[i];
                const double t = emit_x ? r.keys[r.keys.size() - 2] : r.keys.back();
                const double x = emit_x ? r.keys.back() : 0.0;
                double p_be = 0.0, p_fd = 0.0;
                for (const auto& s : c.stats) {
                    double v = evaluate(c, *ctx_of_row[i], parse_stats(s), t, x);
                    if (s == "be") p_be = v;
                    if (s == "fd") p_fd = v;
                    r.values.push_back(v);
                }
                if (delta) r.values.push_back(p_be - p_fd);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (i < err_row) {
                    err_row = i;
                    err = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < nthreads - 1; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return rows;
}

// Per-curve max scaling: a curve is one value column at fixed leading keys
// (everything except the innermost grid axis).
void normalize_max(std::vector<Row>& rows) {
    if (rows.empty()) return;
    const size_t nval = rows[0].values.size();
    std::map<std::vector<double>, std::vector<double>> peak;
    for (const auto& r : rows) {
        std::vector<double> group(r.keys.begin(), r.keys.end() - 1);
        auto& m = peak[group];
        if (m.empty()) m.assign(nval, 0.0);
        for (size_t j = 0; j < nval; ++j) m[j] = std::max(m[j], std::abs(r.values[j]));
    }
    for (auto& r : rows) {
        std::vector<double> group(r.keys.begin(), r.keys.end() - 1);
        const auto& m = peak[group];
        for (size_t j = 0; j < nval; ++j)
            if (m[j] > 0.0) r.values[j] /= m[j];
    }
}

void write_output(const RunConfig& c, const std::vector<Row>& rows, std::ostream& os) {
    os << "# " << to_json(c).dump() << "\n";
    const auto cols = column_names(c);
    for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    char buf[32];
    for (const auto& r : rows) {
        bool first = true;
        for (double v : r.keys) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << (first ? "" : ",") << buf;
            first = false;
        }
        for (double v : r.values) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << "," << buf;
        }
        os << "\n";
    }
}

int execute(const RunConfig& c) {
    validate(c);
    auto rows = compute(c);
    if (c.normalize == "max") normalize_max(rows);
    if (c.out.empty()) {
        write_output(c, rows, std::cout);
    } else {
        std::ofstream f(c.out);
        if (!f) {
            std::cerr << "error: cannot open output file '" << c.out << "'\n";
            return 2;
        }
        write_output(c, rows, f);
    }
    return 0;
}

// Figure-caption parameter sets. Overrides given on the command line are
// applied on top afterwards.
void apply_preset(int preset, RunConfig& c) {
    switch (preset) {
        case 1: // MSS vs t, four frictions
            c.observable = "mss";
            c.gammas = {0.0, 0.1, 0.15, 0.2};
            c.t_max = 20.0;
            c.t_steps = 200;
            break;
        case 2: // detector ratios p_+, p_-, delta_p, d = 1
            c.observable = "detect1";
            c.gammas = {0.0, 0.02, 0.05, 0.1};
            c.d = 1.0;
            c.t_max = 25.0;
            c.t_steps = 250;
            break;
        case 3: // as 2 but two point detectors at +-D, D = 1
            c.observable = "detect-point";
            c.gammas = {0.0, 0.02, 0.05, 0.1};
            c.detector_offset = 1.0;
            c.t_max = 25.0;
            c.t_steps = 250;
            break;
        case 4: // CL mean square separation
            c.framework = "cl";
            c.observable = "mss";
            c.gammas = {0.1, 0.2};
            c.kbts = {5.0, 8.0, 10.0};
            c.t_max = 20.0;
            c.t_steps = 200;
            break;
        case 5: // CL detector ratios, 2d = 2
            c.framework = "cl";
            c.observable = "detect1";
            c.gammas = {0.1, 0.2};
            c.kbts = {5.0, 7.0, 10.0, 15.0};
            c.d = 1.0;
            c.t_max = 25.0;
            c.t_steps = 250;
            break;
        case 6: // CL ratios vs gamma at kBT = 3 (sweep kBT separately for the mirror panel)
            c.framework = "cl";
            c.observable = "detect1";
            c.gammas = {0.01, 0.02, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4};
            c.kbts = {3.0};
            c.d = 1.0;
            c.t_list = {1.5, 5.0};
            break;
        case 7: // two-slit joint pattern at t = 5 t0
            c.observable = "joint-fixed-moving";
            c.gammas = {0.0, 0.1, 0.2};
            c.sigma0 = 0.9;
            c.sigmabar0 = 0.8;
            c.p0 = c.pbar0 = 0.0;
            c.slit_x = 4.0;
            c.slit_width = 1.0;
            c.t0 = 1.0;
            c.t_list = {5.0};
            c.x_min = -15.0;
            c.x_max = 15.0;
            c.x_steps = 300;
            break;
        case 8: // two-slit joint pattern at three times
            c.observable = "joint-fixed-moving";
            c.gammas = {0.0, 0.1, 0.2};
            c.sigma0 = 0.9;
            c.sigmabar0 = 0.7;
            c.p0 = c.pbar0 = 0.0;
            c.slit_x = 4.0;
            c.slit_width = 1.0;
            c.t0 = 1.0;
            c.t_list = {2.0, 5.0, 10.0};
            c.x_min = -20.0;
            c.x_max = 20.0;
            c.x_steps = 400;
            break;
        default:
            throw CLI::ValidationError("preset", "preset must be in 1..8");
    }
}

void add_options(CLI::App* cmd, RunConfig& c, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file; flags override its entries");
    cmd->add_option("--framework", c.framework, "ck or cl");
    cmd->add_option("--observable", c.observable,
                    "mss | detect1 | detect2 | detect-point | sp-density | sp-current | "
                    "joint-fixed-moving");
    cmd->add_option("--stats", c.stats, "statistics subset of mb,be,fd")->delimiter(',');
    cmd->add_option("--gamma", c.gammas, "friction coefficient(s)")->delimiter(',');
    cmd->add_option("--kbt", c.kbts, "bath temperature(s), CL only")->delimiter(',');
    cmd->add_option("--sigma0", c.sigma0, "first packet width");
    cmd->add_option("--sigmabar0", c.sigmabar0, "second packet width");
    cmd->add_option("--p0", c.p0, "first packet kick momentum");
    cmd->add_option("--pbar0", c.pbar0, "second packet kick momentum");
    cmd->add_option("--x0", c.x0, "first packet center");
    cmd->add_option("--xbar0", c.xbar0, "second packet center");
    cmd->add_option("--d", c.d, "detector half width");
    cmd->add_option("--detector-offset", c.detector_offset, "detector positions +-D");
    cmd->add_option("--slit-x", c.slit_x, "slit centers +-X");
    cmd->add_option("--slit-width", c.slit_width, "slit Gaussian width w");
    cmd->add_option("--t0", c.t0, "slit arrival time");
    cmd->add_option("--t-max", c.t_max, "end of the uniform time grid");
    cmd->add_option("--t-steps", c.t_steps, "number of time steps");
    cmd->add_option("--t", c.t_list, "explicit time values (replaces the grid)")->delimiter(',');
    cmd->add_option("--x-min", c.x_min, "position grid start");
    cmd->add_option("--x-max", c.x_max, "position grid end");
    cmd->add_option("--x-steps", c.x_steps, "number of position steps");
    cmd->add_option("--normalize", c.normalize, "none | max (scale each curve to peak 1)");
    cmd->add_option("--out", c.out, "output CSV path (default stdout)");
    cmd->add_option("--threads", c.threads, "worker thread cap (env DISSIPAIR_THREADS)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipair: two-particle interference with dissipation"};
    app.require_subcommand(1);

    RunConfig run_cfg, fig_cfg;
    std::string run_config_path, fig_config_path;
    int preset = 0;

    auto* run = app.add_subcommand("run", "evaluate one observable over a parameter grid");
    add_options(run, run_cfg, run_config_path);

    auto* figure = app.add_subcommand("figure", "reproduce a figure dataset (presets 1..8)");
    figure->add_option("preset", preset, "figure number")->required()->check(CLI::Range(1, 8));
    add_options(figure, fig_cfg, fig_config_path);

    try {
        app.parse(argc, argv);

        RunConfig cfg;
        std::string config_path;
        if (figure->parsed()) {
            apply_preset(preset, cfg);
            config_path = fig_config_path;
        } else {
            config_path = run_config_path;
        }
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "error: cannot read config file '" << config_path << "'\n";
                return 2;
            }
            from_json_overlay(json::parse(f), cfg);
        }
        // re-parse the flags against cfg so they land on top of the
        // preset/config defaults (the first parse wrote into throwaway sinks)
        {
            CLI::App merge{"merge"};
            std::string dummy;
            add_options(&merge, cfg, dummy);
            std::vector<std::string> args; // reversed, as CLI11 expects
            for (int i = argc - 1; i >= 2; --i) args.emplace_back(argv[i]);
            if (figure->parsed() && !args.empty() && args.back() == std::to_string(preset))
                args.pop_back(); // drop the preset positional
            merge.parse(args);
        }
        return execute(cfg);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const PauliExclusion& e) {
        std::cerr << "numerical error in symmetrized_norm (PauliExclusion): " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
