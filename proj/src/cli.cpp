#include "nbarrier/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nbarrier/errors.hpp"
#include "nbarrier/format.hpp"
#include "nbarrier/geometry.hpp"
#include "nbarrier/json_io.hpp"
#include "nbarrier/model.hpp"
#include "nbarrier/nonexist.hpp"
#include "nbarrier/tangent.hpp"
#include "nbarrier/waves.hpp"

namespace fs = std::filesystem;

namespace nbarrier::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string iso_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_text(const std::string& bytes, const std::string& origin) {
    const json doc = json::parse(bytes, nullptr, false);
    if (doc.is_discarded()) {
        throw ConfigError("invalid JSON in '" + origin + "'");
    }
    return doc;
}

json parse_json_file(const fs::path& path) {
    return parse_json_text(read_file(path), path.string());
}

// Collects files written under --out and finishes with a run manifest
// listing them.
struct Run {
    std::string command;
    std::vector<std::string> argv;
    std::string started = iso_now();
    std::uint64_t input_hash = 0;
    std::optional<fs::path> out_dir;
    std::vector<std::string> outputs;

    void write(const std::string& name, const std::string& content) {
        if (!out_dir) return;
        fs::create_directories(*out_dir);
        std::ofstream f(*out_dir / name, std::ios::binary);
        if (!f) throw Error("cannot write '" + (*out_dir / name).string() + "'");
        f << content;
        outputs.push_back(name);
    }

    void finish() {
        if (!out_dir) return;
        const json manifest{
            {"version", kVersion},
            {"command", command},
            {"argv", argv},
            {"input_hash", hash_hex(input_hash)},
            {"started", started},
            {"finished", iso_now()},
            {"outputs", outputs},
        };
        fs::create_directories(*out_dir);
        std::ofstream f(*out_dir / "manifest.json", std::ios::binary);
        f << manifest.dump(2) << '\n';
    }
};

void emit(Run& run, const std::string& file_name, const json& doc) {
    const std::string text = doc.dump(2) + "\n";
    std::cout << text;
    run.write(file_name, text);
}

// Inline scaled parameters shared by most subcommands.
struct InlineScaled {
    double a1 = 0.0, a2 = 0.0, d = 0.0, k = 1.0;
    double alpha = 1.0, beta = 1.0;
    double theta = 0.0;
    bool theta_set = false;

    CLI::Option* opt_a1 = nullptr;

    void add_options(CLI::App* cmd, bool with_weights = true) {
        opt_a1 = cmd->add_option("--a1", a1, "inter-specific rate a1");
        cmd->add_option("--a2", a2, "inter-specific rate a2");
        cmd->add_option("--d", d, "diffusion ratio d");
        cmd->add_option("--k", k, "growth-rate ratio k (default 1)");
        if (with_weights) {
            cmd->add_option("--alpha", alpha, "weight on u (default 1)");
            cmd->add_option("--beta", beta, "weight on v (default 1)");
        }
        cmd->add_option("--theta", theta, "wave speed (initial guess / override)")
            ->each([this](const std::string&) { theta_set = true; });
    }
};

// Resolve scaled parameters from --config or inline flags (never both).
ScaledConfig resolve_scaled(const std::string& config_path, const InlineScaled& inl,
                            CLI::App* cmd, Run& run) {
    const bool inline_given = cmd->count("--a1") || cmd->count("--a2") || cmd->count("--d");
    if (!config_path.empty() && inline_given) {
        throw ConfigError("pass --config or inline parameters, not both");
    }
    if (!config_path.empty()) {
        const std::string bytes = read_file(config_path);
        run.input_hash = fnv1a64(bytes);
        const json doc = parse_json_text(bytes, config_path);
        if (detect_config(doc) != ConfigKind::SCALED) {
            throw ConfigError("this command expects a scaled-system config (keys a1, a2, d, k)");
        }
        ScaledConfig cfg = parse_scaled_config(doc);
        if (inl.theta_set) cfg.theta = inl.theta;
        return cfg;
    }
    if (!(cmd->count("--a1") && cmd->count("--a2") && cmd->count("--d"))) {
        throw ConfigError("--a1, --a2 and --d are required without --config");
    }
    ScaledConfig cfg;
    cfg.params = {inl.a1, inl.a2, inl.d, inl.k};
    cfg.weights = {inl.alpha, inl.beta};
    if (inl.theta_set) cfg.theta = inl.theta;
    const json canonical{{"a1", inl.a1},    {"a2", inl.a2},     {"d", inl.d},  {"k", inl.k},
                         {"alpha", inl.alpha}, {"beta", inl.beta}};
    run.input_hash = fnv1a64(canonical.dump());
    return cfg;
}

std::optional<std::uint64_t> env_jitter_seed() {
    const char* env = std::getenv("NBARRIER_SEED");
    if (!env || !*env) return std::nullopt;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw ConfigError("NBARRIER_SEED must be an unsigned integer");
    }
}

// ---- subcommand implementations -------------------------------------------

int cmd_bounds(const std::string& config_path, const InlineScaled& inl,
               const std::string& format, CLI::App* cmd, Run& run) {
    json result;
    BoundPair pair;
    bool handled = false;
    if (!config_path.empty()) {
        const std::string bytes = read_file(config_path);
        const json doc = parse_json_text(bytes, config_path);
        if (detect_config(doc) == ConfigKind::UNSCALED) {
            run.input_hash = fnv1a64(bytes);
            const UnscaledConfig cfg = parse_unscaled_config(doc);
            pair = bounds_unscaled(cfg.params, cfg.weights);
            result = to_json(pair);
            handled = true;
        }
    }
    if (!handled) {
        const ScaledConfig cfg = resolve_scaled(config_path, inl, cmd, run);
        pair = bounds_scaled(cfg.params, cfg.weights);
        result = to_json(pair);
        result["lower_barrier"] = to_json(lower_barrier_scaled(cfg.params, cfg.weights));
        result["upper_barrier"] = to_json(upper_barrier_scaled(cfg.params, cfg.weights));
    }
    if (format == "csv") {
        const std::string csv = "quantity,lower,upper\n" + pair.quantity + "," +
                                format_double(pair.lower) + "," + format_double(pair.upper) +
                                "\n";
        std::cout << csv;
        run.write("bounds.csv", csv);
    } else {
        emit(run, "bounds.json", result);
    }
    std::cerr << "bounds on " << pair.quantity << ": [" << format_double(pair.lower) << ", "
              << format_double(pair.upper) << "]\n";
    return 0;
}

int cmd_tangent(const std::string& config_path, const InlineScaled& inl, CLI::App* cmd,
                Run& run) {
    const ScaledConfig cfg = resolve_scaled(config_path, inl, cmd, run);
    const TangentSolution sol = solve_tangent(cfg.params, cfg.weights);
    json result = to_json(sol);
    result["sharp_lower_bound"] = sol.lambda2 * std::min(cfg.params.d, 1.0 / cfg.params.d);
    emit(run, "tangent.json", result);
    std::cerr << "tangent level lambda2 = " << format_double(sol.lambda2) << ", lower bound "
              << format_double(result["sharp_lower_bound"].get<double>()) << "\n";
    return 0;
}

int cmd_wave(const std::string& config_path, const InlineScaled& inl, SolverConfig solver,
             const std::string& method, double t_end, CLI::App* cmd, Run& run) {
    const ScaledConfig cfg = resolve_scaled(config_path, inl, cmd, run);
    if (cfg.theta) solver.theta0 = *cfg.theta;
    solver.jitter_seed = env_jitter_seed();

    WaveProfile prof;
    if (method == "march") {
        prof = march_oracle(cfg.params, solver, t_end);
    } else {
        prof = solve_wave(cfg.params, solver);
    }

    const std::string hash = hash_hex(run.input_hash);
    json summary{
        {"theta", prof.theta},
        {"residual", prof.meta.residual},
        {"iterations", prof.meta.iterations},
        {"method", prof.meta.method},
        {"L", solver.L},
        {"N", solver.N},
        {"config_hash", hash},
    };
    std::cout << summary.dump(2) << "\n";
    run.write("profile.csv", profile_csv(prof));
    run.write("profile.meta.json", profile_sidecar(prof, solver.L, solver.N, hash).dump(2) + "\n");
    std::cerr << "wave solved: theta = " << format_double(prof.theta) << ", residual "
              << format_double(prof.meta.residual) << " after " << prof.meta.iterations
              << " iterations (" << prof.meta.method << ")\n";
    return 0;
}

WaveProfile load_profile(const std::string& profile_path, const InlineScaled& inl) {
    WaveProfile prof = parse_profile_csv(read_file(profile_path));
    // Sidecar metadata, when present, supplies theta and the solver history.
    fs::path sidecar = profile_path;
    sidecar.replace_extension();
    sidecar += ".meta.json";
    bool have_theta = false;
    if (fs::exists(sidecar)) {
        const json meta = parse_json_file(sidecar);
        if (meta.contains("theta")) {
            prof.theta = meta["theta"].get<double>();
            have_theta = true;
        }
        if (meta.contains("residual")) prof.meta.residual = meta["residual"].get<double>();
        if (meta.contains("iterations")) prof.meta.iterations = meta["iterations"].get<int>();
        if (meta.contains("method")) prof.meta.method = meta["method"].get<std::string>();
        if (meta.contains("eps_bc")) prof.meta.eps_bc = meta["eps_bc"].get<double>();
    }
    if (inl.theta_set) {
        prof.theta = inl.theta;
        have_theta = true;
    }
    if (!have_theta) {
        throw ConfigError("theta unavailable: pass --theta or keep the profile sidecar");
    }
    return prof;
}

int cmd_verify(const std::string& config_path, const InlineScaled& inl,
               const std::string& profile_path, double slack, bool require_pass, CLI::App* cmd,
               Run& run) {
    const ScaledConfig cfg = resolve_scaled(config_path, inl, cmd, run);
    const WaveProfile prof = load_profile(profile_path, inl);
    const VerificationReport rep = bound_verify(prof, cfg.params, cfg.weights, slack);
    emit(run, "verify.json", to_json(rep));
    std::cerr << (rep.all_pass ? "all bounds hold" : "verification FAILED") << ": min q = "
              << format_double(rep.min_q) << ", max q = " << format_double(rep.max_q)
              << ", slack " << format_double(rep.slack) << "\n";
    if (require_pass && !rep.all_pass) return 1;
    return 0;
}

int cmd_nonexist(const std::string& config_path, bool require_certified, Run& run) {
    const std::string bytes = read_file(config_path);
    run.input_hash = fnv1a64(bytes);
    const ThreeSpeciesParams p = parse_three_config(parse_json_text(bytes, config_path));
    const ThreeSpeciesVerdict v = check(p);
    json result = to_json(v);
    result["scope"] =
        "applies to positive traveling waves connecting (sigma1/c11, 0, 0) to "
        "(0, sigma2/c22, 0); INCONCLUSIVE makes no existence claim";
    if (v.h1 && v.h2) {
        // The certification chains back to the two-species maximum principle:
        // eliminate the third species at its maximum level sigma3/c33, bound
        // c31 u + c32 v below in the reduced system, and compare with sigma3.
        const UnscaledParams reduced = reduced_two_species(p);
        const double chain_lower = bounds_unscaled(reduced, Weights{p.c31, p.c32}).lower;
        result["proof_chain"] = json{
            {"sigma1_eff", reduced.sigma1},
            {"sigma2_eff", reduced.sigma2},
            {"lower_bound_c31u_plus_c32v", chain_lower},
            {"sigma3", p.sigma3},
            {"certifies", chain_lower >= p.sigma3},
        };
    }
    emit(run, "nonexist.json", result);
    std::cerr << "verdict: " << to_string(v.verdict) << " (h1 " << (v.h1 ? "ok" : "fail")
              << ", h2 " << (v.h2 ? "ok" : "fail") << ", h3 " << (v.h3 ? "ok" : "fail")
              << ")\n";
    if (require_certified && v.verdict != Verdict::NONEXISTENCE_CERTIFIED) return 1;
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::string& values_arg, const std::string& format, Run& run) {
    const std::string bytes = read_file(config_path);
    run.input_hash = fnv1a64(bytes);
    const ThreeSpeciesParams base = parse_three_config(parse_json_text(bytes, config_path));

    std::vector<double> values;
    std::stringstream ss(values_arg);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) continue;
        try {
            values.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw ConfigError("--values entry '" + cell + "' is not a number");
        }
    }

    const std::vector<ThreeSpeciesVerdict> verdicts = sweep(base, axis, values);
    if (format == "csv") {
        const std::string csv = sweep_csv(values, verdicts);
        std::cout << csv;
        run.write("sweep.csv", csv);
    } else {
        json rows = json::array();
        for (size_t i = 0; i < verdicts.size(); ++i) {
            json row = to_json(verdicts[i]);
            row["axis"] = axis;
            row["value"] = values[i];
            rows.push_back(std::move(row));
        }
        emit(run, "sweep.json", rows);
    }
    int certified = 0;
    for (const auto& v : verdicts) {
        certified += v.verdict == Verdict::NONEXISTENCE_CERTIFIED ? 1 : 0;
    }
    std::cerr << "sweep over " << axis << ": " << certified << "/" << verdicts.size()
              << " certified\n";
    return 0;
}

int cmd_plot(const std::string& config_path, const InlineScaled& inl, bool upper, bool tangent,
             const std::string& profile_path, CLI::App* cmd, Run& run) {
    if (!run.out_dir) {
        throw ConfigError("plot requires --out");
    }
    if (upper && tangent) {
        throw InconsistentInputs("choose --upper or --tangent, not both");
    }
    const ScaledConfig cfg = resolve_scaled(config_path, inl, cmd, run);

    std::optional<Barrier> barrier;
    std::optional<TangentSolution> tangent_sol;
    if (tangent) {
        tangent_sol = solve_tangent(cfg.params, cfg.weights);
    } else if (upper) {
        barrier = upper_barrier_scaled(cfg.params, cfg.weights);
    } else {
        barrier = lower_barrier_scaled(cfg.params, cfg.weights);
    }

    std::optional<std::vector<Point>> trajectory;
    if (!profile_path.empty()) {
        const WaveProfile prof = parse_profile_csv(read_file(profile_path));
        trajectory.emplace();
        trajectory->reserve(prof.u.size());
        for (size_t i = 0; i < prof.u.size(); ++i) {
            trajectory->push_back({prof.u[i], prof.v[i]});
        }
    }

    const PlotGeometry geometry =
        build_plot(cfg.params, cfg.weights, barrier ? &*barrier : nullptr,
                   tangent_sol ? &*tangent_sol : nullptr,
                   trajectory ? &*trajectory : nullptr);
    run.write("plot.svg", render_svg(geometry));

    const json summary{
        {"svg", (*run.out_dir / "plot.svg").string()},
        {"extent", geometry.extent},
        {"paths", geometry.paths.size()},
        {"markers", geometry.markers.size()},
    };
    std::cout << summary.dump(2) << "\n";
    std::cerr << "plot written to " << (*run.out_dir / "plot.svg").string() << "\n";
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"N-barrier maximum-principle toolkit for Lotka-Volterra competition waves"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir, format = "json";
    std::string method = "newton", profile_path, axis, values_arg;
    double t_end = 60.0, slack = 0.0;
    bool require_certified = false, require_pass = false, upper = false, tangent_mode = false;
    SolverConfig solver;
    InlineScaled inl;

    auto add_common = [&](CLI::App* cmd, bool with_weights = true) {
        cmd->add_option("--config", config_path, "JSON parameter file");
        cmd->add_option("--out", out_dir, "directory for output artifacts");
        inl.add_options(cmd, with_weights);
    };

    CLI::App* bounds_cmd = app.add_subcommand("bounds", "two-sided a-priori bounds on q");
    add_common(bounds_cmd);
    bounds_cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* tangent_cmd = app.add_subcommand("tangent", "tangent-line lower bound");
    add_common(tangent_cmd);

    CLI::App* wave_cmd = app.add_subcommand("wave", "solve the traveling-wave problem");
    add_common(wave_cmd);
    wave_cmd->add_option("--L", solver.L, "half-domain length (default 50)");
    wave_cmd->add_option("--N", solver.N, "grid intervals (default 1024)");
    wave_cmd->add_option("--tol", solver.tol, "Newton tolerance (default 1e-10)");
    wave_cmd->add_option("--method", method, "newton or march")
        ->check(CLI::IsMember({"newton", "march"}));
    wave_cmd->add_option("--t-end", t_end, "march horizon (default 60)");

    CLI::App* verify_cmd = app.add_subcommand("verify", "check bounds along a profile");
    add_common(verify_cmd);
    verify_cmd->add_option("--profile", profile_path, "profile CSV")->required();
    verify_cmd->add_option("--slack", slack, "discretization slack (default: automatic)");
    verify_cmd->add_flag("--require-pass", require_pass, "exit 1 unless every bound holds");

    CLI::App* nonexist_cmd =
        app.add_subcommand("nonexist", "three-species nonexistence criterion");
    nonexist_cmd->add_option("--config", config_path, "JSON parameter file")->required();
    nonexist_cmd->add_option("--out", out_dir, "directory for output artifacts");
    nonexist_cmd->add_flag("--require-certified", require_certified,
                           "exit 1 unless nonexistence is certified");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "nonexistence verdicts along an axis");
    sweep_cmd->add_option("--config", config_path, "JSON parameter file")->required();
    sweep_cmd->add_option("--out", out_dir, "directory for output artifacts");
    sweep_cmd->add_option("--axis", axis, "parameter field to vary")->required();
    sweep_cmd->add_option("--values", values_arg, "comma-separated values")->required();
    sweep_cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* plot_cmd = app.add_subcommand("plot", "phase-plane SVG figure");
    add_common(plot_cmd);
    plot_cmd->add_flag("--upper", upper, "draw the upper barrier instead of the lower");
    plot_cmd->add_flag("--tangent", tangent_mode, "draw the tangent-line construction");
    plot_cmd->add_option("--profile", profile_path, "overlay a trajectory from a profile CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Run run;
    for (int i = 0; i < argc; ++i) run.argv.emplace_back(argv[i]);
    if (!out_dir.empty()) run.out_dir = out_dir;

    try {
        int code = 2;
        if (bounds_cmd->parsed()) {
            run.command = "bounds";
            code = cmd_bounds(config_path, inl, format, bounds_cmd, run);
        } else if (tangent_cmd->parsed()) {
            run.command = "tangent";
            code = cmd_tangent(config_path, inl, tangent_cmd, run);
        } else if (wave_cmd->parsed()) {
            run.command = "wave";
            code = cmd_wave(config_path, inl, solver, method, t_end, wave_cmd, run);
        } else if (verify_cmd->parsed()) {
            run.command = "verify";
            code = cmd_verify(config_path, inl, profile_path, slack, require_pass, verify_cmd,
                              run);
        } else if (nonexist_cmd->parsed()) {
            run.command = "nonexist";
            code = cmd_nonexist(config_path, require_certified, run);
        } else if (sweep_cmd->parsed()) {
            run.command = "sweep";
            code = cmd_sweep(config_path, axis, values_arg, format, run);
        } else if (plot_cmd->parsed()) {
            run.command = "plot";
            code = cmd_plot(config_path, inl, upper, tangent_mode, profile_path, plot_cmd, run);
        }
        run.finish();
        return code;
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace nbarrier::cli
