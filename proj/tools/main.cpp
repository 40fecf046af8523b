// supercliff: super-Clifford operator-scrambling simulator CLI.
//
// Subcommands: entropy-sweep, fit, otoc, plateau, oracle-check.
// Exit codes: 0 success, 2 configuration/usage error, 3 runtime error,
// 4 oracle-check failure.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "supercliff/oracle.h"
#include "supercliff/report.h"

namespace sc = supercliff;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::vector<size_t> n_list;
    std::string m = "1/4";
    size_t realizations = 0;  // subcommand-specific default
    uint64_t seed = 1;
    double epsilon = 10.0;
    size_t horizon = 0;  // 0 = auto
    size_t cadence = 0;  // 0 = auto
    std::string family = "parallel";
    std::string v_gates = "C3";
    std::string w0 = "zeros";
    std::string out_dir;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string config_path;
};

void add_common_flags(CLI::App *cmd, CommonOpts &opts) {
    cmd->add_option("--n", opts.n_list, "System size(s) N");
    cmd->add_option("--m", opts.m, "Subsystem fraction as p/q (default 1/4)");
    cmd->add_option("--realizations", opts.realizations, "Monte Carlo realizations");
    cmd->add_option("--seed", opts.seed, "Master seed");
    cmd->add_option("--epsilon", opts.epsilon, "Scrambling-time cutoff (default 10)");
    cmd->add_option("--horizon", opts.horizon, "Time horizon; 0 = auto");
    cmd->add_option("--cadence", opts.cadence, "Recording cadence in steps; 0 = auto");
    cmd->add_option("--family", opts.family, "Circuit family: parallel|nn");
    cmd->add_option("--v-gates", opts.v_gates, "Probe operator: C3, T3C3, identity, or custom list");
    cmd->add_option("--w0", opts.w0, "Initial operator: zeros, 1-based Y sites, or a bit string");
    cmd->add_option("--out-dir", opts.out_dir, "Output directory (default $SUPERCLIFF_OUT_DIR or .)");
    cmd->add_option("--threads", opts.threads, "Worker threads");
    cmd->add_option("--config", opts.config_path, "JSON config file (flags take precedence)");
}

// Flags beat the config file, which beats defaults. A manifest from an
// earlier run is accepted wherever a config file is: its resolved config is
// reused, which reproduces the original outputs byte for byte.
void apply_config_file(const CLI::App *cmd, CommonOpts &opts) {
    if (opts.config_path.empty()) {
        return;
    }
    json cfg = json::parse(sc::report::read_file(opts.config_path));
    if (cfg.value("schema", "") == "supercliff-manifest") {
        cfg = cfg.at("config");
    }
    auto unset = [&](const std::string &flag) { return cmd->count(flag) == 0; };
    if (cfg.contains("n") && unset("--n")) {
        opts.n_list = cfg["n"].get<std::vector<size_t>>();
    }
    if (cfg.contains("m") && unset("--m")) {
        opts.m = cfg["m"].get<std::string>();
    }
    if (cfg.contains("realizations") && unset("--realizations")) {
        opts.realizations = cfg["realizations"].get<size_t>();
    }
    if (cfg.contains("seed") && unset("--seed")) {
        opts.seed = cfg["seed"].get<uint64_t>();
    }
    if (cfg.contains("epsilon") && unset("--epsilon")) {
        opts.epsilon = cfg["epsilon"].get<double>();
    }
    if (cfg.contains("horizon") && unset("--horizon")) {
        opts.horizon = cfg["horizon"].get<size_t>();
    }
    if (cfg.contains("cadence") && unset("--cadence")) {
        opts.cadence = cfg["cadence"].get<size_t>();
    }
    if (cfg.contains("family") && unset("--family")) {
        opts.family = cfg["family"].get<std::string>();
    }
    if (cfg.contains("v_gates") && unset("--v-gates")) {
        opts.v_gates = cfg["v_gates"].get<std::string>();
    }
    if (cfg.contains("w0") && unset("--w0")) {
        opts.w0 = cfg["w0"].get<std::string>();
    }
    if (cfg.contains("threads") && unset("--threads")) {
        opts.threads = cfg["threads"].get<unsigned>();
    }
}

std::filesystem::path resolve_out_dir(const CommonOpts &opts) {
    if (!opts.out_dir.empty()) {
        return opts.out_dir;
    }
    if (const char *env = std::getenv("SUPERCLIFF_OUT_DIR")) {
        return env;
    }
    return ".";
}

json config_json(const CLI::App *cmd, const CommonOpts &opts) {
    json cfg{
        {"m", opts.m},           {"realizations", opts.realizations},
        {"seed", opts.seed},     {"epsilon", opts.epsilon},
        {"horizon", opts.horizon}, {"cadence", opts.cadence},
        {"family", opts.family}, {"threads", opts.threads},
    };
    cfg["n"] = opts.n_list;
    if (cmd->get_name() == "otoc") {
        cfg["v_gates"] = opts.v_gates;
        cfg["w0"] = opts.w0;
    }
    return cfg;
}

void write_manifest(const std::filesystem::path &out_dir,
                    const std::string &subcommand,
                    const json &cfg,
                    uint64_t master_seed,
                    const std::vector<std::string> &outputs,
                    double wall_clock_seconds) {
    json j{
        {"schema", "supercliff-manifest"},
        {"version", 1},
        {"subcommand", subcommand},
        {"code_version", sc::report::kCodeVersion},
        {"master_seed", master_seed},
        {"config", cfg},
        {"outputs", outputs},
        {"wall_clock_seconds", wall_clock_seconds},
    };
    sc::report::write_file_atomic(out_dir / "manifest.json", j.dump(2) + "\n");
}

// Independent seed stream per system size within one sweep.
uint64_t per_system_seed(uint64_t master, size_t n) {
    return sc::splitmix64(sc::splitmix64(master ^ n));
}

std::vector<sc::GateOp> parse_v_gates(const std::string &text) {
    if (text == "identity" || text.empty()) {
        return {};
    }
    if (text == "C3") {
        return {sc::GateOp::c3(0, 1, 2)};
    }
    if (text == "T3C3") {
        return {sc::GateOp::t(2), sc::GateOp::c3(0, 1, 2)};
    }
    // Custom grammar: comma-separated T@i, TINV@i, SWAP@i,j, C3@c,t1,t2
    // with 1-based qubit indices; C3 lists the control first.
    std::vector<sc::GateOp> gates;
    std::string token;
    std::istringstream in(text);
    auto parse_indices = [](const std::string &s, size_t want) {
        std::vector<uint32_t> idx;
        std::istringstream nums(s);
        std::string part;
        while (std::getline(nums, part, ',')) {
            unsigned long v = std::stoul(part);
            if (v == 0) {
                throw std::invalid_argument("gate qubit indices are 1-based");
            }
            idx.push_back(static_cast<uint32_t>(v - 1));
        }
        if (idx.size() != want) {
            throw std::invalid_argument("wrong number of qubit indices in '" + s + "'");
        }
        return idx;
    };
    // split on ';' between gates so C3's comma-separated indices survive
    while (std::getline(in, token, ';')) {
        size_t at = token.find('@');
        if (at == std::string::npos) {
            throw std::invalid_argument(
                "cannot parse probe '" + token + "' (want C3, T3C3, identity, or NAME@indices)");
        }
        std::string name = token.substr(0, at);
        std::string rest = token.substr(at + 1);
        if (name == "T") {
            gates.push_back(sc::GateOp::t(parse_indices(rest, 1)[0]));
        } else if (name == "TINV") {
            gates.push_back(sc::GateOp::t_inv(parse_indices(rest, 1)[0]));
        } else if (name == "SWAP") {
            auto idx = parse_indices(rest, 2);
            gates.push_back(sc::GateOp::swap(idx[0], idx[1]));
        } else if (name == "C3") {
            auto idx = parse_indices(rest, 3);
            gates.push_back(sc::GateOp::c3(idx[0], idx[1], idx[2]));
        } else {
            throw std::invalid_argument("unknown gate '" + name + "'");
        }
    }
    return gates;
}

sc::BasisOperatorLabel parse_w0(const std::string &text, size_t n) {
    sc::BasisOperatorLabel label = sc::BasisOperatorLabel::all_x(n);
    if (text == "zeros" || text.empty()) {
        return label;
    }
    bool binary = text.size() == n &&
                  text.find_first_not_of("01") == std::string::npos;
    if (binary) {
        label.bits = sc::BitVec::from_string(text);
        return label;
    }
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        unsigned long site = std::stoul(part);
        if (site == 0 || site > n) {
            throw std::invalid_argument("w0 site " + part + " out of range (1-based)");
        }
        label.bits.set(site - 1, true);
    }
    return label;
}

int run_entropy_sweep(const CLI::App *cmd, CommonOpts &opts) {
    apply_config_file(cmd, opts);
    if (opts.n_list.empty()) {
        throw std::invalid_argument("entropy-sweep needs at least one --n");
    }
    if (opts.realizations == 0) {
        opts.realizations = 500;
    }
    auto out_dir = resolve_out_dir(opts);
    std::filesystem::create_directories(out_dir);
    auto start = std::chrono::steady_clock::now();

    std::vector<std::string> outputs;
    std::vector<sc::report::ScramblingTimeRow> t_rows;
    for (size_t n : opts.n_list) {
        sc::EnsembleSpec spec;
        spec.n_qubits = n;
        spec.family = sc::parse_family(opts.family);
        spec.realizations = opts.realizations;
        spec.max_t = opts.horizon;
        spec.master_seed = per_system_seed(opts.seed, n);
        spec.entropy_fraction = sc::Fraction::parse(opts.m);
        spec.epsilon = opts.epsilon;
        spec.entropy_cadence = opts.cadence;
        spec = spec.resolved();
        spec.validate();

        sc::RealizationCurves curves = sc::run_realization_curves(spec, {opts.threads});
        sc::EntropyCurve curve = sc::aggregate_curves(curves);

        std::string base = "entropy_N" + std::to_string(n);
        sc::report::write_file_atomic(out_dir / (base + ".csv"),
                                      sc::report::entropy_curve_csv(curve));
        sc::report::write_file_atomic(out_dir / (base + ".meta.json"),
                                      sc::report::run_meta_json(spec));
        outputs.push_back(base + ".csv");
        outputs.push_back(base + ".meta.json");

        std::optional<double> averaged = sc::extract_scrambling_time(curve, spec.epsilon);
        t_rows.push_back({n, averaged, spec.epsilon, spec.entropy_fraction, "averaged",
                          std::nullopt, averaged ? 0u : 1u, spec.realizations});
        sc::PerRealizationTimes per = sc::per_realization_scrambling_times(curves, spec.epsilon);
        t_rows.push_back({n, per.mean, spec.epsilon, spec.entropy_fraction, "per_realization",
                          per.n_saturated > 1 ? std::optional<double>(per.std_err) : std::nullopt,
                          per.n_unsaturated, spec.realizations});
        std::cerr << "entropy-sweep: N=" << n << " done\n";
    }
    sc::report::write_file_atomic(out_dir / "scrambling_times.csv",
                                  sc::report::scrambling_times_csv(t_rows));
    outputs.push_back("scrambling_times.csv");

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(out_dir, "entropy-sweep", config_json(cmd, opts), opts.seed, outputs, wall);
    return 0;
}

int run_fit(const CLI::App *cmd,
            CommonOpts &opts,
            std::vector<std::string> curve_files,
            std::string tstar_file,
            double window_lo,
            double window_hi) {
    apply_config_file(cmd, opts);
    if (!opts.config_path.empty()) {
        // fit-specific inputs are also replayable from a config or manifest
        json cfg = json::parse(sc::report::read_file(opts.config_path));
        if (cfg.value("schema", "") == "supercliff-manifest") {
            cfg = cfg.at("config");
        }
        if (curve_files.empty() && cfg.contains("curves")) {
            curve_files = cfg["curves"].get<std::vector<std::string>>();
        }
        if (tstar_file.empty() && cfg.contains("tstar")) {
            tstar_file = cfg["tstar"].get<std::string>();
        }
        if (cmd->count("--window-lo") == 0 && cfg.contains("window_lo")) {
            window_lo = cfg["window_lo"].get<double>();
        }
        if (cmd->count("--window-hi") == 0 && cfg.contains("window_hi")) {
            window_hi = cfg["window_hi"].get<double>();
        }
    }
    if (curve_files.empty() && tstar_file.empty()) {
        throw std::invalid_argument("fit needs curve CSVs and/or --tstar");
    }
    auto out_dir = resolve_out_dir(opts);
    std::filesystem::create_directories(out_dir);
    auto start = std::chrono::steady_clock::now();

    json result{{"schema", "supercliff-fit"}, {"version", 1}};
    result["exponential_fits"] = json::array();
    for (const std::string &file : curve_files) {
        std::filesystem::path csv = file;
        std::filesystem::path meta = csv;
        meta.replace_extension();
        meta += ".meta.json";
        sc::EntropyCurve curve = sc::report::read_entropy_curve_csv(csv, meta);
        double hi = window_hi;
        if (hi <= 0) {
            auto last = sc::default_fit_window_end(curve);
            if (!last) {
                throw std::invalid_argument(
                    "curve in " + file + " has no usable fit window (saturated throughout)");
            }
            hi = *last;
        }
        sc::FitResult fit = sc::fit_exponential_saturation(curve, window_lo, hi);
        result["exponential_fits"].push_back({
            {"file", csv.filename().string()},
            {"n", curve.spec.n_qubits},
            {"m", curve.spec.entropy_fraction.to_string()},
            {"lambda", fit.params.at("lambda")},
            {"alpha", fit.params.at("alpha")},
            {"r_squared", fit.r_squared},
            {"window", {fit.window_lo, fit.window_hi}},
            {"n_points", fit.n_points},
            {"residual_rms", fit.residual_rms},
        });
    }

    result["log_fits"] = json::array();
    if (!tstar_file.empty()) {
        auto rows = sc::report::read_scrambling_times_csv(tstar_file);
        for (const char *convention : {"averaged", "per_realization"}) {
            std::vector<std::pair<double, double>> points;
            size_t skipped = 0;
            for (const auto &row : rows) {
                if (row.convention != convention) {
                    continue;
                }
                if (row.t_star) {
                    points.emplace_back(double(row.n), *row.t_star);
                } else {
                    skipped++;
                }
            }
            if (points.empty() && skipped == 0) {
                continue;
            }
            sc::FitResult fit = sc::fit_log_scaling(points);
            result["log_fits"].push_back({
                {"convention", convention},
                {"a", fit.params.at("a")},
                {"b", fit.params.at("b")},
                {"r_squared", fit.r_squared},
                {"n_points", fit.n_points},
                {"n_unsaturated_skipped", skipped},
                {"residual_rms", fit.residual_rms},
            });
        }
    }

    sc::report::write_file_atomic(out_dir / "fit.json", result.dump(2) + "\n");
    std::cout << result.dump(2) << "\n";

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json cfg = config_json(cmd, opts);
    cfg["curves"] = curve_files;
    cfg["tstar"] = tstar_file;
    cfg["window_lo"] = window_lo;
    cfg["window_hi"] = window_hi;
    write_manifest(out_dir, "fit", cfg, opts.seed, {"fit.json"}, wall);
    return 0;
}

int run_otoc(const CLI::App *cmd, CommonOpts &opts) {
    apply_config_file(cmd, opts);
    if (opts.n_list.empty()) {
        throw std::invalid_argument("otoc needs at least one --n");
    }
    if (opts.realizations == 0) {
        opts.realizations = 1000;
    }
    size_t horizon = opts.horizon ? opts.horizon : 120;
    size_t cadence = opts.cadence ? opts.cadence : 4;
    std::vector<size_t> times;
    for (size_t t = 0; t <= horizon; t += cadence) {
        times.push_back(t);
    }
    std::vector<sc::GateOp> v = parse_v_gates(opts.v_gates);

    auto out_dir = resolve_out_dir(opts);
    std::filesystem::create_directories(out_dir);
    auto start = std::chrono::steady_clock::now();

    std::vector<std::string> outputs;
    for (size_t n : opts.n_list) {
        sc::EnsembleSpec spec;
        spec.n_qubits = n;
        spec.family = sc::parse_family(opts.family);
        spec.realizations = opts.realizations;
        spec.max_t = horizon;
        spec.master_seed = per_system_seed(opts.seed, n);
        spec.entropy_fraction = sc::Fraction::parse(opts.m);
        spec.epsilon = opts.epsilon;
        spec.entropy_cadence = cadence;
        spec.validate();

        sc::BasisOperatorLabel w0 = parse_w0(opts.w0, n);
        sc::OtocTrace trace = sc::run_otoc_ensemble(spec, v, w0, times, {opts.threads});

        std::string base = "otoc_N" + std::to_string(n);
        sc::report::write_file_atomic(out_dir / (base + ".csv"), sc::report::otoc_trace_csv(trace));
        sc::report::write_file_atomic(
            out_dir / (base + ".meta.json"),
            sc::report::run_meta_json(trace.spec, trace.plateau, opts.v_gates, opts.w0));
        outputs.push_back(base + ".csv");
        outputs.push_back(base + ".meta.json");
        std::cerr << "otoc: N=" << n << " done, plateau=" << sc::report::format_double(trace.plateau)
                  << "\n";
    }

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(out_dir, "otoc", config_json(cmd, opts), opts.seed, outputs, wall);
    return 0;
}

int run_plateau(const CommonOpts &opts) {
    std::vector<sc::GateOp> v = parse_v_gates(opts.v_gates);
    size_t region = std::max<size_t>(sc::support_size(v), 1);
    double value = sc::plateau_value(v, region);
    std::cout << sc::report::format_double(value) << "\n";
    return 0;
}

int run_oracle_check(size_t max_n, size_t cases, size_t length, uint64_t seed) {
    if (max_n < 2 || max_n > 12) {
        throw std::invalid_argument("oracle-check supports 2 <= max-n <= 12");
    }
    std::vector<sc::oracle::CheckReport> reports;
    for (size_t n = 2; n <= max_n; n++) {
        reports.push_back(sc::oracle::check_tableau_stabilization(n, cases, length, seed));
    }
    for (size_t n = 2; n <= std::min<size_t>(max_n, 6); n++) {
        reports.push_back(sc::oracle::check_conjugation_equivalence(n, cases, length, seed + 1));
    }
    for (size_t n = 2; n <= max_n; n++) {
        reports.push_back(sc::oracle::check_entropy_agreement(n, cases, length, seed + 2));
    }
    for (size_t n = 3; n <= std::min<size_t>(max_n, 6); n++) {
        reports.push_back(sc::oracle::check_otoc_agreement(n, cases, seed + 3));
    }
    bool all_ok = true;
    for (const auto &r : reports) {
        std::cout << r.summary() << "\n";
        all_ok = all_ok && r.passed();
    }
    return all_ok ? 0 : 4;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"super-Clifford operator-scrambling simulator"};
    app.require_subcommand(1);

    CommonOpts sweep_opts, fit_opts, otoc_opts, plateau_opts;

    CLI::App *sweep = app.add_subcommand(
        "entropy-sweep", "Operator entanglement curves and scrambling times over N");
    add_common_flags(sweep, sweep_opts);

    CLI::App *fit = app.add_subcommand("fit", "Saturation and scaling fits from sweep CSVs");
    std::vector<std::string> fit_curves;
    std::string fit_tstar;
    double fit_window_lo = 50.0, fit_window_hi = 0.0;
    fit->add_option("curves", fit_curves, "Entropy curve CSVs (with .meta.json sidecars)");
    fit->add_option("--tstar", fit_tstar, "scrambling_times.csv for the log fit");
    fit->add_option("--window-lo", fit_window_lo, "Fit window start (default 50)");
    fit->add_option("--window-hi", fit_window_hi, "Fit window end; 0 = last unsaturated time");
    add_common_flags(fit, fit_opts);

    CLI::App *otoc = app.add_subcommand("otoc", "Out-of-time-ordered correlator ensembles");
    add_common_flags(otoc, otoc_opts);

    CLI::App *plateau = app.add_subcommand("plateau", "Late-time correlator plateau for a probe");
    plateau->add_option("--v-gates", plateau_opts.v_gates, "Probe operator");

    CLI::App *oracle = app.add_subcommand("oracle-check", "Differential checks against dense oracles");
    size_t oracle_max_n = 8, oracle_cases = 25, oracle_len = 50;
    uint64_t oracle_seed = 1;
    oracle->add_option("--max-n", oracle_max_n, "Largest system size (<= 12)");
    oracle->add_option("--cases", oracle_cases, "Cases per check");
    oracle->add_option("--len", oracle_len, "Random circuit length");
    oracle->add_option("--seed", oracle_seed, "Check seed");

    try {
        app.parse(argc, argv);
        if (sweep->parsed()) {
            return run_entropy_sweep(sweep, sweep_opts);
        }
        if (fit->parsed()) {
            return run_fit(fit, fit_opts, fit_curves, fit_tstar, fit_window_lo, fit_window_hi);
        }
        if (otoc->parsed()) {
            return run_otoc(otoc, otoc_opts);
        }
        if (plateau->parsed()) {
            return run_plateau(plateau_opts);
        }
        if (oracle->parsed()) {
            return run_oracle_check(oracle_max_n, oracle_cases, oracle_len, oracle_seed);
        }
        return 2;
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
