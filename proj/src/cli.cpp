#include "mgoe/cli.hpp"

#include "mgoe/errors.hpp"
#include "mgoe/experiment.hpp"
#include "mgoe/io.hpp"
#include "mgoe/spectral.hpp"
#include "mgoe/version.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace mgoe::cli {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + ": '" + s + "' is not a number");
    }
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + ": '" + s + "' is not an integer");
    }
}

// "start:stop:step" (stop inclusive within 1e-9) or an explicit
// comma-separated list.
std::vector<double> parse_mu_grid(const std::string& expr) {
    constexpr double snap = 1e-9;
    if (expr.find(':') != std::string::npos) {
        const auto parts = split(expr, ':');
        if (parts.size() != 3)
            throw ConfigError("--mu-grid expects start:stop:step, got '" + expr + "'");
        const double start = parse_double(parts[0], "--mu-grid start");
        const double stop = parse_double(parts[1], "--mu-grid stop");
        const double step = parse_double(parts[2], "--mu-grid step");
        if (!(step > 0.0))
            throw ConfigError("--mu-grid step must be positive");
        if (stop < start - snap)
            throw ConfigError("--mu-grid stop must not precede start");
        std::vector<double> grid;
        for (int k = 0;; ++k) {
            const double v = start + step * static_cast<double>(k);
            if (v > stop + snap)
                break;
            grid.push_back(v);
        }
        if (!grid.empty() && std::fabs(grid.back() - stop) <= snap)
            grid.back() = stop;
        return grid;
    }
    std::vector<double> grid;
    for (const auto& p : split(expr, ','))
        grid.push_back(parse_double(p, "--mu-grid value"));
    return grid;
}

std::vector<int> parse_degrees(const std::string& expr) {
    std::vector<int> degrees;
    for (const auto& p : split(expr, ','))
        degrees.push_back(parse_int(p, "--degrees value"));
    return degrees;
}

Interval parse_range(const std::string& expr) {
    const auto parts = split(expr, ':');
    if (parts.size() != 2)
        throw ConfigError("--density-range expects low:high, got '" + expr + "'");
    return {parse_double(parts[0], "--density-range low"),
            parse_double(parts[1], "--density-range high")};
}

struct Opts {
    std::string config;
    std::string out;
    std::string format = "both";
    std::optional<std::uint64_t> seed;
    std::optional<int> n, m, threads, bins, resamples;
    std::optional<double> mu, sigma, fence_k, level, nnsd_max;
    std::optional<std::string> mu_grid, degrees, extension, zero_pair, density_range;
    bool dump_spectra = false;
    bool dump_matrices = false;
    int baseline_levels = 500;
    bool equal_spacing = false;
};

void add_output_options(CLI::App* cmd, Opts& o) {
    cmd->add_option("--out", o.out, "Output directory (default: $MGOE_OUTPUT_DIR or .)");
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "both"}));
}

void add_ensemble_options(CLI::App* cmd, Opts& o) {
    cmd->add_option("--config", o.config, "JSON config file");
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--n", o.n, "Base matrix size N");
    cmd->add_option("--m", o.m, "Ensemble size M");
    auto* mu = cmd->add_option("--mu", o.mu, "Single mixing parameter in (0,1]");
    auto* grid = cmd->add_option("--mu-grid", o.mu_grid,
                                 "Mixing grid, start:stop:step or comma list");
    mu->excludes(grid);
    grid->excludes(mu);
    cmd->add_option("--sigma", o.sigma, "Diagonal standard deviation");
    cmd->add_option("--threads", o.threads, "Worker threads");
    add_output_options(cmd, o);
}

void add_analysis_options(CLI::App* cmd, Opts& o) {
    cmd->add_option("--bootstrap", o.resamples, "Bootstrap resamples");
    cmd->add_option("--level", o.level, "Bootstrap confidence level");
    cmd->add_option("--fence-k", o.fence_k, "Outlier fence multiplier (inf disables)");
    cmd->add_option("--degrees", o.degrees, "Unfolding degree candidates, comma list");
    cmd->add_option("--extension", o.extension, "Spectrum extension scheme")
        ->check(CLI::IsMember({"wrap", "cyclic"}));
    cmd->add_option("--zero-pair", o.zero_pair, "Zero-spacing pair rule")
        ->check(CLI::IsMember({"keep", "drop"}));
}

ExperimentPlan make_plan(const Opts& o) {
    ExperimentPlan plan;
    if (!o.config.empty())
        plan = load_plan_file(o.config);
    if (o.n)
        plan.base_size = *o.n;
    if (o.m)
        plan.ensemble_size = *o.m;
    if (o.sigma)
        plan.sigma = *o.sigma;
    if (o.seed)
        plan.seed = *o.seed;
    if (o.threads)
        plan.threads = *o.threads;
    if (o.mu)
        plan.mu_grid = {*o.mu};
    if (o.mu_grid)
        plan.mu_grid = parse_mu_grid(*o.mu_grid);
    if (o.resamples)
        plan.bootstrap.resamples = *o.resamples;
    if (o.level)
        plan.bootstrap.level = *o.level;
    if (o.fence_k)
        plan.fence_k = *o.fence_k;
    if (o.degrees)
        plan.degree_candidates = parse_degrees(*o.degrees);
    if (o.extension)
        plan.extension = (*o.extension == "wrap") ? ExtensionScheme::SymmetricWrap
                                                  : ExtensionScheme::CyclicTail;
    if (o.zero_pair)
        plan.zero_rule = (*o.zero_pair == "keep") ? ZeroPairRule::Keep : ZeroPairRule::Drop;
    if (o.density_range)
        plan.histogram.density_range = parse_range(*o.density_range);
    if (o.nnsd_max)
        plan.histogram.nnsd_max = *o.nnsd_max;
    return plan;
}

fs::path resolve_out_dir(const Opts& o) {
    fs::path dir;
    if (!o.out.empty()) {
        dir = o.out;
    } else if (const char* env = std::getenv("MGOE_OUTPUT_DIR"); env && *env) {
        dir = env;
    } else {
        dir = ".";
    }
    try {
        fs::create_directories(dir);
    } catch (const fs::filesystem_error& e) {
        throw IoError("cannot create output directory " + dir.string() + ": " + e.what());
    }
    return dir;
}

class Emitter {
public:
    explicit Emitter(fs::path dir) : dir_(std::move(dir)) {}

    void emit(const std::string& name, const std::string& content) {
        const fs::path p = dir_ / name;
        if (p.has_parent_path()) {
            try {
                fs::create_directories(p.parent_path());
            } catch (const fs::filesystem_error& e) {
                throw IoError(std::string("cannot create directory: ") + e.what());
            }
        }
        write_text_file(p, content);
        manifest_.push_back(name);
    }

    void print_manifest() const {
        for (const auto& name : manifest_)
            std::cout << "wrote " << (dir_ / name).string() << "\n";
    }

private:
    fs::path dir_;
    std::vector<std::string> manifest_;
};

bool want_csv(const Opts& o) { return o.format != "json"; }
bool want_json(const Opts& o) { return o.format != "csv"; }

enum class FixedKind { Density, Nnsd, GapRatio };

int cmd_fixed(const Opts& o, FixedKind kind) {
    ExperimentPlan plan = make_plan(o);
    switch (kind) {
    case FixedKind::Density:
        plan.analyses = {true, false, false};
        if (o.bins)
            plan.histogram.density_bins = *o.bins;
        break;
    case FixedKind::Nnsd:
        plan.analyses = {false, true, false};
        if (o.bins)
            plan.histogram.nnsd_bins = *o.bins;
        break;
    case FixedKind::GapRatio:
        plan.analyses = {false, false, true};
        break;
    }
    plan.validate();

    std::vector<FixedMuResult> results;
    results.reserve(plan.mu_grid.size());
    for (double mu : plan.mu_grid)
        results.push_back(run_fixed_mu(plan, mu));

    Emitter out(resolve_out_dir(o));
    out.emit("effective_config.json", serialize_plan(plan));
    if (want_csv(o)) {
        switch (kind) {
        case FixedKind::Density:
            out.emit("density.csv", density_csv(results));
            break;
        case FixedKind::Nnsd:
            out.emit("nnsd.csv", nnsd_csv(results));
            break;
        case FixedKind::GapRatio:
            out.emit("gapratio.csv", gapratio_csv(results));
            break;
        }
    }
    if (want_json(o))
        out.emit("results.json", results_json(plan, results, std::nullopt, {}));
    out.print_manifest();
    return 0;
}

// Executes whatever analysis selection the plan itself carries; with nothing
// selected only the config echo is written.
int cmd_run(const Opts& o) {
    ExperimentPlan plan = make_plan(o);
    plan.validate();

    Emitter out(resolve_out_dir(o));
    out.emit("effective_config.json", serialize_plan(plan));
    if (plan.analyses.any()) {
        std::vector<FixedMuResult> results;
        results.reserve(plan.mu_grid.size());
        for (double mu : plan.mu_grid)
            results.push_back(run_fixed_mu(plan, mu));
        if (want_csv(o)) {
            if (plan.analyses.density)
                out.emit("density.csv", density_csv(results));
            if (plan.analyses.nnsd)
                out.emit("nnsd.csv", nnsd_csv(results));
            if (plan.analyses.gap_ratio)
                out.emit("gapratio.csv", gapratio_csv(results));
        }
        if (want_json(o))
            out.emit("results.json", results_json(plan, results, std::nullopt, {}));
    }
    out.print_manifest();
    return 0;
}

int cmd_sample(const Opts& o) {
    ExperimentPlan plan = make_plan(o);
    plan.analyses = {false, false, false};
    plan.validate();

    Emitter out(resolve_out_dir(o));

    std::vector<SampleDump> dumps;
    dumps.reserve(plan.mu_grid.size());
    for (double mu : plan.mu_grid) {
        EnsembleConfig cfg{plan.base_size, plan.ensemble_size, mu, plan.sigma,
                           mu_scope_seed(plan.seed, mu)};
        SampleDump d;
        d.mu = mu;
        d.sizes = draw_sizes(cfg);
        if (o.dump_spectra || o.dump_matrices) {
            for (int i = 0; i < plan.ensemble_size; ++i) {
                const SymmetricMatrix a =
                    sample_member(cfg, d.sizes[static_cast<std::size_t>(i)], i);
                if (o.dump_matrices) {
                    std::ostringstream name;
                    name << "matrices/mu" << mu << "_member" << i << ".csv";
                    std::string body;
                    const auto& e = a.entries();
                    for (Eigen::Index r = 0; r < e.rows(); ++r) {
                        for (Eigen::Index c = 0; c < e.cols(); ++c) {
                            if (c)
                                body += ',';
                            body += format_float(e(r, c));
                        }
                        body += '\n';
                    }
                    out.emit(name.str(), body);
                }
                if (o.dump_spectra)
                    d.spectra.push_back(eigenvalues_symmetric(a).values);
            }
        }
        dumps.push_back(std::move(d));
    }

    out.emit("effective_config.json", serialize_plan(plan));
    if (want_csv(o)) {
        out.emit("sizes.csv", sizes_csv(dumps));
        if (o.dump_spectra)
            out.emit("spectra.csv", spectra_csv(dumps));
    }
    if (want_json(o))
        out.emit("results.json", results_json(plan, {}, std::nullopt, dumps));
    out.print_manifest();
    return 0;
}

int cmd_sweep(const Opts& o) {
    ExperimentPlan plan = make_plan(o);
    plan.analyses = {false, false, true};
    plan.validate();

    const SweepResult sweep = run_sweep(plan);

    Emitter out(resolve_out_dir(o));
    out.emit("effective_config.json", serialize_plan(plan));
    if (want_csv(o))
        out.emit("sweep.csv", sweep_csv(sweep));
    if (want_json(o))
        out.emit("results.json", results_json(plan, {}, sweep, {}));
    out.print_manifest();
    return 0;
}

int cmd_baseline(const Opts& o) {
    BaselineConfig cfg;
    cfg.levels = o.baseline_levels;
    if (o.m)
        cfg.members = *o.m;
    if (o.seed)
        cfg.seed = *o.seed;
    cfg.equal_spacing = o.equal_spacing;
    if (o.resamples)
        cfg.bootstrap.resamples = *o.resamples;
    if (o.level)
        cfg.bootstrap.level = *o.level;

    const GapRatioResult result =
        poisson_baseline(cfg.levels, cfg.members, cfg.seed, cfg.equal_spacing, cfg.bootstrap);

    Emitter out(resolve_out_dir(o));
    out.emit("effective_config.json", serialize_baseline_config(cfg));
    if (want_csv(o))
        out.emit("baseline.csv", baseline_csv(result));
    if (want_json(o))
        out.emit("results.json", baseline_results_json(cfg, result));
    out.print_manifest();
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Mixed Gaussian orthogonal ensembles: sampling and spectral statistics"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    Opts o;

    CLI::App* sample = app.add_subcommand("sample", "Draw an ensemble and dump sizes/spectra");
    add_ensemble_options(sample, o);
    sample->add_flag("--dump-spectra", o.dump_spectra, "Write raw eigenvalues");
    sample->add_flag("--dump-matrices", o.dump_matrices, "Write raw matrices (large)");

    CLI::App* runcmd = app.add_subcommand("run", "Run the analyses selected in the config");
    add_ensemble_options(runcmd, o);
    add_analysis_options(runcmd, o);
    runcmd->add_option("--density-range", o.density_range,
                       "Density histogram window low:high");

    CLI::App* density = app.add_subcommand("density", "Scaled spectral density with bootstrap band");
    add_ensemble_options(density, o);
    add_analysis_options(density, o);
    density->add_option("--bins", o.bins, "Histogram bins");
    density->add_option("--density-range", o.density_range,
                        "Histogram window low:high (default: pooled percentiles)");

    CLI::App* nnsd = app.add_subcommand("nnsd", "Unfolded nearest-neighbour spacing histogram");
    add_ensemble_options(nnsd, o);
    add_analysis_options(nnsd, o);
    nnsd->add_option("--bins", o.bins, "Histogram bins");
    nnsd->add_option("--nnsd-max", o.nnsd_max, "Histogram upper edge");

    CLI::App* gapratio = app.add_subcommand("gapratio", "Adjacent-gap ratios per member");
    add_ensemble_options(gapratio, o);
    add_analysis_options(gapratio, o);

    CLI::App* sweep = app.add_subcommand("sweep", "Mean gap ratio across the mixing grid");
    add_ensemble_options(sweep, o);
    add_analysis_options(sweep, o);

    CLI::App* baseline = app.add_subcommand("baseline", "Uncorrelated-level control ensemble");
    baseline->add_option("--levels", o.baseline_levels, "Levels per member");
    baseline->add_option("--m", o.m, "Ensemble size M");
    baseline->add_option("--seed", o.seed, "Master seed");
    baseline->add_flag("--equal-spacing", o.equal_spacing,
                       "Picket fence instead of exponential spacings");
    baseline->add_option("--bootstrap", o.resamples, "Bootstrap resamples");
    baseline->add_option("--level", o.level, "Bootstrap confidence level");
    add_output_options(baseline, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) // --help / --version
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (sample->parsed())
            return cmd_sample(o);
        if (runcmd->parsed())
            return cmd_run(o);
        if (density->parsed())
            return cmd_fixed(o, FixedKind::Density);
        if (nnsd->parsed())
            return cmd_fixed(o, FixedKind::Nnsd);
        if (gapratio->parsed())
            return cmd_fixed(o, FixedKind::GapRatio);
        if (sweep->parsed())
            return cmd_sweep(o);
        if (baseline->parsed())
            return cmd_baseline(o);
        std::cerr << "mgoe: usage error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "mgoe: config error: " << e.what() << "\n";
        return 3;
    } catch (const ContractError& e) {
        std::cerr << "mgoe: config error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "mgoe: numerical error: " << e.what() << "\n";
        return 4;
    } catch (const IoError& e) {
        std::cerr << "mgoe: io error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "mgoe: internal error: " << e.what() << "\n";
        return 1;
    }
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("mgoe");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace mgoe::cli
