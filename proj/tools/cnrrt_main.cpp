#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cnrrt/bench.hpp"
#include "cnrrt/config.hpp"
#include "cnrrt/errors.hpp"
#include "cnrrt/netpbm.hpp"
#include "cnrrt/report.hpp"

namespace fs = std::filesystem;
using namespace cnrrt;

namespace
{

enum ExitCode
{
    kExitOk = 0,
    kExitNoPath = 1,
    kExitUsage = 2,
    kExitIo = 3,
};

/// Flag values are copied over the config file only when given explicitly.
struct Overrides
{
    std::vector<std::pair<CLI::Option*, std::function<void(PlannerConfig&)>>> setters;

    template <typename T>
    void add(CLI::App* app, const std::string& name, T PlannerConfig::*field, const std::string& help)
    {
        auto value = std::make_shared<T>(PlannerConfig{}.*field);
        CLI::Option* opt = app->add_option(name, *value, help)->capture_default_str();
        setters.emplace_back(opt, [value, field](PlannerConfig& cfg) { cfg.*field = *value; });
    }

    void apply(PlannerConfig& cfg) const
    {
        for (const auto& [opt, set] : setters)
        {
            if (opt->count() > 0)
            {
                set(cfg);
            }
        }
    }
};

void add_planner_flags(CLI::App* app, Overrides& o)
{
    o.add(app, "--step", &PlannerConfig::step, "Steering step size");
    o.add(app, "--near-radius", &PlannerConfig::near_radius, "Parent selection and rewiring radius");
    o.add(app, "--max-iterations", &PlannerConfig::max_iterations, "Iteration cap");
    o.add(app, "--alpha", &PlannerConfig::alpha, "Mask sampling ratio of the neural baselines");
    o.add(app, "--alpha-pred", &PlannerConfig::alpha_pred, "Predicted corner sampling ratio");
    o.add(app, "--alpha-explore", &PlannerConfig::alpha_explore, "Outside-hull corner sampling ratio");
    o.add(app, "--stall-window", &PlannerConfig::stall_window, "Early stop window (iterations)");
    o.add(app, "--stall-tolerance", &PlannerConfig::stall_tolerance, "Early stop cost tolerance");
    o.add(app, "--goal-tolerance", &PlannerConfig::goal_tolerance, "Goal connection radius");
    o.add(app, "--goal-bias", &PlannerConfig::goal_bias, "Goal sampling probability");
    o.add(app, "--rc", &PlannerConfig::safety_margin, "Safety margin (inflation radius)");
    o.add(app, "--check-invariants", &PlannerConfig::check_invariants, "Validate the tree after every iteration");
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        return;
    }
    write_file(path, text);
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
    {
        throw IoError("cannot create '" + dir.string() + "': " + ec.message());
    }
}

// genmaps -------------------------------------------------------------------

struct GenmapsArgs
{
    std::uint64_t seed = 0;
    std::string difficulty = "medium";
    int count = 6;
    int width = 224;
    int height = 224;
    double rc = kDefaultSafetyMargin;
    std::string out;
};

int run_genmaps(const GenmapsArgs& a)
{
    const auto d = parse_difficulty(a.difficulty);
    if (!d)
    {
        throw ConfigError("unknown difficulty '" + a.difficulty + "'");
    }
    ensure_dir(a.out);
    for (int i = 0; i < a.count; ++i)
    {
        const GridMap map = generate_map(combine_seed(a.seed, static_cast<std::uint64_t>(i)), *d, a.width, a.height, a.rc);
        char name[64];
        std::snprintf(name, sizeof name, "%s_%03d.ppm", a.difficulty.c_str(), i);
        save_map(map, fs::path(a.out) / name);
    }
    return kExitOk;
}

// corners / inflate ---------------------------------------------------------

struct MapArgs
{
    std::string map;
    double rc = kDefaultSafetyMargin;
    std::string out;
};

int run_corners(const MapArgs& a)
{
    const GridMap inflated = inflate(load_map(a.map), a.rc);
    std::string csv = "row,col\n";
    for (const Cell& c : extract_convex_corners(inflated))
    {
        csv += std::to_string(c.row) + "," + std::to_string(c.col) + "\n";
    }
    write_output(a.out, csv);
    return kExitOk;
}

int run_inflate(const MapArgs& a)
{
    if (a.out.empty())
    {
        throw ConfigError("inflate needs --out");
    }
    save_map(inflate(load_map(a.map), a.rc), a.out);
    return kExitOk;
}

// plan ----------------------------------------------------------------------

struct PlanArgs
{
    std::string map;
    std::string planner = "convex_neural";
    std::string mask;
    bool oracle = false;
    std::uint64_t seed = 0;
    std::string config;
    std::string out;
    std::string svg;
};

int run_plan(const PlanArgs& a, const Overrides& overrides)
{
    const auto kind = parse_planner(a.planner);
    if (!kind)
    {
        throw ConfigError("unknown planner '" + a.planner + "'");
    }
    if (needs_guidance(*kind) && a.mask.empty() && !a.oracle)
    {
        throw ConfigError("planner '" + a.planner + "' needs --mask or --oracle");
    }
    if (!a.mask.empty() && a.oracle)
    {
        throw ConfigError("--mask and --oracle are mutually exclusive");
    }

    PlannerConfig cfg = a.config.empty() ? PlannerConfig{} : load_suite_config(a.config).planner;
    overrides.apply(cfg);
    cfg.seed = a.seed;
    cfg.validate();

    MapEntry entry{fs::path(a.map).stem().string(), load_map(a.map), std::nullopt};
    if (!a.mask.empty())
    {
        entry.mask = load_mask(a.mask, entry.map);
    }
    RunRecord rec;
    if (*kind == PlannerKind::rrt_star || *kind == PlannerKind::visibility)
    {
        const GridMap inflated = inflate(entry.map, cfg.safety_margin);
        rec = *kind == PlannerKind::rrt_star ? plan_rrt_star(inflated, cfg) : plan_visibility_astar(inflated);
    }
    else
    {
        std::optional<PreparedMap> prepared;
        try
        {
            prepared = prepare_map(entry, cfg.safety_margin);
        }
        catch (const NoPathError& e)
        {
            std::cerr << "error: " << e.what() << "\n";
            write_output(a.out, run_record_json(RunRecord{}));
            return kExitNoPath;
        }
        rec = run_trial(*prepared, *kind, cfg);
    }

    write_output(a.out, run_record_json(rec));
    if (!a.svg.empty())
    {
        std::vector<PathPlan> paths;
        if (rec.path)
        {
            paths.push_back(*rec.path);
        }
        write_file(a.svg, render_paths_svg(entry.map, paths));
    }
    return rec.success ? kExitOk : kExitNoPath;
}

// dataset -------------------------------------------------------------------

struct DatasetArgs
{
    DatasetSpec spec;
    std::string difficulty = "medium";
    std::string out;
};

int run_dataset(DatasetArgs a)
{
    const auto d = parse_difficulty(a.difficulty);
    if (!d)
    {
        throw ConfigError("unknown difficulty '" + a.difficulty + "'");
    }
    a.spec.difficulty = *d;
    const auto records = dataset_export(a.spec, a.out);
    std::cout << "wrote " << records.size() << " samples to " << a.out << "\n";
    return kExitOk;
}

// bench ---------------------------------------------------------------------

struct BenchArgs
{
    std::string suite;
    std::string out = "bench_out";
    int jobs = 0; // 0 keeps the suite value
};

SuiteConfig bench_config(const BenchArgs& a)
{
    SuiteConfig cfg = a.suite.empty() ? SuiteConfig{} : load_suite_config(a.suite);
    if (a.jobs > 0)
    {
        cfg.jobs = a.jobs;
    }
    return cfg;
}

int run_bench_run(const BenchArgs& a)
{
    const SuiteConfig cfg = bench_config(a);
    const ScenarioSuite suite = build_suite(cfg);
    const SuiteResult result = run_suite(suite);
    ensure_dir(a.out);
    write_file(fs::path(a.out) / "trials.csv", trials_csv(result.trials));
    write_file(fs::path(a.out) / "stats.csv", stats_csv(result.stats));

    std::vector<AggregateStats> pooled;
    for (const PlannerEntry& p : suite.planners)
    {
        std::vector<const RunRecord*> recs;
        for (const TrialRecord& t : result.trials)
        {
            if (t.planner == p.label)
            {
                recs.push_back(&t.record);
            }
        }
        AggregateStats s = summarize(recs);
        s.map = "all";
        s.planner = p.label;
        pooled.push_back(s);
    }
    write_file(fs::path(a.out) / "summary.csv", stats_csv(pooled));
    std::cout << stats_csv(pooled);
    return kExitOk;
}

int run_bench_sweep(const BenchArgs& a)
{
    const SuiteConfig cfg = bench_config(a);
    const auto rows = sensitivity_sweep(build_suite(cfg), sweep_grid(cfg));
    ensure_dir(a.out);
    write_file(fs::path(a.out) / "sweep.csv", sweep_csv(rows));
    std::cout << sweep_csv(rows);
    return kExitOk;
}

int run_bench_converge(const BenchArgs& a)
{
    const SuiteConfig cfg = bench_config(a);
    const ScenarioSuite suite = build_suite(cfg);
    ensure_dir(a.out);
    std::string summary = "map,planner,solved_seeds,seeds,final_cost,iters_to_5pct\n";
    for (const MapEntry& m : suite.maps)
    {
        const auto curves =
            convergence_trace(m, suite.planners, cfg.convergence_seeds, suite.seed, suite.safety_margin, suite.jobs);
        write_file(fs::path(a.out) / ("convergence_" + m.id + ".csv"), convergence_csv(curves));
        write_file(fs::path(a.out) / ("convergence_" + m.id + ".svg"), render_convergence_svg(curves));
        for (const ConvergenceCurve& c : curves)
        {
            summary += m.id + "," + c.planner + "," + std::to_string(c.solved_seeds) + "," + std::to_string(c.seeds) +
                       "," + format_number(c.final_cost()) + "," + std::to_string(c.iterations_to_within(0.05)) + "\n";
        }
    }
    write_file(fs::path(a.out) / "convergence_summary.csv", summary);
    std::cout << summary;
    return kExitOk;
}

int run_bench_noise(const BenchArgs& a)
{
    const SuiteConfig cfg = bench_config(a);
    const auto rows = robustness_study(build_suite(cfg), noise_specs(cfg));
    ensure_dir(a.out);
    write_file(fs::path(a.out) / "robustness.csv", robustness_csv(rows));
    std::cout << robustness_csv(rows);
    return kExitOk;
}

void add_bench_flags(CLI::App* cmd, BenchArgs& a)
{
    cmd->add_option("--suite", a.suite, "Suite config file (key = value or JSON)");
    cmd->add_option("--out", a.out, "Output directory")->capture_default_str();
    cmd->add_option("--jobs", a.jobs, "Worker threads (0 keeps the suite value)")->capture_default_str();
}

std::string suite_keys_help()
{
    std::string keys;
    for (const std::string& k : suite_config_keys())
    {
        keys += (keys.empty() ? "" : ", ") + k;
    }
    return "Suite config keys: " + keys;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Convex-Neural RRT* grid planning: maps, planners, datasets and benchmarks"};
    app.require_subcommand(1);
    app.get_formatter()->column_width(36);
    app.footer("Exit codes: 0 success, 1 no path, 2 usage or config error, 3 I/O error.");

    GenmapsArgs gen;
    CLI::App* genmaps = app.add_subcommand("genmaps", "Generate benchmark maps as PPM files");
    genmaps->add_option("--seed", gen.seed, "Base seed")->capture_default_str();
    genmaps->add_option("--difficulty", gen.difficulty, "sparse, medium or hard")->capture_default_str();
    genmaps->add_option("--count", gen.count, "Number of maps")->capture_default_str();
    genmaps->add_option("--width", gen.width, "Grid width")->capture_default_str();
    genmaps->add_option("--height", gen.height, "Grid height")->capture_default_str();
    genmaps->add_option("--rc", gen.rc, "Safety margin used to validate the query")->capture_default_str();
    genmaps->add_option("--out", gen.out, "Output directory")->required();

    MapArgs corner_args;
    CLI::App* corners = app.add_subcommand("corners", "Write convex corners of the inflated map as CSV");
    corners->add_option("--map", corner_args.map, "Input PPM map")->required();
    corners->add_option("--rc", corner_args.rc, "Inflation radius")->capture_default_str();
    corners->add_option("--out", corner_args.out, "Output CSV (stdout when omitted)");

    MapArgs inflate_args;
    CLI::App* inflate_cmd = app.add_subcommand("inflate", "Write the inflated map as PPM");
    inflate_cmd->add_option("--map", inflate_args.map, "Input PPM map")->required();
    inflate_cmd->add_option("--rc", inflate_args.rc, "Inflation radius")->capture_default_str();
    inflate_cmd->add_option("--out", inflate_args.out, "Output PPM")->required();

    PlanArgs plan_args;
    Overrides overrides;
    CLI::App* plan = app.add_subcommand("plan", "Plan one query and write the run record as JSON");
    plan->add_option("--map", plan_args.map, "Input PPM map")->required();
    plan->add_option("--planner", plan_args.planner, "rrt_star, neural, neural_informed, convex_neural or visibility")
        ->capture_default_str();
    plan->add_option("--mask", plan_args.mask, "Predicted guidance mask (PGM)");
    plan->add_flag("--oracle", plan_args.oracle, "Use guidance derived from the visibility path");
    plan->add_option("--seed", plan_args.seed, "Planner seed")->capture_default_str();
    plan->add_option("--config", plan_args.config, "Planner settings file; flags take precedence");
    plan->add_option("--out", plan_args.out, "Output JSON (stdout when omitted)");
    plan->add_option("--svg", plan_args.svg, "Optional SVG rendering of the path");
    add_planner_flags(plan, overrides);

    DatasetArgs ds;
    CLI::App* dataset = app.add_subcommand("dataset", "Training data utilities");
    dataset->require_subcommand(1);
    CLI::App* exporter = dataset->add_subcommand("export", "Export maps, region labels and a manifest");
    exporter->add_option("--seed", ds.spec.seed, "Base seed")->capture_default_str();
    exporter->add_option("--count", ds.spec.count, "Number of maps")->capture_default_str();
    exporter->add_option("--pairs", ds.spec.pairs_per_map, "Start/goal pairs per map")->capture_default_str();
    exporter->add_option("--difficulty", ds.difficulty, "sparse, medium or hard")->capture_default_str();
    exporter->add_option("--width", ds.spec.width, "Grid width")->capture_default_str();
    exporter->add_option("--height", ds.spec.height, "Grid height")->capture_default_str();
    exporter->add_option("--rc", ds.spec.safety_margin, "Safety margin")->capture_default_str();
    exporter->add_option("--label-radius", ds.spec.label_radius, "Waypoint label radius")->capture_default_str();
    exporter->add_option("--out", ds.out, "Output directory")->required();

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Benchmark protocols over a scenario suite");
    bench->require_subcommand(1);
    bench->footer(suite_keys_help());
    CLI::App* bench_run = bench->add_subcommand("run", "All planners on every map; trials, stats and summary CSV");
    CLI::App* bench_sweep = bench->add_subcommand("sweep", "Convex-neural alpha_pred x alpha_explore sweep");
    CLI::App* bench_converge = bench->add_subcommand("converge", "Mean best-cost curves per map");
    CLI::App* bench_noise = bench->add_subcommand("noise", "Robustness to corrupted predicted corners");
    for (CLI::App* cmd : {bench_run, bench_sweep, bench_converge, bench_noise})
    {
        add_bench_flags(cmd, bench_args);
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        if (*genmaps)
        {
            return run_genmaps(gen);
        }
        if (*corners)
        {
            return run_corners(corner_args);
        }
        if (*inflate_cmd)
        {
            return run_inflate(inflate_args);
        }
        if (*plan)
        {
            return run_plan(plan_args, overrides);
        }
        if (*exporter)
        {
            return run_dataset(ds);
        }
        if (*bench_run)
        {
            return run_bench_run(bench_args);
        }
        if (*bench_sweep)
        {
            return run_bench_sweep(bench_args);
        }
        if (*bench_converge)
        {
            return run_bench_converge(bench_args);
        }
        if (*bench_noise)
        {
            return run_bench_noise(bench_args);
        }
    }
    catch (const ConfigError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const DimensionMismatch& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const IoError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    catch (const FormatError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    catch (const NoPathError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoPath;
    }
    catch (const GenerationError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoPath;
    }
    return kExitUsage;
}
