#include "cnrrt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "cnrrt/errors.hpp"
#include "cnrrt/rng.hpp"

namespace cnrrt
{

namespace
{

struct MeanStd
{
    double mean = 0.0;
    double std = 0.0;
};

// Sample standard deviation; zero for fewer than two values.
MeanStd mean_std(const std::vector<double>& v)
{
    MeanStd out;
    if (v.empty())
    {
        return out;
    }
    double sum = 0.0;
    for (double x : v)
    {
        sum += x;
    }
    out.mean = sum / static_cast<double>(v.size());
    if (v.size() > 1)
    {
        double ss = 0.0;
        for (double x : v)
        {
            ss += (x - out.mean) * (x - out.mean);
        }
        out.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return out;
}

double percent_delta(double value, double baseline)
{
    return baseline == 0.0 ? 0.0 : (value - baseline) / baseline * 100.0;
}

std::vector<PreparedMap> prepare_all(const ScenarioSuite& suite)
{
    std::vector<std::optional<PreparedMap>> slots(suite.maps.size());
    std::vector<std::string> errors(suite.maps.size());
    parallel_for(suite.maps.size(), suite.jobs, [&](std::size_t i) {
        try
        {
            slots[i] = prepare_map(suite.maps[i], suite.safety_margin);
        }
        catch (const std::exception& e)
        {
            errors[i] = e.what();
        }
    });
    std::vector<PreparedMap> out;
    for (std::size_t i = 0; i < slots.size(); ++i)
    {
        if (!slots[i])
        {
            throw ConfigError("map '" + suite.maps[i].id + "' cannot be prepared: " + errors[i]);
        }
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

TrialRecord execute(const PreparedMap& map, const std::string& label, PlannerKind kind, PlannerConfig cfg,
                    std::uint64_t seed, int trial)
{
    TrialRecord t;
    t.map = map.id;
    t.planner = label;
    t.trial = trial;
    t.seed = seed;
    cfg.seed = seed;
    try
    {
        t.record = run_trial(map, kind, cfg);
    }
    catch (const std::exception& e)
    {
        t.record = RunRecord{};
        t.error = e.what();
    }
    return t;
}

// Every (map, trial) of one planner configuration, in map-then-trial order.
std::vector<TrialRecord> run_grid(const ScenarioSuite& suite, const std::vector<PreparedMap>& maps,
                                  const std::string& label, PlannerKind kind, const PlannerConfig& cfg)
{
    const std::size_t trials = static_cast<std::size_t>(suite.trials_per_map);
    std::vector<TrialRecord> out(maps.size() * trials);
    parallel_for(out.size(), suite.jobs, [&](std::size_t i) {
        const PreparedMap& m = maps[i / trials];
        const int t = static_cast<int>(i % trials);
        out[i] = execute(m, label, kind, cfg, trial_seed(suite.seed, m.id, kind, t), t);
    });
    return out;
}

std::vector<const RunRecord*> records_of(const std::vector<TrialRecord>& trials)
{
    std::vector<const RunRecord*> out;
    out.reserve(trials.size());
    for (const TrialRecord& t : trials)
    {
        out.push_back(&t.record);
    }
    return out;
}

PlannerConfig convex_config(const ScenarioSuite& suite)
{
    for (const PlannerEntry& p : suite.planners)
    {
        if (p.kind == PlannerKind::convex_neural)
        {
            return p.config;
        }
    }
    PlannerConfig cfg;
    cfg.safety_margin = suite.safety_margin;
    return cfg;
}

} // namespace

void ScenarioSuite::validate() const
{
    if (planners.empty())
    {
        throw ConfigError("suite has no planners");
    }
    if (trials_per_map < 1)
    {
        throw ConfigError("trials_per_map must be at least 1");
    }
    if (jobs < 1)
    {
        throw ConfigError("jobs must be at least 1");
    }
    if (!(safety_margin >= 0.0))
    {
        throw ConfigError("safety_margin must be non-negative");
    }
    for (const PlannerEntry& p : planners)
    {
        p.config.validate();
    }
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn)
{
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
        pool.emplace_back([&]() {
            for (std::size_t i = next++; i < n; i = next++)
            {
                fn(i);
            }
        });
    }
}

PreparedMap prepare_map(const MapEntry& entry, double safety_margin)
{
    PreparedMap out{entry.id,
                    inflate(entry.map, safety_margin),
                    {},
                    GuidanceMask(entry.map.width(), entry.map.height()),
                    GuidanceMask(entry.map.width(), entry.map.height()),
                    {}};
    out.corners = extract_convex_corners(out.inflated);
    if (entry.mask)
    {
        if (!entry.mask->matches(entry.map))
        {
            throw DimensionMismatch("mask for map '" + entry.id + "' has the wrong dimensions");
        }
        out.region_mask = *entry.mask;
        out.corridor_mask = *entry.mask;
    }
    else
    {
        const PathPlan path = visibility_path(out.inflated);
        out.region_mask = waypoint_region_mask(out.inflated, path, kOracleRegionRadius);
        out.corridor_mask = path_corridor_mask(out.inflated, path, kOracleRegionRadius);
    }
    out.predicted = filter_predicted_corners(out.region_mask, out.corners);
    return out;
}

std::uint64_t trial_seed(std::uint64_t suite_seed, std::string_view map_id, PlannerKind kind, int trial)
{
    return combine_seed(suite_seed, hash_name(map_id), hash_name(to_string(kind)), static_cast<std::uint64_t>(trial));
}

RunRecord run_trial(const PreparedMap& map, PlannerKind kind, const PlannerConfig& cfg)
{
    switch (kind)
    {
    case PlannerKind::rrt_star:
        return plan_rrt_star(map.inflated, cfg);
    case PlannerKind::neural:
        return plan_neural(map.inflated, map.corridor_mask, cfg);
    case PlannerKind::neural_informed:
        return plan_neural_informed(map.inflated, map.corridor_mask, cfg);
    case PlannerKind::convex_neural:
        return convex_neural_plan_with_corners(map.inflated, map.predicted, cfg);
    case PlannerKind::visibility:
        return plan_visibility_astar(map.inflated);
    }
    throw ConfigError("unknown planner kind");
}

AggregateStats summarize(const std::vector<const RunRecord*>& records)
{
    AggregateStats s;
    std::vector<double> lengths;
    std::vector<double> smooth;
    std::vector<double> times;
    double iterations = 0.0;
    for (const RunRecord* r : records)
    {
        ++s.trials;
        times.push_back(r->wall_time);
        iterations += r->iterations_used;
        if (r->success)
        {
            ++s.successes;
            lengths.push_back(r->length);
            smooth.push_back(r->smoothness);
        }
    }
    if (s.trials == 0)
    {
        return s;
    }
    s.success_rate = 100.0 * s.successes / s.trials;
    const MeanStd l = mean_std(lengths);
    const MeanStd m = mean_std(smooth);
    const MeanStd t = mean_std(times);
    s.length_mean = l.mean;
    s.length_std = l.std;
    s.smoothness_mean = m.mean;
    s.smoothness_std = m.std;
    s.time_mean = t.mean;
    s.time_std = t.std;
    s.iterations_mean = iterations / s.trials;
    return s;
}

std::vector<AggregateStats> aggregate(const std::vector<TrialRecord>& trials)
{
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> groups;
    for (const TrialRecord& t : trials)
    {
        const auto key = std::pair{t.map, t.planner};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted)
        {
            order.push_back(key);
        }
        it->second.push_back(&t.record);
    }
    std::vector<AggregateStats> out;
    for (const auto& key : order)
    {
        AggregateStats s = summarize(groups[key]);
        s.map = key.first;
        s.planner = key.second;
        out.push_back(std::move(s));
    }
    return out;
}

SuiteResult run_suite(const ScenarioSuite& suite)
{
    suite.validate();
    const std::vector<PreparedMap> maps = prepare_all(suite);
    const std::size_t trials = static_cast<std::size_t>(suite.trials_per_map);
    const std::size_t per_map = suite.planners.size() * trials;

    SuiteResult result;
    result.trials.resize(maps.size() * per_map);
    parallel_for(result.trials.size(), suite.jobs, [&](std::size_t i) {
        const PreparedMap& m = maps[i / per_map];
        const PlannerEntry& p = suite.planners[(i % per_map) / trials];
        const int t = static_cast<int>(i % trials);
        result.trials[i] = execute(m, p.label, p.kind, p.config, trial_seed(suite.seed, m.id, p.kind, t), t);
    });
    result.stats = aggregate(result.trials);
    return result;
}

std::vector<SweepRow> sensitivity_sweep(const ScenarioSuite& base, const std::vector<SweepPoint>& grid)
{
    if (grid.empty())
    {
        throw ConfigError("sensitivity grid is empty");
    }
    base.validate();
    const std::vector<PreparedMap> maps = prepare_all(base);
    const PlannerConfig cfg0 = convex_config(base);

    std::vector<SweepRow> rows;
    for (const SweepPoint& point : grid)
    {
        PlannerConfig cfg = cfg0;
        cfg.alpha_pred = point.alpha_pred;
        cfg.alpha_explore = point.alpha_explore;
        cfg.validate();
        const auto trials = run_grid(base, maps, "convex_neural", PlannerKind::convex_neural, cfg);
        SweepRow row{point, summarize(records_of(trials))};
        row.stats.planner = "convex_neural";
        rows.push_back(std::move(row));
    }
    return rows;
}

double ConvergenceCurve::final_cost() const
{
    return mean_cost.empty() ? kInfinity : mean_cost.back();
}

int ConvergenceCurve::iterations_to_within(double fraction) const
{
    const double target = final_cost();
    if (!std::isfinite(target))
    {
        return -1;
    }
    for (std::size_t k = 0; k < mean_cost.size(); ++k)
    {
        if (mean_cost[k] <= target * (1.0 + fraction))
        {
            return static_cast<int>(k);
        }
    }
    return -1;
}

std::vector<double> align_trace(const std::vector<CostSample>& trace, int length)
{
    std::vector<double> out(static_cast<std::size_t>(std::max(length, 0)), kInfinity);
    double last = kInfinity;
    std::size_t j = 0;
    for (int k = 0; k < length; ++k)
    {
        while (j < trace.size() && trace[j].iteration <= k)
        {
            last = trace[j].cost;
            ++j;
        }
        out[static_cast<std::size_t>(k)] = last;
    }
    return out;
}

std::vector<ConvergenceCurve> convergence_trace(const MapEntry& map, const std::vector<PlannerEntry>& planners,
                                                int seeds, std::uint64_t suite_seed, double safety_margin, int jobs)
{
    if (seeds < 1)
    {
        throw ConfigError("convergence traces need at least one seed");
    }
    const PreparedMap prepared = prepare_map(map, safety_margin);
    std::vector<ConvergenceCurve> curves;
    for (const PlannerEntry& p : planners)
    {
        p.config.validate();
        std::vector<TrialRecord> runs(static_cast<std::size_t>(seeds));
        parallel_for(runs.size(), jobs, [&](std::size_t i) {
            const int t = static_cast<int>(i);
            runs[i] = execute(prepared, p.label, p.kind, p.config, trial_seed(suite_seed, map.id, p.kind, t), t);
        });

        const int length = p.config.max_iterations;
        ConvergenceCurve curve;
        curve.planner = p.label;
        curve.seeds = seeds;
        curve.mean_cost.assign(static_cast<std::size_t>(length), kInfinity);
        std::vector<std::vector<double>> aligned;
        for (const TrialRecord& r : runs)
        {
            if (r.record.success)
            {
                aligned.push_back(align_trace(r.record.cost_trace, length));
            }
        }
        curve.solved_seeds = static_cast<int>(aligned.size());
        for (int k = 0; k < length && !aligned.empty(); ++k)
        {
            double sum = 0.0;
            bool all_finite = true;
            for (const auto& a : aligned)
            {
                const double c = a[static_cast<std::size_t>(k)];
                all_finite = all_finite && std::isfinite(c);
                sum += c;
            }
            if (all_finite)
            {
                curve.mean_cost[static_cast<std::size_t>(k)] = sum / static_cast<double>(aligned.size());
            }
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::vector<RobustnessRow> robustness_study(const ScenarioSuite& base, const std::vector<NoiseSpec>& noise)
{
    base.validate();
    const std::vector<PreparedMap> maps = prepare_all(base);
    const PlannerConfig cfg = convex_config(base);
    cfg.validate();

    const auto clean = run_grid(base, maps, "convex_neural", PlannerKind::convex_neural, cfg);
    std::vector<RobustnessRow> rows;
    RobustnessRow clean_row;
    clean_row.noise = "clean";
    clean_row.stats = summarize(records_of(clean));
    clean_row.stats.planner = "convex_neural";
    rows.push_back(clean_row);

    const std::size_t trials = static_cast<std::size_t>(base.trials_per_map);
    for (const NoiseSpec& spec0 : noise)
    {
        const std::string label = spec0.label();
        std::vector<PreparedMap> noisy = maps;
        std::vector<char> unchanged(maps.size(), 0);
        for (std::size_t m = 0; m < maps.size(); ++m)
        {
            NoiseSpec spec = spec0;
            spec.seed = combine_seed(base.seed, hash_name(maps[m].id), hash_name(label));
            noisy[m].predicted = perturb_corners(maps[m].predicted, spec, maps[m].inflated);
            unchanged[m] = noisy[m].predicted == maps[m].predicted ? 1 : 0;
        }

        std::vector<TrialRecord> runs(clean.size());
        parallel_for(runs.size(), base.jobs, [&](std::size_t i) {
            const std::size_t m = i / trials;
            if (unchanged[m])
            {
                runs[i] = clean[i];
                return;
            }
            const int t = static_cast<int>(i % trials);
            runs[i] = execute(noisy[m], "convex_neural", PlannerKind::convex_neural, cfg,
                              trial_seed(base.seed, maps[m].id, PlannerKind::convex_neural, t), t);
        });

        RobustnessRow row;
        row.noise = label;
        row.stats = summarize(records_of(runs));
        row.stats.planner = "convex_neural";
        row.length_delta = percent_delta(row.stats.length_mean, clean_row.stats.length_mean);
        row.time_delta = percent_delta(row.stats.time_mean, clean_row.stats.time_mean);
        row.smoothness_delta = percent_delta(row.stats.smoothness_mean, clean_row.stats.smoothness_mean);
        row.success_delta = row.stats.success_rate - clean_row.stats.success_rate;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace cnrrt
