#include "cnrrt/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "cnrrt/errors.hpp"
#include "cnrrt/netpbm.hpp"
#include "json.hpp"

namespace cnrrt
{

namespace
{

std::string trim(const std::string& s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    {
        --e;
    }
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
        {
            out.push_back(item);
        }
    }
    return out;
}

double to_double(const std::string& key, const std::string& value)
{
    double v = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
    {
        throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
    }
    return v;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& value)
{
    Int v = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
    {
        throw ConfigError("'" + key + "' expects an integer, got '" + value + "'");
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1")
    {
        return true;
    }
    if (value == "false" || value == "0")
    {
        return false;
    }
    throw ConfigError("'" + key + "' expects true or false, got '" + value + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& value)
{
    std::vector<double> out;
    for (const std::string& item : split_list(value))
    {
        out.push_back(to_double(key, item));
    }
    if (out.empty())
    {
        throw ConfigError("'" + key + "' needs at least one value");
    }
    return out;
}

std::string json_scalar(const std::string& key, const nlohmann::json& v)
{
    if (v.is_string())
    {
        return v.get<std::string>();
    }
    if (v.is_boolean())
    {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number_integer() || v.is_number_unsigned())
    {
        return v.dump();
    }
    if (v.is_number_float())
    {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
        return std::string(buf, res.ptr);
    }
    if (v.is_array())
    {
        std::string out;
        for (const auto& item : v)
        {
            if (item.is_array() || item.is_object())
            {
                throw ConfigError("'" + key + "' must be a flat list");
            }
            out += (out.empty() ? "" : ",") + json_scalar(key, item);
        }
        return out;
    }
    throw ConfigError("'" + key + "' must be a scalar or a flat list");
}

} // namespace

std::map<std::string, std::string> parse_flat_config(const std::string& text)
{
    std::map<std::string, std::string> out;
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{')
    {
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(body);
        }
        catch (const nlohmann::json::exception& e)
        {
            throw ConfigError(std::string("bad JSON config: ") + e.what());
        }
        for (const auto& [key, value] : j.items())
        {
            out[key] = json_scalar(key, value);
        }
        return out;
    }

    std::stringstream ss(text);
    std::string line;
    int number = 0;
    while (std::getline(ss, line))
    {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
        {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty())
        {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
        {
            throw ConfigError("config line " + std::to_string(number) + " is not key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
        {
            throw ConfigError("config line " + std::to_string(number) + " has an empty key");
        }
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::vector<std::string> suite_config_keys()
{
    return {"seed",          "difficulties",   "maps",           "width",          "height",
            "trials",        "planners",       "jobs",           "map_dir",        "mask_dir",
            "step",          "near_radius",    "max_iterations", "alpha",          "alpha_pred",
            "alpha_explore", "stall_window",   "stall_tolerance", "goal_tolerance", "goal_bias",
            "safety_margin", "check_invariants", "alpha_pred_values", "alpha_explore_values", "noise",
            "convergence_seeds"};
}

void apply_setting(SuiteConfig& cfg, const std::string& key, const std::string& value)
{
    PlannerConfig& p = cfg.planner;
    if (key == "seed")
    {
        cfg.seed = to_int<std::uint64_t>(key, value);
    }
    else if (key == "difficulties" || key == "difficulty")
    {
        cfg.difficulties.clear();
        for (const std::string& item : split_list(value))
        {
            const auto d = parse_difficulty(item);
            if (!d)
            {
                throw ConfigError("unknown difficulty '" + item + "'");
            }
            cfg.difficulties.push_back(*d);
        }
        if (cfg.difficulties.empty())
        {
            throw ConfigError("'difficulties' needs at least one value");
        }
    }
    else if (key == "maps")
    {
        cfg.maps = to_int<int>(key, value);
    }
    else if (key == "width")
    {
        cfg.width = to_int<int>(key, value);
    }
    else if (key == "height")
    {
        cfg.height = to_int<int>(key, value);
    }
    else if (key == "trials")
    {
        cfg.trials = to_int<int>(key, value);
    }
    else if (key == "planners")
    {
        cfg.planners.clear();
        for (const std::string& item : split_list(value))
        {
            const auto k = parse_planner(item);
            if (!k)
            {
                throw ConfigError("unknown planner '" + item + "'");
            }
            cfg.planners.push_back(*k);
        }
        if (cfg.planners.empty())
        {
            throw ConfigError("'planners' needs at least one value");
        }
    }
    else if (key == "jobs")
    {
        cfg.jobs = to_int<int>(key, value);
    }
    else if (key == "map_dir")
    {
        cfg.map_dir = value;
    }
    else if (key == "mask_dir")
    {
        cfg.mask_dir = value;
    }
    else if (key == "step")
    {
        p.step = to_double(key, value);
    }
    else if (key == "near_radius")
    {
        p.near_radius = to_double(key, value);
    }
    else if (key == "max_iterations")
    {
        p.max_iterations = to_int<int>(key, value);
    }
    else if (key == "alpha")
    {
        p.alpha = to_double(key, value);
    }
    else if (key == "alpha_pred")
    {
        p.alpha_pred = to_double(key, value);
    }
    else if (key == "alpha_explore")
    {
        p.alpha_explore = to_double(key, value);
    }
    else if (key == "stall_window")
    {
        p.stall_window = to_int<int>(key, value);
    }
    else if (key == "stall_tolerance")
    {
        p.stall_tolerance = to_double(key, value);
    }
    else if (key == "goal_tolerance")
    {
        p.goal_tolerance = to_double(key, value);
    }
    else if (key == "goal_bias")
    {
        p.goal_bias = to_double(key, value);
    }
    else if (key == "safety_margin")
    {
        p.safety_margin = to_double(key, value);
    }
    else if (key == "check_invariants")
    {
        p.check_invariants = to_bool(key, value);
    }
    else if (key == "alpha_pred_values")
    {
        cfg.alpha_pred_values = to_doubles(key, value);
    }
    else if (key == "alpha_explore_values")
    {
        cfg.alpha_explore_values = to_doubles(key, value);
    }
    else if (key == "noise")
    {
        cfg.noise = split_list(value);
        for (const std::string& n : cfg.noise)
        {
            NoiseSpec::parse(n);
        }
    }
    else if (key == "convergence_seeds")
    {
        cfg.convergence_seeds = to_int<int>(key, value);
    }
    else
    {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

SuiteConfig parse_suite_config(const std::string& text)
{
    SuiteConfig cfg;
    for (const auto& [key, value] : parse_flat_config(text))
    {
        apply_setting(cfg, key, value);
    }
    return cfg;
}

SuiteConfig load_suite_config(const std::filesystem::path& path)
{
    return parse_suite_config(read_file(path));
}

ScenarioSuite build_suite(const SuiteConfig& cfg)
{
    if (cfg.maps < 1 && cfg.map_dir.empty())
    {
        throw ConfigError("'maps' must be at least 1");
    }
    if (cfg.trials < 1)
    {
        throw ConfigError("'trials' must be at least 1");
    }
    if (cfg.jobs < 1)
    {
        throw ConfigError("'jobs' must be at least 1");
    }
    cfg.planner.validate();

    ScenarioSuite suite;
    suite.seed = cfg.seed;
    suite.trials_per_map = cfg.trials;
    suite.safety_margin = cfg.planner.safety_margin;
    suite.jobs = cfg.jobs;
    for (PlannerKind k : cfg.planners)
    {
        suite.planners.push_back({std::string(to_string(k)), k, cfg.planner});
    }

    if (!cfg.map_dir.empty())
    {
        std::vector<std::filesystem::path> files;
        std::error_code ec;
        for (const auto& e : std::filesystem::directory_iterator(cfg.map_dir, ec))
        {
            if (e.path().extension() == ".ppm")
            {
                files.push_back(e.path());
            }
        }
        if (ec)
        {
            throw IoError("cannot list '" + cfg.map_dir + "': " + ec.message());
        }
        std::sort(files.begin(), files.end());
        if (files.empty())
        {
            throw ConfigError("no .ppm maps in '" + cfg.map_dir + "'");
        }
        for (const auto& f : files)
        {
            MapEntry entry{f.stem().string(), load_map(f), std::nullopt};
            if (!cfg.mask_dir.empty())
            {
                const auto mask_path = std::filesystem::path(cfg.mask_dir) / (f.stem().string() + ".pgm");
                if (std::filesystem::exists(mask_path))
                {
                    entry.mask = load_mask(mask_path, entry.map);
                }
            }
            suite.maps.push_back(std::move(entry));
        }
        return suite;
    }

    for (Difficulty d : cfg.difficulties)
    {
        int made = 0;
        for (int k = 0; made < cfg.maps && k < 4 * cfg.maps + 8; ++k)
        {
            const std::uint64_t seed = combine_seed(cfg.seed, hash_name(to_string(d)), static_cast<std::uint64_t>(k));
            try
            {
                GridMap map = generate_map(seed, d, cfg.width, cfg.height, cfg.planner.safety_margin);
                char id[32];
                std::snprintf(id, sizeof id, "%s_%03d", std::string(to_string(d)).c_str(), made);
                suite.maps.push_back({id, std::move(map), std::nullopt});
                ++made;
            }
            catch (const GenerationError&)
            {
            }
        }
        if (made < cfg.maps)
        {
            throw GenerationError("could only generate " + std::to_string(made) + " " + std::string(to_string(d)) +
                                  " maps");
        }
    }
    return suite;
}

std::vector<SweepPoint> sweep_grid(const SuiteConfig& cfg)
{
    std::vector<SweepPoint> grid;
    for (double ae : cfg.alpha_explore_values)
    {
        for (double ap : cfg.alpha_pred_values)
        {
            grid.push_back({ap, ae});
        }
    }
    return grid;
}

std::vector<NoiseSpec> noise_specs(const SuiteConfig& cfg)
{
    std::vector<NoiseSpec> out;
    for (const std::string& n : cfg.noise)
    {
        out.push_back(NoiseSpec::parse(n));
    }
    return out;
}

} // namespace cnrrt
