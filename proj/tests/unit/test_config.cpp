#include <filesystem>

#include "cnrrt/config.hpp"
#include "cnrrt/errors.hpp"
#include "cnrrt/netpbm.hpp"
#include "doctest.h"

using namespace cnrrt;
namespace fs = std::filesystem;

TEST_CASE("defaults follow the published settings")
{
    const SuiteConfig cfg;
    CHECK(cfg.planner.step == 5.0);
    CHECK(cfg.planner.near_radius == 7.0);
    CHECK(cfg.planner.max_iterations == 1000);
    CHECK(cfg.planner.alpha == 0.5);
    CHECK(cfg.planner.alpha_pred == 0.5);
    CHECK(cfg.planner.alpha_explore == 0.2);
    CHECK(cfg.width == 224);
    CHECK(cfg.height == 224);
}

TEST_CASE("flat key = value config")
{
    const SuiteConfig cfg = parse_suite_config("# suite\nseed = 9\ndifficulties = sparse, hard\nmaps=2\n"
                                               "planners = rrt_star,convex_neural # two\nalpha_pred = 0.7\n"
                                               "noise = delete:0.3\ncheck_invariants = true\n");
    CHECK(cfg.seed == 9);
    CHECK(cfg.difficulties == std::vector<Difficulty>{Difficulty::sparse, Difficulty::hard});
    CHECK(cfg.maps == 2);
    CHECK(cfg.planners == std::vector<PlannerKind>{PlannerKind::rrt_star, PlannerKind::convex_neural});
    CHECK(cfg.planner.alpha_pred == 0.7);
    CHECK(cfg.noise == std::vector<std::string>{"delete:0.3"});
    CHECK(cfg.planner.check_invariants);
}

TEST_CASE("JSON config")
{
    const SuiteConfig cfg = parse_suite_config(
        R"({"seed": 3, "trials": 4, "alpha_pred_values": [0, 0.5, 0.9], "planners": ["visibility"], "goal_bias": 0.1})");
    CHECK(cfg.seed == 3);
    CHECK(cfg.trials == 4);
    CHECK(cfg.alpha_pred_values == std::vector<double>{0.0, 0.5, 0.9});
    CHECK(cfg.planners == std::vector<PlannerKind>{PlannerKind::visibility});
    CHECK(cfg.planner.goal_bias == 0.1);
}

TEST_CASE("config errors")
{
    CHECK_THROWS_AS(parse_suite_config("bogus = 1"), ConfigError);
    CHECK_THROWS_AS(parse_suite_config("seed"), ConfigError);
    CHECK_THROWS_AS(parse_suite_config("maps = two"), ConfigError);
    CHECK_THROWS_AS(parse_suite_config("planners = prm"), ConfigError);
    CHECK_THROWS_AS(parse_suite_config("difficulties = extreme"), ConfigError);
    CHECK_THROWS_AS(parse_suite_config("noise = blur:2"), ConfigError);
    CHECK_THROWS_AS(parse_suite_config("{\"seed\": {\"a\": 1}}"), ConfigError);
    CHECK_THROWS_AS(parse_suite_config("{bad json"), ConfigError);
    CHECK_THROWS_AS(load_suite_config("/nonexistent/suite.cfg"), IoError);
    for (const std::string& key : suite_config_keys())
    {
        if (key == "map_dir" || key == "mask_dir")
        {
            continue;
        }
        SuiteConfig cfg;
        CHECK_THROWS_AS(apply_setting(cfg, key, "@@"), ConfigError);
    }
}

TEST_CASE("build_suite generates named maps deterministically")
{
    SuiteConfig cfg = parse_suite_config("difficulties = sparse\nmaps = 2\nwidth = 64\nheight = 64\ntrials = 2");
    const ScenarioSuite a = build_suite(cfg);
    const ScenarioSuite b = build_suite(cfg);
    REQUIRE(a.maps.size() == 2);
    CHECK(a.maps[0].id == "sparse_000");
    CHECK(a.maps[1].id == "sparse_001");
    CHECK(a.maps[0].map == b.maps[0].map);
    CHECK(a.planners.size() == 5);
    CHECK(a.trials_per_map == 2);
    CHECK(sweep_grid(cfg).size() == 3);
    CHECK(noise_specs(cfg).size() == 4);
    cfg.trials = 0;
    CHECK_THROWS_AS(build_suite(cfg), ConfigError);
}

TEST_CASE("build_suite loads maps and matching masks from directories")
{
    const fs::path dir = fs::temp_directory_path() / "cnrrt_config_maps";
    fs::remove_all(dir);
    fs::create_directories(dir / "masks");
    const GridMap m = generate_map(1, Difficulty::sparse, 64, 64);
    save_map(m, dir / "b.ppm");
    save_map(m, dir / "a.ppm");
    GuidanceMask mask(64, 64);
    mask.set({3, 3});
    save_mask(mask, dir / "masks" / "b.pgm");

    SuiteConfig cfg;
    cfg.map_dir = dir.string();
    cfg.mask_dir = (dir / "masks").string();
    const ScenarioSuite s = build_suite(cfg);
    REQUIRE(s.maps.size() == 2);
    CHECK(s.maps[0].id == "a");
    CHECK_FALSE(s.maps[0].mask.has_value());
    CHECK(s.maps[1].mask == mask);

    cfg.map_dir = (dir / "masks").string();
    CHECK_THROWS_AS(build_suite(cfg), ConfigError);
    fs::remove_all(dir);
}
