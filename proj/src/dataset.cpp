#include <cstdio>
#include <fstream>
#include <set>
#include <utility>

#include "cnrrt/errors.hpp"
#include "cnrrt/guidance.hpp"
#include "cnrrt/netpbm.hpp"
#include "cnrrt/planners.hpp"
#include "cnrrt/rng.hpp"
#include "json.hpp"

namespace cnrrt
{

namespace
{

inline constexpr int kPairTries = 200;
inline constexpr int kFullScaleMaps = 4000;
inline constexpr int kFullScalePairs = 10;

std::string sample_stem(int map, int pair)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "m%05d_p%02d", map, pair);
    return buf;
}

// Removes everything this export created if it does not complete.
class Cleanup
{
public:
    Cleanup() = default;
    Cleanup(const Cleanup&) = delete;
    Cleanup& operator=(const Cleanup&) = delete;
    ~Cleanup()
    {
        if (committed_)
        {
            return;
        }
        std::error_code ec;
        for (auto it = created_.rbegin(); it != created_.rend(); ++it)
        {
            std::filesystem::remove(*it, ec);
        }
    }

    void track(const std::filesystem::path& p) { created_.push_back(p); }
    void make_dir(const std::filesystem::path& p)
    {
        if (!std::filesystem::exists(p))
        {
            std::error_code ec;
            std::filesystem::create_directories(p, ec);
            if (ec)
            {
                throw IoError("cannot create directory '" + p.string() + "': " + ec.message());
            }
            track(p);
        }
    }
    void commit() { committed_ = true; }

private:
    std::vector<std::filesystem::path> created_;
    bool committed_ = false;
};

} // namespace

std::vector<DatasetRecord> dataset_export(const DatasetSpec& spec, const std::filesystem::path& out_dir)
{
    if (spec.count < 1 || spec.pairs_per_map < 1)
    {
        throw ConfigError("dataset count and pairs_per_map must be positive");
    }

    Cleanup cleanup;
    cleanup.make_dir(out_dir);
    cleanup.make_dir(out_dir / "inputs");
    cleanup.make_dir(out_dir / "labels");

    std::vector<DatasetRecord> records;
    records.reserve(static_cast<std::size_t>(spec.count) * spec.pairs_per_map);
    for (int m = 0; m < spec.count; ++m)
    {
        const std::uint64_t map_seed = combine_seed(spec.seed, static_cast<std::uint64_t>(m));
        GridMap map = generate_map(map_seed, spec.difficulty, spec.width, spec.height, spec.safety_margin);
        const GridMap inflated = inflate(map, spec.safety_margin);

        std::set<std::pair<Cell, Cell>> used;
        for (int p = 0; p < spec.pairs_per_map; ++p)
        {
            Query q{map.start(), map.goal()};
            if (p > 0)
            {
                Rng rng(combine_seed(map_seed, static_cast<std::uint64_t>(p)));
                bool found = false;
                for (int attempt = 0; attempt < kPairTries && !found; ++attempt)
                {
                    const auto cand = place_query(inflated, rng, 1);
                    if (cand && !used.contains({cell_of(cand->start), cell_of(cand->goal)}))
                    {
                        q = *cand;
                        found = true;
                    }
                }
                if (!found)
                {
                    throw GenerationError("map " + std::to_string(m) + ": no distinct feasible start-goal pair " +
                                          std::to_string(p));
                }
            }
            used.insert({cell_of(q.start), cell_of(q.goal)});

            GridMap sample = map;
            sample.set_start(q.start);
            sample.set_goal(q.goal);
            GridMap planning = inflated;
            planning.set_start(q.start);
            planning.set_goal(q.goal);
            const PathPlan path = visibility_path(planning);
            const GuidanceMask label = waypoint_region_mask(planning, path, spec.label_radius);

            const std::string stem = sample_stem(m, p);
            DatasetRecord rec;
            rec.map = m;
            rec.pair = p;
            rec.input = "inputs/" + stem + ".ppm";
            rec.label = "labels/" + stem + ".pgm";
            rec.path_length = path_length(path);

            cleanup.track(out_dir / rec.input);
            save_map(sample, out_dir / rec.input);
            cleanup.track(out_dir / rec.label);
            save_mask(label, out_dir / rec.label);
            records.push_back(std::move(rec));
        }
    }

    std::string manifest;
    for (const DatasetRecord& r : records)
    {
        const nlohmann::ordered_json line = {
            {"map", r.map}, {"pair", r.pair}, {"input", r.input}, {"label", r.label}, {"path_length", r.path_length}};
        manifest += line.dump() + "\n";
    }
    cleanup.track(out_dir / "manifest.jsonl");
    write_file(out_dir / "manifest.jsonl", manifest);

    const nlohmann::ordered_json meta = {
        {"seed", spec.seed},
        {"count", spec.count},
        {"pairs_per_map", spec.pairs_per_map},
        {"difficulty", std::string(to_string(spec.difficulty))},
        {"width", spec.width},
        {"height", spec.height},
        {"safety_margin", spec.safety_margin},
        {"label_radius", spec.label_radius},
        {"samples", records.size()},
        {"full_scale", {{"count", kFullScaleMaps}, {"pairs_per_map", kFullScalePairs}}},
        {"manifest", "manifest.jsonl"},
    };
    cleanup.track(out_dir / "dataset.json");
    write_file(out_dir / "dataset.json", meta.dump(2) + "\n");

    cleanup.commit();
    return records;
}

} // namespace cnrrt
