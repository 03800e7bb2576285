#include "cnrrt/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "cnrrt/errors.hpp"
#include "json.hpp"

namespace cnrrt
{

namespace
{

using nlohmann::ordered_json;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
    {
        return s;
    }
    std::string out = "\"";
    for (char c : s)
    {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

ordered_json cost_json(double c)
{
    return std::isfinite(c) ? ordered_json(c) : ordered_json(nullptr);
}

double cost_from(const ordered_json& j)
{
    return j.is_null() ? kInfinity : j.get<double>();
}

std::string stats_fields(const AggregateStats& s)
{
    return std::to_string(s.trials) + "," + std::to_string(s.successes) + "," + format_number(s.success_rate) + "," +
           format_number(s.length_mean) + "," + format_number(s.length_std) + "," + format_number(s.time_mean) + "," +
           format_number(s.time_std) + "," + format_number(s.smoothness_mean) + "," +
           format_number(s.smoothness_std) + "," + format_number(s.iterations_mean);
}

const char* const kStatsColumns =
    "trials,successes,success_rate,length_mean,length_std,time_mean,time_std,smoothness_mean,smoothness_std,"
    "iters_mean";

} // namespace

std::string format_number(double v)
{
    if (std::isnan(v))
    {
        return "nan";
    }
    if (std::isinf(v))
    {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string trials_csv(const std::vector<TrialRecord>& trials)
{
    std::string out = std::string(kTrialCsvHeader) + "\n";
    for (const TrialRecord& t : trials)
    {
        const RunRecord& r = t.record;
        out += csv_field(t.map) + "," + csv_field(t.planner) + "," + std::to_string(t.trial) + "," +
               (r.success ? "1" : "0") + "," + format_number(r.length) + "," + format_number(r.smoothness) + "," +
               format_number(r.wall_time) + "," + std::to_string(r.iterations_used) + "\n";
    }
    return out;
}

std::string stats_csv(const std::vector<AggregateStats>& stats)
{
    std::string out = std::string("map,planner,") + kStatsColumns + "\n";
    for (const AggregateStats& s : stats)
    {
        out += csv_field(s.map) + "," + csv_field(s.planner) + "," + stats_fields(s) + "\n";
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
    std::string out = std::string("alpha_pred,alpha_explore,") + kStatsColumns + "\n";
    for (const SweepRow& r : rows)
    {
        out += format_number(r.point.alpha_pred) + "," + format_number(r.point.alpha_explore) + "," +
               stats_fields(r.stats) + "\n";
    }
    return out;
}

std::string robustness_csv(const std::vector<RobustnessRow>& rows)
{
    std::string out = std::string("noise,") + kStatsColumns +
                      ",length_delta_pct,time_delta_pct,smoothness_delta_pct,success_delta_pts\n";
    for (const RobustnessRow& r : rows)
    {
        out += csv_field(r.noise) + "," + stats_fields(r.stats) + "," + format_number(r.length_delta) + "," +
               format_number(r.time_delta) + "," + format_number(r.smoothness_delta) + "," +
               format_number(r.success_delta) + "\n";
    }
    return out;
}

std::string convergence_csv(const std::vector<ConvergenceCurve>& curves)
{
    std::string out = "planner,iteration,mean_cost\n";
    for (const ConvergenceCurve& c : curves)
    {
        for (std::size_t k = 0; k < c.mean_cost.size(); ++k)
        {
            const double v = c.mean_cost[k];
            out += csv_field(c.planner) + "," + std::to_string(k) + "," + (std::isfinite(v) ? format_number(v) : "") +
                   "\n";
        }
    }
    return out;
}

std::string run_record_json(const RunRecord& rec, int indent)
{
    ordered_json j;
    j["success"] = rec.success;
    if (rec.path)
    {
        ordered_json wp = ordered_json::array();
        for (const Point& p : rec.path->waypoints)
        {
            wp.push_back({p.x, p.y});
        }
        j["path"] = wp;
    }
    else
    {
        j["path"] = nullptr;
    }
    j["length"] = rec.length;
    j["smoothness"] = rec.smoothness;
    j["time_s"] = rec.wall_time;
    j["iterations_used"] = rec.iterations_used;
    j["tree_size"] = rec.tree_size;
    j["degraded_guidance"] = rec.degraded_guidance;
    ordered_json trace = ordered_json::array();
    for (const CostSample& s : rec.cost_trace)
    {
        trace.push_back({s.iteration, cost_json(s.cost)});
    }
    j["cost_trace"] = trace;
    return j.dump(indent) + "\n";
}

RunRecord parse_run_record_json(const std::string& text)
{
    RunRecord rec;
    try
    {
        const ordered_json j = ordered_json::parse(text);
        rec.success = j.at("success").get<bool>();
        if (!j.at("path").is_null())
        {
            PathPlan plan;
            for (const auto& p : j.at("path"))
            {
                plan.waypoints.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            }
            rec.path = std::move(plan);
        }
        rec.length = j.at("length").get<double>();
        rec.smoothness = j.at("smoothness").get<double>();
        rec.wall_time = j.at("time_s").get<double>();
        rec.iterations_used = j.at("iterations_used").get<int>();
        rec.tree_size = j.at("tree_size").get<int>();
        rec.degraded_guidance = j.at("degraded_guidance").get<bool>();
        for (const auto& s : j.at("cost_trace"))
        {
            rec.cost_trace.push_back({s.at(0).get<int>(), cost_from(s.at(1))});
        }
    }
    catch (const nlohmann::json::exception& e)
    {
        throw FormatError(std::string("bad run record JSON: ") + e.what());
    }
    return rec;
}

std::string render_paths_svg(const GridMap& map, const std::vector<PathPlan>& paths, int scale)
{
    const int w = map.width() * scale;
    const int h = map.height() * scale;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) + "\" height=\"" +
                      std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(map.width()) + " " +
                      std::to_string(map.height()) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(map.width()) + "\" height=\"" +
           std::to_string(map.height()) + "\" fill=\"#ffffff\"/>\n<g fill=\"#404040\">\n";
    for (int r = 0; r < map.height(); ++r)
    {
        int c = 0;
        while (c < map.width())
        {
            if (!map.occupied(r, c))
            {
                ++c;
                continue;
            }
            const int begin = c;
            while (c < map.width() && map.occupied(r, c))
            {
                ++c;
            }
            out += "<rect x=\"" + std::to_string(begin) + "\" y=\"" + std::to_string(r) + "\" width=\"" +
                   std::to_string(c - begin) + "\" height=\"1\"/>\n";
        }
    }
    out += "</g>\n";
    for (std::size_t i = 0; i < paths.size(); ++i)
    {
        const auto& wp = paths[i].waypoints;
        out += std::string("<g stroke=\"") + kPalette[i % std::size(kPalette)] + "\" stroke-width=\"0.6\">\n";
        for (std::size_t k = 0; k + 1 < wp.size(); ++k)
        {
            out += "<line x1=\"" + format_number(wp[k].x) + "\" y1=\"" + format_number(wp[k].y) + "\" x2=\"" +
                   format_number(wp[k + 1].x) + "\" y2=\"" + format_number(wp[k + 1].y) + "\"/>\n";
        }
        out += "</g>\n";
    }
    out += "<circle cx=\"" + format_number(map.start().x) + "\" cy=\"" + format_number(map.start().y) +
           "\" r=\"1.5\" fill=\"#2ca02c\"/>\n";
    out += "<circle cx=\"" + format_number(map.goal().x) + "\" cy=\"" + format_number(map.goal().y) +
           "\" r=\"1.5\" fill=\"#1f3fbf\"/>\n";
    out += "</svg>\n";
    return out;
}

std::string render_convergence_svg(const std::vector<ConvergenceCurve>& curves)
{
    constexpr double kWidth = 640.0;
    constexpr double kHeight = 400.0;
    constexpr double kLeft = 60.0;
    constexpr double kRight = 20.0;
    constexpr double kTop = 20.0;
    constexpr double kBottom = 40.0;

    std::size_t n = 1;
    double lo = kInfinity;
    double hi = -kInfinity;
    for (const ConvergenceCurve& c : curves)
    {
        n = std::max(n, c.mean_cost.size());
        for (double v : c.mean_cost)
        {
            if (std::isfinite(v))
            {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (!std::isfinite(lo))
    {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-9)
    {
        hi = lo + 1.0;
    }
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double k) { return kLeft + pw * k / static_cast<double>(std::max<std::size_t>(n - 1, 1)); };
    auto sy = [&](double v) { return kTop + ph * (hi - v) / (hi - lo); };
    auto num = [](double v) { return format_number(std::round(v * 100.0) / 100.0); };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
                      "viewBox=\"0 0 640 400\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"#ffffff\"/>\n";
    out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" +
           num(kTop + ph) + "\" stroke=\"#000000\"/>\n";
    out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
           num(kTop + ph) + "\" stroke=\"#000000\"/>\n";
    out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 8) +
           "\" text-anchor=\"middle\">iteration</text>\n";
    out += "<text x=\"14\" y=\"" + num(kTop + ph / 2) + "\" transform=\"rotate(-90 14 " + num(kTop + ph / 2) +
           ")\" text-anchor=\"middle\">mean best cost</text>\n";
    out += "<text x=\"" + num(kLeft - 4) + "\" y=\"" + num(kTop + 4) + "\" text-anchor=\"end\">" + num(hi) +
           "</text>\n";
    out += "<text x=\"" + num(kLeft - 4) + "\" y=\"" + num(kTop + ph) + "\" text-anchor=\"end\">" + num(lo) +
           "</text>\n";
    out += "<text x=\"" + num(kLeft + pw) + "\" y=\"" + num(kTop + ph + 14) + "\" text-anchor=\"end\">" +
           std::to_string(n - 1) + "</text>\n";

    for (std::size_t i = 0; i < curves.size(); ++i)
    {
        const ConvergenceCurve& c = curves[i];
        const char* color = kPalette[i % std::size(kPalette)];
        std::string points;
        for (std::size_t k = 0; k < c.mean_cost.size(); ++k)
        {
            if (std::isfinite(c.mean_cost[k]))
            {
                points += (points.empty() ? "" : " ") + num(sx(static_cast<double>(k))) + "," + num(sy(c.mean_cost[k]));
            }
        }
        if (!points.empty())
        {
            out += std::string("<polyline fill=\"none\" stroke=\"") + color + "\" stroke-width=\"1.5\" points=\"" +
                   points + "\"/>\n";
        }
        const double ly = kTop + 14.0 * static_cast<double>(i + 1);
        out += std::string("<text x=\"") + num(kLeft + pw - 4) + "\" y=\"" + num(ly) + "\" text-anchor=\"end\" fill=\"" +
               color + "\">" + xml_escape(c.planner) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace cnrrt
