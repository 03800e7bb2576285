#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cnrrt/bench.hpp"
#include "cnrrt/errors.hpp"
#include "cnrrt/netpbm.hpp"
#include "cnrrt/report.hpp"

namespace py = pybind11;
using namespace cnrrt;

namespace
{

std::tuple<double, double> to_tuple(Point p) { return {p.x, p.y}; }
Point to_point(const std::tuple<double, double>& t) { return {std::get<0>(t), std::get<1>(t)}; }

std::vector<std::tuple<double, double>> waypoints_of(const PathPlan& p)
{
    std::vector<std::tuple<double, double>> out;
    for (Point q : p.waypoints)
    {
        out.push_back(to_tuple(q));
    }
    return out;
}

std::vector<std::tuple<int, int>> cells_of(const CornerSet& cells)
{
    std::vector<std::tuple<int, int>> out;
    for (Cell c : cells)
    {
        out.emplace_back(c.row, c.col);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_cnrrt, m)
{
    m.doc() = "Convex-Neural RRT* grid planning";

    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
    py::register_exception<NoPathError>(m, "NoPathError", PyExc_RuntimeError);
    py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<Difficulty>(m, "Difficulty")
        .value("sparse", Difficulty::sparse)
        .value("medium", Difficulty::medium)
        .value("hard", Difficulty::hard);

    py::enum_<PlannerKind>(m, "PlannerKind")
        .value("rrt_star", PlannerKind::rrt_star)
        .value("neural", PlannerKind::neural)
        .value("neural_informed", PlannerKind::neural_informed)
        .value("convex_neural", PlannerKind::convex_neural)
        .value("visibility", PlannerKind::visibility);

    py::class_<GridMap>(m, "GridMap")
        .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
        .def_property_readonly("width", &GridMap::width)
        .def_property_readonly("height", &GridMap::height)
        .def("occupied", py::overload_cast<int, int>(&GridMap::occupied, py::const_), py::arg("row"), py::arg("col"))
        .def("set_occupied", py::overload_cast<int, int, bool>(&GridMap::set_occupied), py::arg("row"),
             py::arg("col"), py::arg("value") = true)
        .def("occupied_fraction", &GridMap::occupied_fraction)
        .def_property(
            "start", [](const GridMap& g) { return to_tuple(g.start()); },
            [](GridMap& g, const std::tuple<double, double>& p) { g.set_start(to_point(p)); })
        .def_property(
            "goal", [](const GridMap& g) { return to_tuple(g.goal()); },
            [](GridMap& g, const std::tuple<double, double>& p) { g.set_goal(to_point(p)); })
        .def("__eq__", [](const GridMap& a, const GridMap& b) { return a == b; });

    py::class_<GuidanceMask>(m, "GuidanceMask")
        .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
        .def_property_readonly("width", &GuidanceMask::width)
        .def_property_readonly("height", &GuidanceMask::height)
        .def("test", [](const GuidanceMask& g, int row, int col) { return g.test({row, col}); })
        .def("set", [](GuidanceMask& g, int row, int col, bool v) { g.set({row, col}, v); }, py::arg("row"),
             py::arg("col"), py::arg("value") = true)
        .def("count", &GuidanceMask::count);

    py::class_<PlannerConfig>(m, "PlannerConfig")
        .def(py::init<>())
        .def_readwrite("step", &PlannerConfig::step)
        .def_readwrite("near_radius", &PlannerConfig::near_radius)
        .def_readwrite("max_iterations", &PlannerConfig::max_iterations)
        .def_readwrite("alpha", &PlannerConfig::alpha)
        .def_readwrite("alpha_pred", &PlannerConfig::alpha_pred)
        .def_readwrite("alpha_explore", &PlannerConfig::alpha_explore)
        .def_readwrite("stall_window", &PlannerConfig::stall_window)
        .def_readwrite("stall_tolerance", &PlannerConfig::stall_tolerance)
        .def_readwrite("goal_tolerance", &PlannerConfig::goal_tolerance)
        .def_readwrite("goal_bias", &PlannerConfig::goal_bias)
        .def_readwrite("safety_margin", &PlannerConfig::safety_margin)
        .def_readwrite("seed", &PlannerConfig::seed)
        .def_readwrite("check_invariants", &PlannerConfig::check_invariants)
        .def("validate", &PlannerConfig::validate);

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("success", &RunRecord::success)
        .def_property_readonly("path",
                               [](const RunRecord& r) -> py::object
                               {
                                   if (!r.path)
                                   {
                                       return py::none();
                                   }
                                   return py::cast(waypoints_of(*r.path));
                               })
        .def_readonly("length", &RunRecord::length)
        .def_readonly("smoothness", &RunRecord::smoothness)
        .def_readonly("wall_time", &RunRecord::wall_time)
        .def_readonly("iterations_used", &RunRecord::iterations_used)
        .def_readonly("tree_size", &RunRecord::tree_size)
        .def_readonly("degraded_guidance", &RunRecord::degraded_guidance)
        .def_property_readonly("cost_trace",
                               [](const RunRecord& r)
                               {
                                   std::vector<std::tuple<int, double>> out;
                                   for (const CostSample& s : r.cost_trace)
                                   {
                                       out.emplace_back(s.iteration, s.cost);
                                   }
                                   return out;
                               })
        .def("same_outcome", &RunRecord::same_outcome)
        .def("to_json", [](const RunRecord& r) { return run_record_json(r); });

    m.def("load_map", &load_map, py::arg("path"));
    m.def("save_map", &save_map, py::arg("map"), py::arg("path"));
    m.def("load_mask", py::overload_cast<const std::filesystem::path&>(&load_mask), py::arg("path"));
    m.def("save_mask", &save_mask, py::arg("mask"), py::arg("path"));
    m.def("generate_map", &generate_map, py::arg("seed"), py::arg("difficulty"), py::arg("width") = 224,
          py::arg("height") = 224, py::arg("safety_margin") = kDefaultSafetyMargin);
    m.def("inflate", &inflate, py::arg("map"), py::arg("radius"));
    m.def("convex_corners", [](const GridMap& g) { return cells_of(extract_convex_corners(g)); },
          py::arg("inflated"));
    m.def("segment_collision_free",
          [](const GridMap& g, const std::tuple<double, double>& p, const std::tuple<double, double>& q)
          { return segment_collision_free(g, to_point(p), to_point(q)); });
    m.def("path_length", [](const std::vector<std::tuple<double, double>>& pts)
          {
              std::vector<Point> v;
              for (const auto& p : pts)
              {
                  v.push_back(to_point(p));
              }
              return path_length(v);
          });
    m.def("path_smoothness", [](const std::vector<std::tuple<double, double>>& pts)
          {
              std::vector<Point> v;
              for (const auto& p : pts)
              {
                  v.push_back(to_point(p));
              }
              return path_smoothness(v);
          });
    m.def("visibility_path", [](const GridMap& g) { return waypoints_of(visibility_path(g)); }, py::arg("inflated"));
    m.def("oracle_guidance", &oracle_guidance, py::arg("inflated"), py::arg("radius") = kOracleRegionRadius);
    m.def("oracle_corridor", &oracle_corridor, py::arg("inflated"), py::arg("radius") = kOracleRegionRadius);

    m.def("plan_rrt_star", &plan_rrt_star, py::arg("inflated"), py::arg("config"));
    m.def("plan_neural", &plan_neural, py::arg("inflated"), py::arg("mask"), py::arg("config"));
    m.def("plan_neural_informed", &plan_neural_informed, py::arg("inflated"), py::arg("mask"), py::arg("config"));
    m.def("plan_convex_neural", &convex_neural_plan, py::arg("inflated"), py::arg("mask"), py::arg("config"));
    m.def("plan_visibility", &plan_visibility_astar, py::arg("inflated"));
    m.def(
        "plan",
        [](const GridMap& raw, PlannerKind kind, const PlannerConfig& cfg)
        {
            py::gil_scoped_release release;
            const PreparedMap prepared = prepare_map({"map", raw, std::nullopt}, cfg.safety_margin);
            return run_trial(prepared, kind, cfg);
        },
        py::arg("map"), py::arg("kind"), py::arg("config"),
        "Inflates the raw map, builds oracle guidance and runs one planner.");
}
