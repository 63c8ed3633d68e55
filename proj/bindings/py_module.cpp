// Python bindings for the simulator core. Exposes the provider profiles,
// the cost formulas, both partitioners and a single-run simulate wrapper;
// the experiment harness stays on the C++ side (use the CLI for sweeps).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hybridsim/config.hpp"
#include "hybridsim/cost.hpp"
#include "hybridsim/experiment.hpp"
#include "hybridsim/partition.hpp"

namespace py = pybind11;
using namespace hybridsim;

namespace {

std::vector<Coord> to_coords(const std::vector<std::pair<int, int>>& points) {
    std::vector<Coord> out;
    out.reserve(points.size());
    for (const auto& [x, y] : points) out.push_back({x, y});
    return out;
}

SpawnMode spawn_mode_from(const std::string& name) {
    if (name == "centered") return SpawnMode::CellCenter;
    if (name == "scattered") return SpawnMode::CellUniform;
    throw std::invalid_argument("unknown spawn mode '" + name +
                                "' (expected 'centered' or 'scattered')");
}

ScenarioSpec scenario_from(const std::string& name, int agents,
                           const std::optional<std::string>& spawn_mode,
                           std::optional<double> t_exec_s) {
    ScenarioSpec spec = preset_scenario(name);
    if (agents > 0) spec.agents = agents;
    if (spawn_mode) spec.spawn_mode = spawn_mode_from(*spawn_mode);
    if (t_exec_s) spec.t_exec_override_s = t_exec_s;
    spec.validate();
    return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hybrid-deployment evacuation simulator and deployment cost model";
    m.attr("__version__") = "0.1.0";

    py::class_<ProviderProfile>(m, "ProviderProfile")
        .def(py::init<>())
        .def_readwrite("name", &ProviderProfile::name)
        .def_readwrite("cost_t_unit_usd", &ProviderProfile::cost_t_unit_usd)
        .def_readwrite("t_unit_s", &ProviderProfile::t_unit_s)
        .def_readwrite("cost_d_unit_usd", &ProviderProfile::cost_d_unit_usd)
        .def_readwrite("d_unit_bytes", &ProviderProfile::d_unit_bytes)
        .def_readwrite("latency_s", &ProviderProfile::latency_s)
        .def_readwrite("bandwidth_bps", &ProviderProfile::bandwidth_bps)
        .def_readwrite("ingress_cost_usd", &ProviderProfile::ingress_cost_usd)
        .def("validate", &ProviderProfile::validate)
        .def("__repr__", [](const ProviderProfile& p) {
            return "ProviderProfile('" + p.name + "')";
        });

    py::class_<CostParams>(m, "CostParams")
        .def(py::init([](int mu, std::uint64_t message_size_bytes,
                         std::uint64_t agent_size_bytes, bool round_up_billing) {
                 CostParams p{mu, message_size_bytes, agent_size_bytes, round_up_billing};
                 p.validate();
                 return p;
             }),
             py::arg("mu") = 0, py::arg("message_size_bytes") = 1000,
             py::arg("agent_size_bytes") = 10000, py::arg("round_up_billing") = false)
        .def_readwrite("mu", &CostParams::mu)
        .def_readwrite("message_size_bytes", &CostParams::message_size_bytes)
        .def_readwrite("agent_size_bytes", &CostParams::agent_size_bytes)
        .def_readwrite("round_up_billing", &CostParams::round_up_billing);

    py::class_<SimulationMetrics>(m, "SimulationMetrics")
        .def(py::init<>())
        .def_readwrite("ticks", &SimulationMetrics::ticks)
        .def_readwrite("msgs_total_cross", &SimulationMetrics::msgs_total_cross)
        .def_readwrite("msgs_cloud_to_local", &SimulationMetrics::msgs_cloud_to_local)
        .def_readwrite("msgs_local_to_cloud", &SimulationMetrics::msgs_local_to_cloud)
        .def_readwrite("msgs_local_to_local_cross", &SimulationMetrics::msgs_local_to_local_cross)
        .def_readwrite("migrations_total", &SimulationMetrics::migrations_total)
        .def_readwrite("migrations_cloud_to_local", &SimulationMetrics::migrations_cloud_to_local)
        .def_readwrite("t_exec_s", &SimulationMetrics::t_exec_s);

    py::class_<CostReport>(m, "CostReport")
        .def_readonly("comm_cost_usd", &CostReport::comm_cost_usd)
        .def_readonly("migration_cost_usd", &CostReport::migration_cost_usd)
        .def_readonly("exec_cost_usd", &CostReport::exec_cost_usd)
        .def_readonly("total_cost_usd", &CostReport::total_cost_usd)
        .def_readonly("provider", &CostReport::provider)
        .def_readonly("mu", &CostReport::mu)
        .def_readonly("billed_messages", &CostReport::billed_messages)
        .def_readonly("billed_migrations", &CostReport::billed_migrations)
        .def_readonly("t_exec_s", &CostReport::t_exec_s);

    py::enum_<TransferDirection>(m, "TransferDirection")
        .value("CLOUD_TO_LOCAL", TransferDirection::CloudToLocal)
        .value("LOCAL_TO_CLOUD", TransferDirection::LocalToCloud);

    m.def("provider_names", []() {
        std::vector<std::string> names;
        for (const ProviderProfile& p : builtin_catalog().providers) names.push_back(p.name);
        return names;
    });
    m.def(
        "provider",
        [](const std::string& name, const std::optional<std::string>& catalog) {
            std::optional<std::filesystem::path> path;
            if (catalog) path = *catalog;
            return resolve_catalog(path).require(name);
        },
        py::arg("name"), py::arg("catalog") = std::nullopt,
        "Look up a provider profile: the builtins, overlaid with "
        "HYBRIDSIM_PROVIDER_CATALOG and the optional catalog file.");

    m.def("transfer_time_s", &transfer_time_s, py::arg("size_bytes"), py::arg("provider"));
    m.def("unit_transfer_cost", &unit_transfer_cost, py::arg("size_bytes"), py::arg("provider"),
          py::arg("mu"), py::arg("direction") = TransferDirection::CloudToLocal);
    m.def("comm_cost", &comm_cost, py::arg("billed_messages"), py::arg("params"),
          py::arg("provider"));
    m.def("migration_cost", &migration_cost, py::arg("billed_migrations"), py::arg("params"),
          py::arg("provider"));
    m.def("exec_cost", &exec_cost, py::arg("t_exec_s"), py::arg("provider"),
          py::arg("round_up") = false);
    m.def("deployment_cost", &deployment_cost, py::arg("metrics"), py::arg("params"),
          py::arg("provider"));

    m.def(
        "kmeans",
        [](const std::vector<std::pair<int, int>>& points, int k, std::uint64_t seed,
           int restarts, const std::string& init) {
            KMeansOptions opts;
            opts.restarts = restarts;
            if (init == "forgy") {
                opts.init = KMeansInit::Forgy;
            } else if (init != "kmeans++") {
                throw std::invalid_argument("unknown init '" + init +
                                            "' (expected 'kmeans++' or 'forgy')");
            }
            KMeansResult r = kmeans_partition(to_coords(points), k, seed, opts);
            std::vector<std::pair<double, double>> centroids;
            for (const Point& c : r.centroids) centroids.emplace_back(c.x, c.y);
            py::dict out;
            out["assignment"] = r.plan.assignment;
            out["centroids"] = centroids;
            out["sse"] = r.sse_log.back();
            out["sse_log"] = r.sse_log;
            out["iterations"] = r.iterations;
            return out;
        },
        py::arg("points"), py::arg("k"), py::arg("seed"), py::arg("restarts") = 4,
        py::arg("init") = "kmeans++",
        "Seeded Lloyd clustering; returns the assignment (point index -> "
        "cluster), the final centroids and the SSE trajectory.");

    m.def(
        "grid_assignment",
        [](const std::vector<std::pair<int, int>>& points, int rows, int cols, int width,
           int height) {
            GridEnvironment env;
            env.width = width;
            env.height = height;
            env.exits = corner_exits(width, height);
            return grid_partition(env, rows, cols, to_coords(points)).assignment;
        },
        py::arg("points"), py::arg("rows") = 2, py::arg("cols") = 2, py::arg("width") = 100,
        py::arg("height") = 100,
        "Region index (row*cols+col) of each point under the regular tiling.");

    m.def(
        "simulate",
        [](const std::string& scenario, const std::string& algorithm, std::uint64_t seed,
           int agents, const std::optional<std::string>& spawn_mode,
           std::optional<double> t_exec_s) {
            ScenarioSpec spec = scenario_from(scenario, agents, spawn_mode, t_exec_s);
            SingleRun run = simulate_single(spec, parse_algorithm(algorithm), seed);
            py::dict out;
            out["metrics"] = run.metrics;
            out["truncated"] = run.truncated;
            return out;
        },
        py::arg("scenario"), py::arg("algorithm") = "kmeans", py::arg("seed") = 42,
        py::arg("agents") = 0, py::arg("spawn_mode") = std::nullopt,
        py::arg("t_exec_s") = std::nullopt,
        "Run one preset scenario to completion and return its metrics. "
        "agents > 0 overrides the preset population; t_exec_s pins the "
        "execution time used for pricing instead of the measured wall clock.");

    m.def("preset_scenarios", &preset_scenario_names);
}
