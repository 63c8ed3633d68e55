#include "hybridsim/trace_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace hybridsim {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json plan_to_json(const PartitionPlan& plan) {
    ordered_json j;
    j["k"] = plan.k;
    if (const GridRegions* g = std::get_if<GridRegions>(&plan.ownership)) {
        j["ownership"] = {{"kind", "grid"},
                          {"rows", g->rows},
                          {"cols", g->cols},
                          {"width", g->width},
                          {"height", g->height}};
    } else {
        const VoronoiCells& v = std::get<VoronoiCells>(plan.ownership);
        ordered_json centroids = ordered_json::array();
        for (const Point& c : v.centroids) centroids.push_back({c.x, c.y});
        j["ownership"] = {{"kind", "voronoi"}, {"centroids", centroids}};
    }
    ordered_json placement = ordered_json::array();
    for (Placement p : plan.placement) placement.push_back(placement_name(p));
    j["placement"] = placement;
    j["assignment"] = plan.assignment;
    return j;
}

PartitionPlan plan_from_json(const ordered_json& j) {
    PartitionPlan plan;
    plan.k = j.at("k").get<int>();
    const ordered_json& o = j.at("ownership");
    if (o.at("kind") == "grid") {
        plan.ownership = GridRegions{o.at("rows").get<int>(), o.at("cols").get<int>(),
                                     o.at("width").get<int>(), o.at("height").get<int>()};
    } else {
        VoronoiCells v;
        for (const auto& c : o.at("centroids")) v.centroids.push_back({c.at(0), c.at(1)});
        plan.ownership = std::move(v);
    }
    for (const auto& p : j.at("placement")) {
        plan.placement.push_back(p == "cloud" ? Placement::Cloud : Placement::Local);
    }
    plan.assignment = j.at("assignment").get<std::vector<int>>();
    return plan;
}

}  // namespace

void write_trace(const SimulationTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());

    ordered_json header;
    header["type"] = "header";
    header["env"] = {{"width", trace.env.width}, {"height", trace.env.height}};
    ordered_json exits = ordered_json::array();
    for (const Coord& e : trace.env.exits) exits.push_back({e.x, e.y});
    header["env"]["exits"] = exits;
    header["params"] = {{"aoi_range", trace.params.aoi_range},
                        {"message_size_bytes", trace.params.message_size_bytes},
                        {"agent_size_bytes", trace.params.agent_size_bytes},
                        {"max_ticks", trace.params.max_ticks},
                        {"spawn_radius", trace.params.spawn_radius},
                        {"seed", trace.params.seed}};
    ordered_json agents = ordered_json::array();
    for (const AgentState& a : trace.initial_agents) {
        agents.push_back({a.id, a.role == Role::Rescuer ? "rescuer" : "victim", a.pos.x, a.pos.y,
                          a.partition});
    }
    header["agents"] = agents;
    header["plan"] = plan_to_json(trace.initial_plan);
    header["messages_recorded"] = trace.messages_recorded;
    out << header.dump() << "\n";

    int tick = 0;
    for (const TickRecord& tr : trace.ticks) {
        ++tick;
        ordered_json j;
        j["type"] = "tick";
        j["t"] = tick;
        ordered_json moves = ordered_json::array();
        for (const Move& m : tr.events.moves) {
            moves.push_back({m.id, m.from.x, m.from.y, m.to.x, m.to.y});
        }
        j["moves"] = moves;
        ordered_json msgs = ordered_json::array();
        for (const Message& m : tr.events.messages) msgs.push_back({m.sender, m.receiver});
        j["messages"] = msgs;
        j["exits"] = tr.events.exits_reached;
        ordered_json migs = ordered_json::array();
        for (const MigrationEvent& mv : tr.migrations) {
            migs.push_back({mv.tick, mv.agent, mv.from, mv.to});
        }
        j["migrations"] = migs;
        out << j.dump() << "\n";
    }

    ordered_json tail;
    tail["type"] = "metrics";
    tail["ticks"] = trace.metrics.ticks;
    tail["msgs_total_cross"] = trace.metrics.msgs_total_cross;
    tail["msgs_cloud_to_local"] = trace.metrics.msgs_cloud_to_local;
    tail["msgs_local_to_cloud"] = trace.metrics.msgs_local_to_cloud;
    tail["msgs_local_to_local_cross"] = trace.metrics.msgs_local_to_local_cross;
    tail["migrations_total"] = trace.metrics.migrations_total;
    tail["migrations_cloud_to_local"] = trace.metrics.migrations_cloud_to_local;
    tail["t_exec_s"] = trace.metrics.t_exec_s;
    tail["truncated"] = trace.truncated;
    out << tail.dump() << "\n";
}

SimulationTrace read_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    SimulationTrace trace;
    std::string line;
    bool have_header = false, have_metrics = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const std::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " +
                                     e.what());
        }
        std::string type = j.at("type").get<std::string>();
        if (type == "header") {
            trace.env.width = j.at("env").at("width").get<int>();
            trace.env.height = j.at("env").at("height").get<int>();
            for (const auto& e : j.at("env").at("exits")) {
                trace.env.exits.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
            }
            const auto& p = j.at("params");
            trace.params.aoi_range = p.at("aoi_range").get<int>();
            trace.params.message_size_bytes = p.at("message_size_bytes").get<std::uint64_t>();
            trace.params.agent_size_bytes = p.at("agent_size_bytes").get<std::uint64_t>();
            trace.params.max_ticks = p.at("max_ticks").get<int>();
            trace.params.spawn_radius = p.at("spawn_radius").get<int>();
            trace.params.seed = p.at("seed").get<std::uint64_t>();
            for (const auto& a : j.at("agents")) {
                AgentState agent;
                agent.id = a.at(0).get<int>();
                agent.role = a.at(1) == "rescuer" ? Role::Rescuer : Role::Victim;
                agent.pos = {a.at(2).get<int>(), a.at(3).get<int>()};
                agent.partition = a.at(4).get<int>();
                trace.initial_agents.push_back(agent);
            }
            trace.initial_plan = plan_from_json(j.at("plan"));
            trace.messages_recorded = j.at("messages_recorded").get<bool>();
            have_header = true;
        } else if (type == "tick") {
            TickRecord tr;
            for (const auto& m : j.at("moves")) {
                tr.events.moves.push_back({m.at(0).get<int>(),
                                           {m.at(1).get<int>(), m.at(2).get<int>()},
                                           {m.at(3).get<int>(), m.at(4).get<int>()}});
            }
            for (const auto& m : j.at("messages")) {
                tr.events.messages.push_back({m.at(0).get<int>(), m.at(1).get<int>()});
            }
            tr.events.exits_reached = j.at("exits").get<std::vector<int>>();
            for (const auto& m : j.at("migrations")) {
                tr.migrations.push_back({m.at(0).get<int>(), m.at(1).get<int>(),
                                         m.at(2).get<int>(), m.at(3).get<int>()});
            }
            trace.ticks.push_back(std::move(tr));
        } else if (type == "metrics") {
            trace.metrics.ticks = j.at("ticks").get<std::uint64_t>();
            trace.metrics.msgs_total_cross = j.at("msgs_total_cross").get<std::uint64_t>();
            trace.metrics.msgs_cloud_to_local = j.at("msgs_cloud_to_local").get<std::uint64_t>();
            trace.metrics.msgs_local_to_cloud = j.at("msgs_local_to_cloud").get<std::uint64_t>();
            trace.metrics.msgs_local_to_local_cross =
                j.at("msgs_local_to_local_cross").get<std::uint64_t>();
            trace.metrics.migrations_total = j.at("migrations_total").get<std::uint64_t>();
            trace.metrics.migrations_cloud_to_local =
                j.at("migrations_cloud_to_local").get<std::uint64_t>();
            trace.metrics.t_exec_s = j.at("t_exec_s").get<double>();
            trace.truncated = j.at("truncated").get<bool>();
            have_metrics = true;
        } else {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": unknown record type '" + type + "'");
        }
    }
    if (!have_header || !have_metrics) {
        throw std::runtime_error(path.string() + ": incomplete trace file");
    }
    return trace;
}

void write_metrics_json(const SimulationMetrics& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    ordered_json j;
    j["ticks"] = m.ticks;
    j["msgs_total_cross"] = m.msgs_total_cross;
    j["msgs_cloud_to_local"] = m.msgs_cloud_to_local;
    j["msgs_local_to_cloud"] = m.msgs_local_to_cloud;
    j["msgs_local_to_local_cross"] = m.msgs_local_to_local_cross;
    j["migrations_total"] = m.migrations_total;
    j["migrations_cloud_to_local"] = m.migrations_cloud_to_local;
    j["t_exec_s"] = m.t_exec_s;
    out << j.dump(2) << "\n";
}

SimulationMetrics read_metrics_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    SimulationMetrics m;
    m.ticks = j.at("ticks").get<std::uint64_t>();
    m.msgs_total_cross = j.at("msgs_total_cross").get<std::uint64_t>();
    m.msgs_cloud_to_local = j.at("msgs_cloud_to_local").get<std::uint64_t>();
    m.msgs_local_to_cloud = j.value("msgs_local_to_cloud", std::uint64_t{0});
    m.msgs_local_to_local_cross = j.value("msgs_local_to_local_cross", std::uint64_t{0});
    m.migrations_total = j.at("migrations_total").get<std::uint64_t>();
    m.migrations_cloud_to_local = j.at("migrations_cloud_to_local").get<std::uint64_t>();
    m.t_exec_s = j.at("t_exec_s").get<double>();
    return m;
}

}  // namespace hybridsim
