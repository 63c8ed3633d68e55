#include "hybridsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "hybridsim/report.hpp"
#include "hybridsim/text.hpp"

namespace hybridsim {

using ordered_json = nlohmann::ordered_json;

std::string make_run_id(const std::string& scenario, Algorithm algorithm,
                        const std::string& provider, int mu, std::uint64_t seed) {
    return scenario + "-" + algorithm_name(algorithm) + "-" + provider + "-mu" +
           std::to_string(mu) + "-s" + std::to_string(seed);
}

PartitionPlan build_plan(const ScenarioSpec& scenario, Algorithm algorithm,
                         const WorldState& world, std::uint64_t seed) {
    std::vector<Coord> positions;
    positions.reserve(world.agents.size());
    for (const AgentState& a : world.agents) positions.push_back(a.pos);

    PartitionPlan plan;
    if (algorithm == Algorithm::Grid) {
        plan = grid_partition(world.env, 2, 2, positions);
    } else {
        plan = kmeans_partition(positions, kPartitions, seed).plan;
    }
    assign_cloud(plan, scenario.cloud_partition_index);
    return plan;
}

SingleRun simulate_single(const ScenarioSpec& scenario, Algorithm algorithm, std::uint64_t seed,
                          bool keep_messages) {
    scenario.validate();
    ScenarioConfig config = scenario.to_config(seed);
    WorldState world = init_world(config);
    PartitionPlan plan = build_plan(scenario, algorithm, world, seed);

    RunOptions options;
    options.keep_messages = keep_messages;
    options.t_exec_override_s = scenario.t_exec_override_s;

    SingleRun out;
    out.trace = run(config, plan, options);
    out.metrics = out.trace.metrics;
    out.truncated = out.trace.truncated;
    return out;
}

void sort_records(std::vector<RunRecord>& records) {
    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.scenario, a.algorithm, a.provider, a.mu, a.seed) <
               std::tie(b.scenario, b.algorithm, b.provider, b.mu, b.seed);
    });
}

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, const ProviderCatalog& catalog,
                                      int jobs) {
    spec.validate();
    for (const std::string& provider : spec.providers) catalog.require(provider);

    struct Task {
        const ScenarioSpec* scenario;
        Algorithm algorithm;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const ScenarioSpec& s : spec.scenarios) {
        for (Algorithm a : spec.algorithms) {
            for (int rep = 0; rep < spec.repetitions; ++rep) {
                tasks.push_back({&s, a, spec.base_seed + static_cast<std::uint64_t>(rep)});
            }
        }
    }

    // One simulation per (scenario, algorithm, seed); every (provider, mu)
    // prices the same metrics. Tasks are independent, results land in
    // per-task slots, so the thread count never changes the outcome.
    std::vector<SingleRun> runs(tasks.size());
    std::atomic<size_t> cursor{0};
    int workers = std::max(1, jobs);
    auto work = [&] {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= tasks.size()) return;
            runs[i] = simulate_single(*tasks[i].scenario, tasks[i].algorithm, tasks[i].seed,
                                      /*keep_messages=*/false);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    std::vector<RunRecord> records;
    records.reserve(tasks.size() * spec.providers.size() * spec.mu_values.size());
    for (size_t i = 0; i < tasks.size(); ++i) {
        const Task& task = tasks[i];
        for (const std::string& provider_name : spec.providers) {
            const ProviderProfile& provider = catalog.require(provider_name);
            for (int mu : spec.mu_values) {
                CostParams params;
                params.mu = mu;
                params.message_size_bytes = task.scenario->message_size_bytes;
                params.agent_size_bytes = task.scenario->agent_size_bytes;
                params.round_up_billing = task.scenario->round_up_billing;

                RunRecord rec;
                rec.scenario = task.scenario->name;
                rec.algorithm = task.algorithm;
                rec.provider = provider_name;
                rec.mu = mu;
                rec.seed = task.seed;
                rec.truncated = runs[i].truncated;
                rec.metrics = runs[i].metrics;
                rec.cost = deployment_cost(runs[i].metrics, params, provider);
                rec.run_id = make_run_id(rec.scenario, rec.algorithm, provider_name, mu, rec.seed);
                records.push_back(std::move(rec));
            }
        }
    }
    sort_records(records);

    std::filesystem::create_directories(spec.output_dir);
    write_records(records, spec.output_dir / "records.jsonl");
    return records;
}

namespace {

ordered_json metrics_to_json(const SimulationMetrics& m) {
    ordered_json j;
    j["ticks"] = m.ticks;
    j["msgs_total_cross"] = m.msgs_total_cross;
    j["msgs_cloud_to_local"] = m.msgs_cloud_to_local;
    j["msgs_local_to_cloud"] = m.msgs_local_to_cloud;
    j["msgs_local_to_local_cross"] = m.msgs_local_to_local_cross;
    j["migrations_total"] = m.migrations_total;
    j["migrations_cloud_to_local"] = m.migrations_cloud_to_local;
    j["t_exec_s"] = m.t_exec_s;
    return j;
}

SimulationMetrics metrics_from_json(const ordered_json& j) {
    SimulationMetrics m;
    m.ticks = j.at("ticks").get<std::uint64_t>();
    m.msgs_total_cross = j.at("msgs_total_cross").get<std::uint64_t>();
    m.msgs_cloud_to_local = j.at("msgs_cloud_to_local").get<std::uint64_t>();
    m.msgs_local_to_cloud = j.at("msgs_local_to_cloud").get<std::uint64_t>();
    m.msgs_local_to_local_cross = j.at("msgs_local_to_local_cross").get<std::uint64_t>();
    m.migrations_total = j.at("migrations_total").get<std::uint64_t>();
    m.migrations_cloud_to_local = j.at("migrations_cloud_to_local").get<std::uint64_t>();
    m.t_exec_s = j.at("t_exec_s").get<double>();
    return m;
}

ordered_json cost_to_json(const CostReport& c) {
    ordered_json j;
    j["provider"] = c.provider;
    j["mu"] = c.mu;
    j["billed_messages"] = c.billed_messages;
    j["billed_migrations"] = c.billed_migrations;
    j["t_exec_s"] = c.t_exec_s;
    j["message_size_bytes"] = c.message_size_bytes;
    j["agent_size_bytes"] = c.agent_size_bytes;
    j["round_up_billing"] = c.round_up_billing;
    j["comm_cost_usd"] = c.comm_cost_usd;
    j["migration_cost_usd"] = c.migration_cost_usd;
    j["exec_cost_usd"] = c.exec_cost_usd;
    j["total_cost_usd"] = c.total_cost_usd;
    return j;
}

CostReport cost_from_json(const ordered_json& j) {
    CostReport c;
    c.provider = j.at("provider").get<std::string>();
    c.mu = j.at("mu").get<int>();
    c.billed_messages = j.at("billed_messages").get<std::uint64_t>();
    c.billed_migrations = j.at("billed_migrations").get<std::uint64_t>();
    c.t_exec_s = j.at("t_exec_s").get<double>();
    c.message_size_bytes = j.at("message_size_bytes").get<std::uint64_t>();
    c.agent_size_bytes = j.at("agent_size_bytes").get<std::uint64_t>();
    c.round_up_billing = j.at("round_up_billing").get<bool>();
    c.comm_cost_usd = j.at("comm_cost_usd").get<double>();
    c.migration_cost_usd = j.at("migration_cost_usd").get<double>();
    c.exec_cost_usd = j.at("exec_cost_usd").get<double>();
    c.total_cost_usd = j.at("total_cost_usd").get<double>();
    return c;
}

}  // namespace

void write_records(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const RunRecord& r : records) {
        ordered_json j;
        j["run_id"] = r.run_id;
        j["scenario"] = r.scenario;
        j["algorithm"] = algorithm_name(r.algorithm);
        j["provider"] = r.provider;
        j["mu"] = r.mu;
        j["seed"] = r.seed;
        j["truncated"] = r.truncated;
        j["metrics"] = metrics_to_json(r.metrics);
        j["cost"] = cost_to_json(r.cost);
        out << j.dump() << "\n";
    }
}

std::vector<RunRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<RunRecord> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const std::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " +
                                     e.what());
        }
        RunRecord r;
        r.run_id = j.at("run_id").get<std::string>();
        r.scenario = j.at("scenario").get<std::string>();
        r.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
        r.provider = j.at("provider").get<std::string>();
        r.mu = j.at("mu").get<int>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.truncated = j.at("truncated").get<bool>();
        r.metrics = metrics_from_json(j.at("metrics"));
        r.cost = cost_from_json(j.at("cost"));
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace hybridsim
