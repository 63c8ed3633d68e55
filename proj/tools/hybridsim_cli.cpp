#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hybridsim/config.hpp"
#include "hybridsim/cost.hpp"
#include "hybridsim/experiment.hpp"
#include "hybridsim/report.hpp"
#include "hybridsim/text.hpp"
#include "hybridsim/trace_io.hpp"

namespace {

using namespace hybridsim;

void print_metrics(const SimulationMetrics& m) {
    std::cout << "ticks: " << m.ticks << "\n"
              << "msgs_total_cross: " << m.msgs_total_cross << "\n"
              << "msgs_cloud_to_local: " << m.msgs_cloud_to_local << "\n"
              << "msgs_local_to_cloud: " << m.msgs_local_to_cloud << "\n"
              << "msgs_local_to_local_cross: " << m.msgs_local_to_local_cross << "\n"
              << "migrations_total: " << m.migrations_total << "\n"
              << "migrations_cloud_to_local: " << m.migrations_cloud_to_local << "\n"
              << "t_exec_s: " << format_sig10(m.t_exec_s) << "\n";
}

void print_cost(const CostReport& c) {
    std::cout << "provider: " << c.provider << "\n"
              << "mu: " << c.mu << "\n"
              << "comm_cost_usd: " << format_sig10(c.comm_cost_usd) << "\n"
              << "migration_cost_usd: " << format_sig10(c.migration_cost_usd) << "\n"
              << "exec_cost_usd: " << format_sig10(c.exec_cost_usd) << "\n"
              << "total_cost_usd: " << format_sig10(c.total_cost_usd) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid-cloud evacuation simulator and deployment cost calculator"};
    app.require_subcommand(1);

    // simulate: one run, metrics and cost on stdout.
    auto* sim_cmd = app.add_subcommand("simulate", "Run one scenario and price it");
    std::string sim_scenario = "config1";
    std::string sim_algorithm = "kmeans";
    std::string sim_provider = "ec2";
    int sim_mu = 0;
    std::uint64_t sim_seed = 42;
    std::string sim_catalog, sim_trace, sim_spawn_mode, sim_metrics_out;
    int sim_agents = 0;
    double sim_t_exec = 0.0;
    sim_cmd->add_option("--scenario", sim_scenario, "Scenario preset name (config1..config5)");
    sim_cmd->add_option("--algorithm", sim_algorithm, "Partitioning algorithm: kmeans or grid");
    sim_cmd->add_option("--provider", sim_provider, "Provider name from the catalog");
    sim_cmd->add_option("--mu", sim_mu, "Bill transmission delays (0 or 1)");
    sim_cmd->add_option("--seed", sim_seed, "World and clustering seed");
    sim_cmd->add_option("--catalog", sim_catalog, "Provider catalog file");
    sim_cmd->add_option("--trace", sim_trace, "Write the full run trace to this file");
    sim_cmd->add_option("--metrics-out", sim_metrics_out,
                        "Write the run metrics as JSON (input for the cost subcommand)");
    sim_cmd->add_option("--agents", sim_agents, "Override the scenario's agent count");
    sim_cmd->add_option("--spawn-mode", sim_spawn_mode, "centered or scattered");
    sim_cmd->add_option("--t-exec", sim_t_exec, "Modeled execution time in seconds");

    // experiment: the full cross product from a config file.
    auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment config file");
    std::string exp_config;
    std::string exp_catalog;
    int exp_jobs = 1;
    exp_cmd->add_option("--config", exp_config, "Experiment file")->required();
    exp_cmd->add_option("--catalog", exp_catalog, "Provider catalog file");
    exp_cmd->add_option("--jobs", exp_jobs, "Worker threads for the simulations");

    // cost: reprice a stored metrics file.
    auto* cost_cmd = app.add_subcommand("cost", "Price a stored metrics file");
    std::string cost_metrics, cost_provider = "ec2", cost_catalog;
    int cost_mu = 0;
    std::uint64_t cost_msg_size = 1000, cost_agent_size = 10000;
    bool cost_round_up = false;
    double cost_t_exec = 0.0;
    cost_cmd->add_option("--metrics", cost_metrics, "Metrics JSON file")->required();
    cost_cmd->add_option("--provider", cost_provider, "Provider name from the catalog");
    cost_cmd->add_option("--mu", cost_mu, "Bill transmission delays (0 or 1)");
    cost_cmd->add_option("--message-size", cost_msg_size, "Message size in bytes");
    cost_cmd->add_option("--agent-size", cost_agent_size, "Agent state size in bytes");
    cost_cmd->add_flag("--round-up", cost_round_up, "Bill execution in whole time units");
    cost_cmd->add_option("--t-exec", cost_t_exec, "Override the stored execution time (seconds)");
    cost_cmd->add_option("--catalog", cost_catalog, "Provider catalog file");

    // report: regenerate CSV and plot data from stored records.
    auto* rep_cmd = app.add_subcommand("report", "Rebuild CSV outputs from records.jsonl");
    std::string rep_records, rep_outdir = "out";
    rep_cmd->add_option("--records", rep_records, "records.jsonl from a previous experiment")
        ->required();
    rep_cmd->add_option("--output-dir", rep_outdir, "Directory for the CSV outputs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim_cmd->parsed()) {
            ScenarioSpec scenario = preset_scenario(sim_scenario);
            if (sim_agents > 0) scenario.agents = sim_agents;
            if (!sim_spawn_mode.empty()) {
                if (sim_spawn_mode == "centered") {
                    scenario.spawn_mode = SpawnMode::CellCenter;
                } else if (sim_spawn_mode == "scattered") {
                    scenario.spawn_mode = SpawnMode::CellUniform;
                } else {
                    throw std::invalid_argument("--spawn-mode must be centered or scattered");
                }
            }
            if (sim_t_exec > 0) scenario.t_exec_override_s = sim_t_exec;
            Algorithm algorithm = parse_algorithm(sim_algorithm);
            ProviderCatalog catalog = resolve_catalog(
                sim_catalog.empty() ? std::nullopt
                                    : std::optional<std::filesystem::path>(sim_catalog));
            const ProviderProfile& provider = catalog.require(sim_provider);

            SingleRun result =
                simulate_single(scenario, algorithm, sim_seed, /*keep_messages=*/!sim_trace.empty());
            CostParams params;
            params.mu = sim_mu;
            params.message_size_bytes = scenario.message_size_bytes;
            params.agent_size_bytes = scenario.agent_size_bytes;
            params.round_up_billing = scenario.round_up_billing;
            CostReport report = deployment_cost(result.metrics, params, provider);

            std::cout << "run_id: "
                      << make_run_id(scenario.name, algorithm, provider.name, sim_mu, sim_seed)
                      << "\n"
                      << "scenario: " << scenario.name << "\n"
                      << "algorithm: " << algorithm_name(algorithm) << "\n"
                      << "seed: " << sim_seed << "\n"
                      << "truncated: " << (result.truncated ? "true" : "false") << "\n";
            print_metrics(result.metrics);
            print_cost(report);
            if (!sim_trace.empty()) {
                write_trace(result.trace, sim_trace);
                std::cerr << "trace written to " << sim_trace << "\n";
            }
            if (!sim_metrics_out.empty()) {
                write_metrics_json(result.metrics, sim_metrics_out);
                std::cerr << "metrics written to " << sim_metrics_out << "\n";
            }
        } else if (exp_cmd->parsed()) {
            ExperimentSpec spec = load_config(exp_config);
            ProviderCatalog catalog = resolve_catalog(
                exp_catalog.empty() ? std::nullopt
                                    : std::optional<std::filesystem::path>(exp_catalog));
            std::vector<RunRecord> records = run_experiment(spec, catalog, exp_jobs);
            emit_report(records, spec.output_dir);
            std::cout << records.size() << " records written to " << spec.output_dir.string()
                      << "\n";
        } else if (cost_cmd->parsed()) {
            SimulationMetrics metrics = read_metrics_json(cost_metrics);
            if (cost_t_exec > 0) metrics.t_exec_s = cost_t_exec;
            ProviderCatalog catalog = resolve_catalog(
                cost_catalog.empty() ? std::nullopt
                                     : std::optional<std::filesystem::path>(cost_catalog));
            const ProviderProfile& provider = catalog.require(cost_provider);
            CostParams params;
            params.mu = cost_mu;
            params.message_size_bytes = cost_msg_size;
            params.agent_size_bytes = cost_agent_size;
            params.round_up_billing = cost_round_up;
            print_cost(deployment_cost(metrics, params, provider));
        } else if (rep_cmd->parsed()) {
            std::vector<RunRecord> records = read_records(rep_records);
            emit_report(records, rep_outdir);
            std::cout << "report rebuilt from " << records.size() << " records in " << rep_outdir
                      << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
