#include "hybridsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "hybridsim/text.hpp"

namespace hybridsim {

double mean(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("mean of empty sample");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_stddev(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("stddev of empty sample");
    if (values.size() == 1) return 0.0;
    double m = mean(values);
    double acc = 0.0;
    for (double v : values) acc += (v - m) * (v - m);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

namespace {

struct GroupKey {
    std::string scenario;
    std::string algorithm;
    std::string provider;
    int mu;

    bool operator<(const GroupKey& o) const {
        return std::tie(scenario, algorithm, provider, mu) <
               std::tie(o.scenario, o.algorithm, o.provider, o.mu);
    }
};

struct CostSamples {
    std::vector<double> comm, mig, exec, total;
};

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_runs_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "run_id,scenario,algorithm,provider,mu,seed,ticks,truncated,msgs_total_cross,"
           "msgs_cloud_to_local,migrations_total,migrations_cloud_to_local,t_exec_s,"
           "comm_cost_usd,migration_cost_usd,exec_cost_usd,total_cost_usd\n";
    for (const RunRecord& r : records) {
        out << r.run_id << ',' << r.scenario << ',' << algorithm_name(r.algorithm) << ','
            << r.provider << ',' << r.mu << ',' << r.seed << ',' << r.metrics.ticks << ','
            << (r.truncated ? 1 : 0) << ',' << r.metrics.msgs_total_cross << ','
            << r.metrics.msgs_cloud_to_local << ',' << r.metrics.migrations_total << ','
            << r.metrics.migrations_cloud_to_local << ',' << format_sig10(r.metrics.t_exec_s)
            << ',' << format_sig10(r.cost.comm_cost_usd) << ','
            << format_sig10(r.cost.migration_cost_usd) << ','
            << format_sig10(r.cost.exec_cost_usd) << ',' << format_sig10(r.cost.total_cost_usd)
            << '\n';
    }
}

void write_summary_csv(const std::map<GroupKey, CostSamples>& groups,
                       const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "scenario,algorithm,provider,mu,runs,comm_cost_usd_mean,comm_cost_usd_stddev,"
           "migration_cost_usd_mean,migration_cost_usd_stddev,exec_cost_usd_mean,"
           "exec_cost_usd_stddev,total_cost_usd_mean,total_cost_usd_stddev\n";
    for (const auto& [key, samples] : groups) {
        out << key.scenario << ',' << key.algorithm << ',' << key.provider << ',' << key.mu << ','
            << samples.total.size() << ',' << format_sig10(mean(samples.comm)) << ','
            << format_sig10(sample_stddev(samples.comm)) << ','
            << format_sig10(mean(samples.mig)) << ',' << format_sig10(sample_stddev(samples.mig))
            << ',' << format_sig10(mean(samples.exec)) << ','
            << format_sig10(sample_stddev(samples.exec)) << ','
            << format_sig10(mean(samples.total)) << ','
            << format_sig10(sample_stddev(samples.total)) << '\n';
    }
}

// One figure file: rows are scenarios, one column of mean costs per series.
void write_fig_csv(const std::filesystem::path& path, const std::vector<std::string>& scenarios,
                   const std::vector<std::string>& series_names,
                   const std::map<std::pair<std::string, std::string>, std::vector<double>>& cells) {
    std::ofstream out = open_out(path);
    out << "scenario";
    for (const std::string& s : series_names) out << ',' << s;
    out << '\n';
    for (const std::string& scenario : scenarios) {
        out << scenario;
        for (const std::string& series : series_names) {
            auto it = cells.find({scenario, series});
            out << ',';
            if (it != cells.end() && !it->second.empty()) out << format_sig10(mean(it->second));
        }
        out << '\n';
    }
}

}  // namespace

void emit_report(const std::vector<RunRecord>& records, const std::filesystem::path& output_dir) {
    if (records.empty()) throw std::invalid_argument("no records to report");
    std::filesystem::create_directories(output_dir);

    std::vector<RunRecord> sorted = records;
    sort_records(sorted);

    write_runs_csv(sorted, output_dir / "runs.csv");

    std::map<GroupKey, CostSamples> groups;
    for (const RunRecord& r : sorted) {
        CostSamples& g = groups[{r.scenario, algorithm_name(r.algorithm), r.provider, r.mu}];
        g.comm.push_back(r.cost.comm_cost_usd);
        g.mig.push_back(r.cost.migration_cost_usd);
        g.exec.push_back(r.cost.exec_cost_usd);
        g.total.push_back(r.cost.total_cost_usd);
    }
    write_summary_csv(groups, output_dir / "summary.csv");

    // Plot data. Figures 1-3 compare (algorithm, provider) series at the
    // lowest mu present; figures 4-5 show the k-means delay surcharge
    // (mu=0 vs mu=1) per provider.
    std::vector<std::string> scenarios;
    std::set<std::string> seen;
    int base_mu = 1;
    for (const RunRecord& r : sorted) {
        if (seen.insert(r.scenario).second) scenarios.push_back(r.scenario);
        base_mu = std::min(base_mu, r.mu);
    }
    std::sort(scenarios.begin(), scenarios.end());

    using Cells = std::map<std::pair<std::string, std::string>, std::vector<double>>;
    Cells comm_cells, mig_cells, exec_cells, comm_delay_cells, mig_delay_cells;
    std::set<std::string> fig123_series, fig45_series;
    for (const RunRecord& r : sorted) {
        if (r.mu == base_mu) {
            std::string series = std::string(algorithm_name(r.algorithm)) + "_" + r.provider;
            fig123_series.insert(series);
            comm_cells[{r.scenario, series}].push_back(r.cost.comm_cost_usd);
            mig_cells[{r.scenario, series}].push_back(r.cost.migration_cost_usd);
            exec_cells[{r.scenario, series}].push_back(r.cost.exec_cost_usd);
        }
        if (r.algorithm == Algorithm::KMeans) {
            std::string series = r.provider + "_mu" + std::to_string(r.mu);
            fig45_series.insert(series);
            comm_delay_cells[{r.scenario, series}].push_back(r.cost.comm_cost_usd);
            mig_delay_cells[{r.scenario, series}].push_back(r.cost.migration_cost_usd);
        }
    }

    std::vector<std::string> s123(fig123_series.begin(), fig123_series.end());
    write_fig_csv(output_dir / "fig1_comm.csv", scenarios, s123, comm_cells);
    write_fig_csv(output_dir / "fig2_mig.csv", scenarios, s123, mig_cells);
    write_fig_csv(output_dir / "fig3_exec.csv", scenarios, s123, exec_cells);
    if (!fig45_series.empty()) {
        std::vector<std::string> s45(fig45_series.begin(), fig45_series.end());
        write_fig_csv(output_dir / "fig4_comm_delay.csv", scenarios, s45, comm_delay_cells);
        write_fig_csv(output_dir / "fig5_mig_delay.csv", scenarios, s45, mig_delay_cells);
    }
}

}  // namespace hybridsim
