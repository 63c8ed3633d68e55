#pragma once

#include <filesystem>
#include <vector>

#include "hybridsim/experiment.hpp"

namespace hybridsim {

// Sample standard deviation (n-1 denominator); 0 for a single value.
double sample_stddev(const std::vector<double>& values);
double mean(const std::vector<double>& values);

// Writes runs.csv, summary.csv and the five plot-data files into
// output_dir. runs.csv has one row per record in canonical order;
// summary.csv aggregates the four cost columns per (scenario, algorithm,
// provider, mu). fig1_comm/fig2_mig/fig3_exec hold per-scenario mean costs
// by (algorithm, provider) at the lowest mu present; fig4_comm_delay and
// fig5_mig_delay hold the k-means mu=0 vs mu=1 comparison per provider.
void emit_report(const std::vector<RunRecord>& records, const std::filesystem::path& output_dir);

}  // namespace hybridsim
