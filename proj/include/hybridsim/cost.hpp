#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybridsim/metrics.hpp"

namespace hybridsim {

// Billing profile of one cloud provider. Data sizes are decimal bytes
// (d_unit_bytes = 1e9 means a 1 GB billing unit), bandwidth is bits per
// second, compute is billed per t_unit_s at cost_t_unit_usd.
struct ProviderProfile {
    std::string name;
    double cost_t_unit_usd = 0.0;
    double t_unit_s = 3600.0;
    double cost_d_unit_usd = 0.0;
    double d_unit_bytes = 1e9;
    double latency_s = 0.0;
    double bandwidth_bps = 0.0;
    double ingress_cost_usd = 0.0;  // per d_unit, for the unbilled direction

    void validate() const;
};

ProviderProfile ec2_preset();
ProviderProfile azure_preset();

struct ProviderCatalog {
    std::vector<ProviderProfile> providers;

    const ProviderProfile* find(std::string_view name) const;
    // Throws with the list of known names when absent.
    const ProviderProfile& require(std::string_view name) const;
    void upsert(const ProviderProfile& p);
};

ProviderCatalog builtin_catalog();

// Parses a provider catalog file: one [provider] section per profile with
// keys name, cost_t_unit_usd, t_unit_s, cost_d_unit_usd, d_unit_bytes,
// latency_s, bandwidth_bps, ingress_cost_usd. Unknown keys are an error.
ProviderCatalog load_catalog(const std::filesystem::path& path);

// Environment variable consulted by resolve_catalog.
inline constexpr const char* kCatalogEnvVar = "HYBRIDSIM_PROVIDER_CATALOG";

// Builtins, overlaid with the file from HYBRIDSIM_PROVIDER_CATALOG if set,
// overlaid with explicit_path if given (entries override by name).
ProviderCatalog resolve_catalog(const std::optional<std::filesystem::path>& explicit_path);

struct CostParams {
    int mu = 0;  // 1 = bill transmission delay time, 0 = neglect it
    std::uint64_t message_size_bytes = 1000;
    std::uint64_t agent_size_bytes = 10000;
    bool round_up_billing = false;  // bill execution in whole t_units

    void validate() const;
};

enum class TransferDirection { CloudToLocal, LocalToCloud };

// Seconds to push size_bytes through the provider link: 8*size/bandwidth
// plus the fixed latency.
double transfer_time_s(std::uint64_t size_bytes, const ProviderProfile& provider);

// Dollars for one transfer of size_bytes: data volume priced per d_unit,
// plus (when mu=1) the transfer time priced per t_unit. The reverse
// direction uses ingress_cost_usd for the data term (zero on the presets).
double unit_transfer_cost(std::uint64_t size_bytes, const ProviderProfile& provider, int mu,
                          TransferDirection direction = TransferDirection::CloudToLocal);

double comm_cost(std::uint64_t billed_messages, const CostParams& params,
                 const ProviderProfile& provider);
double migration_cost(std::uint64_t billed_migrations, const CostParams& params,
                      const ProviderProfile& provider);

// Execution cost, linear in t_exec by default; round_up bills whole t_units.
double exec_cost(double t_exec_s, const ProviderProfile& provider, bool round_up = false);

struct CostReport {
    double comm_cost_usd = 0.0;
    double migration_cost_usd = 0.0;
    double exec_cost_usd = 0.0;
    double total_cost_usd = 0.0;
    // Echo of the priced inputs.
    std::string provider;
    int mu = 0;
    std::uint64_t billed_messages = 0;
    std::uint64_t billed_migrations = 0;
    double t_exec_s = 0.0;
    std::uint64_t message_size_bytes = 0;
    std::uint64_t agent_size_bytes = 0;
    bool round_up_billing = false;
};

// Total deployment cost of a finished run: cloud->local messages, cloud->
// local migrations, and execution time.
CostReport deployment_cost(const SimulationMetrics& metrics, const CostParams& params,
                           const ProviderProfile& provider);

}  // namespace hybridsim
