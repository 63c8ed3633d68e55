#include "hybridsim/cost.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "hybridsim/text.hpp"

namespace hybridsim {

void ProviderProfile::validate() const {
    if (name.empty()) throw std::invalid_argument("provider name must not be empty");
    if (cost_t_unit_usd < 0) throw std::invalid_argument("cost_t_unit_usd must be >= 0");
    if (t_unit_s <= 0) throw std::invalid_argument("t_unit_s must be positive");
    if (cost_d_unit_usd < 0) throw std::invalid_argument("cost_d_unit_usd must be >= 0");
    if (d_unit_bytes <= 0) throw std::invalid_argument("d_unit_bytes must be positive");
    if (latency_s < 0) throw std::invalid_argument("latency_s must be >= 0");
    if (bandwidth_bps <= 0) throw std::invalid_argument("bandwidth_bps must be positive");
    if (ingress_cost_usd < 0) throw std::invalid_argument("ingress_cost_usd must be >= 0");
}

ProviderProfile ec2_preset() {
    ProviderProfile p;
    p.name = "ec2";
    p.cost_t_unit_usd = 0.19;   // on-demand hour
    p.t_unit_s = 3600.0;
    p.cost_d_unit_usd = 0.12;   // per GB out
    p.d_unit_bytes = 1e9;
    p.latency_s = 0.1241;
    p.bandwidth_bps = 1e8;      // 100 Mb/s
    p.ingress_cost_usd = 0.0;
    return p;
}

ProviderProfile azure_preset() {
    ProviderProfile p;
    p.name = "azure";
    p.cost_t_unit_usd = 0.324;
    p.t_unit_s = 3600.0;
    p.cost_d_unit_usd = 0.12;
    p.d_unit_bytes = 1e9;
    p.latency_s = 0.1636;
    p.bandwidth_bps = 1e8;
    p.ingress_cost_usd = 0.0;
    return p;
}

const ProviderProfile* ProviderCatalog::find(std::string_view name) const {
    for (const ProviderProfile& p : providers) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

const ProviderProfile& ProviderCatalog::require(std::string_view name) const {
    const ProviderProfile* p = find(name);
    if (!p) {
        std::string known;
        for (const ProviderProfile& q : providers) {
            if (!known.empty()) known += ", ";
            known += q.name;
        }
        throw std::invalid_argument("unknown provider '" + std::string(name) +
                                    "' (known: " + known + ")");
    }
    return *p;
}

void ProviderCatalog::upsert(const ProviderProfile& p) {
    for (ProviderProfile& q : providers) {
        if (q.name == p.name) {
            q = p;
            return;
        }
    }
    providers.push_back(p);
}

ProviderCatalog builtin_catalog() {
    ProviderCatalog cat;
    cat.providers = {ec2_preset(), azure_preset()};
    return cat;
}

ProviderCatalog load_catalog(const std::filesystem::path& path) {
    ProviderCatalog cat;
    for (const IniSection& section : parse_ini(path)) {
        if (section.name.empty()) {
            if (!section.entries.empty()) {
                throw std::runtime_error(path.string() + ":" +
                                         std::to_string(section.entries.front().line) +
                                         ": keys must appear inside a [provider] section");
            }
            continue;
        }
        if (section.name != "provider") {
            throw std::runtime_error(path.string() + ":" + std::to_string(section.line) +
                                     ": unexpected section [" + section.name + "]");
        }
        ProviderProfile p;
        bool have_name = false;
        for (const IniEntry& e : section.entries) {
            if (e.key == "name") {
                p.name = e.value;
                have_name = true;
            } else if (e.key == "cost_t_unit_usd") {
                p.cost_t_unit_usd = parse_double(e.value, e.key);
            } else if (e.key == "t_unit_s") {
                p.t_unit_s = parse_double(e.value, e.key);
            } else if (e.key == "cost_d_unit_usd") {
                p.cost_d_unit_usd = parse_double(e.value, e.key);
            } else if (e.key == "d_unit_bytes") {
                p.d_unit_bytes = parse_double(e.value, e.key);
            } else if (e.key == "latency_s") {
                p.latency_s = parse_double(e.value, e.key);
            } else if (e.key == "bandwidth_bps") {
                p.bandwidth_bps = parse_double(e.value, e.key);
            } else if (e.key == "ingress_cost_usd") {
                p.ingress_cost_usd = parse_double(e.value, e.key);
            } else {
                throw std::runtime_error(path.string() + ":" + std::to_string(e.line) +
                                         ": unknown provider key '" + e.key + "'");
            }
        }
        if (!have_name) {
            throw std::runtime_error(path.string() + ":" + std::to_string(section.line) +
                                     ": provider section is missing 'name'");
        }
        p.validate();
        cat.upsert(p);
    }
    return cat;
}

ProviderCatalog resolve_catalog(const std::optional<std::filesystem::path>& explicit_path) {
    ProviderCatalog cat = builtin_catalog();
    if (const char* env_path = std::getenv(kCatalogEnvVar)) {
        for (const ProviderProfile& p : load_catalog(env_path).providers) cat.upsert(p);
    }
    if (explicit_path) {
        for (const ProviderProfile& p : load_catalog(*explicit_path).providers) cat.upsert(p);
    }
    return cat;
}

void CostParams::validate() const {
    if (mu != 0 && mu != 1) throw std::invalid_argument("mu must be 0 or 1");
    if (message_size_bytes == 0) throw std::invalid_argument("message_size_bytes must be positive");
    if (agent_size_bytes == 0) throw std::invalid_argument("agent_size_bytes must be positive");
}

double transfer_time_s(std::uint64_t size_bytes, const ProviderProfile& provider) {
    return 8.0 * static_cast<double>(size_bytes) / provider.bandwidth_bps + provider.latency_s;
}

double unit_transfer_cost(std::uint64_t size_bytes, const ProviderProfile& provider, int mu,
                          TransferDirection direction) {
    if (mu != 0 && mu != 1) throw std::invalid_argument("mu must be 0 or 1");
    double data_rate = direction == TransferDirection::CloudToLocal ? provider.cost_d_unit_usd
                                                                    : provider.ingress_cost_usd;
    double data_cost = static_cast<double>(size_bytes) / provider.d_unit_bytes * data_rate;
    double time_cost =
        mu * (transfer_time_s(size_bytes, provider) / provider.t_unit_s) * provider.cost_t_unit_usd;
    return data_cost + time_cost;
}

double comm_cost(std::uint64_t billed_messages, const CostParams& params,
                 const ProviderProfile& provider) {
    params.validate();
    return static_cast<double>(billed_messages) *
           unit_transfer_cost(params.message_size_bytes, provider, params.mu);
}

double migration_cost(std::uint64_t billed_migrations, const CostParams& params,
                      const ProviderProfile& provider) {
    params.validate();
    return static_cast<double>(billed_migrations) *
           unit_transfer_cost(params.agent_size_bytes, provider, params.mu);
}

double exec_cost(double t_exec_s, const ProviderProfile& provider, bool round_up) {
    if (t_exec_s < 0) throw std::invalid_argument("t_exec must be >= 0");
    double units = t_exec_s / provider.t_unit_s;
    if (round_up) units = std::ceil(units);
    return units * provider.cost_t_unit_usd;
}

CostReport deployment_cost(const SimulationMetrics& metrics, const CostParams& params,
                           const ProviderProfile& provider) {
    params.validate();
    provider.validate();
    CostReport report;
    report.comm_cost_usd = comm_cost(metrics.msgs_cloud_to_local, params, provider);
    report.migration_cost_usd = migration_cost(metrics.migrations_cloud_to_local, params, provider);
    report.exec_cost_usd = exec_cost(metrics.t_exec_s, provider, params.round_up_billing);
    report.total_cost_usd =
        report.comm_cost_usd + report.migration_cost_usd + report.exec_cost_usd;
    report.provider = provider.name;
    report.mu = params.mu;
    report.billed_messages = metrics.msgs_cloud_to_local;
    report.billed_migrations = metrics.migrations_cloud_to_local;
    report.t_exec_s = metrics.t_exec_s;
    report.message_size_bytes = params.message_size_bytes;
    report.agent_size_bytes = params.agent_size_bytes;
    report.round_up_billing = params.round_up_billing;
    return report;
}

}  // namespace hybridsim
