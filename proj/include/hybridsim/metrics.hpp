#pragma once

#include <cstdint>
#include <optional>

#include "hybridsim/partition.hpp"
#include "hybridsim/world.hpp"

namespace hybridsim {

struct SimulationMetrics {
    std::uint64_t ticks = 0;
    std::uint64_t msgs_total_cross = 0;          // sender and receiver in different partitions
    std::uint64_t msgs_cloud_to_local = 0;       // the billed direction
    std::uint64_t msgs_local_to_cloud = 0;
    std::uint64_t msgs_local_to_local_cross = 0; // cross-partition, both ends Local
    std::uint64_t migrations_total = 0;
    std::uint64_t migrations_cloud_to_local = 0; // the billed direction
    double t_exec_s = 0.0;
};

// Streaming tick-by-tick counter. Message direction is evaluated against
// the partition assignment as it stood when the messages were exchanged,
// i.e. post-move but before that tick's migrations are applied, so
// record_tick must be called with the pre-update plan.
class MetricsAccumulator {
  public:
    explicit MetricsAccumulator(std::optional<double> t_exec_override_s = std::nullopt);

    void record_tick(const TickEvents& events, const std::vector<MigrationEvent>& migrations,
                     const PartitionPlan& pre_update_plan);

    // Closes the run. t_exec is the measured wall clock unless an override
    // was configured. Throws if no tick was recorded or wall_clock_s <= 0.
    SimulationMetrics finalize(double wall_clock_s);

    const SimulationMetrics& current() const { return m_; }

  private:
    SimulationMetrics m_;
    std::optional<double> override_;
};

}  // namespace hybridsim
