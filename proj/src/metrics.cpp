#include "hybridsim/metrics.hpp"

#include <stdexcept>

namespace hybridsim {

MetricsAccumulator::MetricsAccumulator(std::optional<double> t_exec_override_s)
    : override_(t_exec_override_s) {
    if (override_ && *override_ <= 0.0) {
        throw std::invalid_argument("t_exec override must be positive");
    }
}

void MetricsAccumulator::record_tick(const TickEvents& events,
                                     const std::vector<MigrationEvent>& migrations,
                                     const PartitionPlan& plan) {
    m_.ticks += 1;

    for (const Message& msg : events.messages) {
        int ps = plan.assignment.at(msg.sender);
        int pr = plan.assignment.at(msg.receiver);
        if (ps == pr) continue;
        m_.msgs_total_cross += 1;
        bool sender_cloud = plan.placement.at(ps) == Placement::Cloud;
        bool receiver_cloud = plan.placement.at(pr) == Placement::Cloud;
        if (sender_cloud && !receiver_cloud) {
            m_.msgs_cloud_to_local += 1;
        } else if (!sender_cloud && receiver_cloud) {
            m_.msgs_local_to_cloud += 1;
        } else if (!sender_cloud && !receiver_cloud) {
            m_.msgs_local_to_local_cross += 1;
        }
    }

    for (const MigrationEvent& ev : migrations) {
        m_.migrations_total += 1;
        if (plan.placement.at(ev.from) == Placement::Cloud &&
            plan.placement.at(ev.to) == Placement::Local) {
            m_.migrations_cloud_to_local += 1;
        }
    }
}

SimulationMetrics MetricsAccumulator::finalize(double wall_clock_s) {
    if (m_.ticks == 0) throw std::logic_error("finalize before any tick was recorded");
    if (wall_clock_s <= 0.0) throw std::invalid_argument("wall clock must be positive");
    m_.t_exec_s = override_ ? *override_ : wall_clock_s;
    return m_;
}

}  // namespace hybridsim
