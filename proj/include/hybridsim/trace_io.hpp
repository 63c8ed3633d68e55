#pragma once

#include <filesystem>

#include "hybridsim/sim.hpp"

namespace hybridsim {

// Trace files are line-delimited JSON: a header object (environment,
// params, initial agents, initial plan), one object per tick (moves,
// messages, exits, migrations), and a trailing metrics object. Identical
// runs serialize byte-identically.
void write_trace(const SimulationTrace& trace, const std::filesystem::path& path);
SimulationTrace read_trace(const std::filesystem::path& path);

// Metrics as a small JSON object; the file the `cost` subcommand reprices.
void write_metrics_json(const SimulationMetrics& m, const std::filesystem::path& path);
SimulationMetrics read_metrics_json(const std::filesystem::path& path);

}  // namespace hybridsim
