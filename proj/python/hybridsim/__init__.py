"""Hybrid-deployment evacuation simulator and deployment cost model."""

from hybridsim._core import (
    CostParams,
    CostReport,
    ProviderProfile,
    SimulationMetrics,
    TransferDirection,
    __version__,
    comm_cost,
    deployment_cost,
    exec_cost,
    grid_assignment,
    kmeans,
    migration_cost,
    preset_scenarios,
    provider,
    provider_names,
    simulate,
    transfer_time_s,
    unit_transfer_cost,
)

__all__ = [
    "CostParams",
    "CostReport",
    "ProviderProfile",
    "SimulationMetrics",
    "TransferDirection",
    "__version__",
    "comm_cost",
    "deployment_cost",
    "exec_cost",
    "grid_assignment",
    "kmeans",
    "migration_cost",
    "preset_scenarios",
    "provider",
    "provider_names",
    "simulate",
    "transfer_time_s",
    "unit_transfer_cost",
]
