#pragma once

#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtbas/aggregation.hpp"
#include "dtbas/core.hpp"

namespace dtbas {

/// Full protocol run: split -> ingest -> column sums -> supplier -> bills.
/// Keeps the plaintext readings as simulation ground truth for oracles and
/// attacker comparisons; no protocol party sees them.
struct SimulationResult {
  SimConfig config;
  uint32_t intervals = 0;
  std::vector<std::vector<uint64_t>> readings;  // [meter][interval], plaintext
  std::vector<AggregatorLedger> ledgers;
  SupplierState supplier;

  uint64_t plaintext_interval_sum(Interval interval) const;
  uint64_t plaintext_row_sum(MeterId meter) const;

  /// Per-interval check that aggregator column sums reconstruct the plaintext
  /// total.
  bool conservation_holds() const;

  nlohmann::json to_json() const;
};

/// Runs the pipeline over `intervals` slots. Profiles must be one per meter
/// with at least `intervals` values each; energies are validated against the
/// wraparound bound at ingestion.
SimulationResult run_simulation(const SimConfig& config,
                                const std::vector<LoadProfile>& profiles,
                                uint32_t intervals);

}  // namespace dtbas
