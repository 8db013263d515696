#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtbas/core.hpp"

namespace dtbas {

/// Per-aggregator table of received shares indexed by (meter, interval).
/// Ingestion is one-way: nothing on this surface addresses data to a meter.
class AggregatorLedger {
 public:
  explicit AggregatorLedger(AggregatorId id) : id_(id) {}

  AggregatorId id() const { return id_; }

  /// Stores one share and updates the column sum incrementally.
  /// Duplicate (meter, interval) signals replay or misrouting.
  void ingest_share(MeterId meter, Interval interval, uint64_t share,
                    const SimConfig& config);

  /// Column total over all n meters; requires the interval to be complete.
  uint64_t interval_column_sum(Interval interval, const SimConfig& config) const;

  /// This aggregator's share-sum for one meter across a period.
  /// Requires every interval of the period to be present for the meter.
  uint64_t period_share_sum(MeterId meter, std::span<const Interval> period,
                            const SimConfig& config) const;

  const std::map<std::pair<MeterId, Interval>, uint64_t>& cells() const {
    return cells_;
  }

  size_t cell_count() const { return cells_.size(); }

  nlohmann::json to_json() const;

 private:
  AggregatorId id_;
  std::map<std::pair<MeterId, Interval>, uint64_t> cells_;
  std::map<Interval, uint64_t> column_sums_;
  std::map<Interval, uint32_t> meters_seen_;
};

/// Supplier-side totals; the only party that ever addresses the meters is the
/// supplier, via period bills.
struct SupplierState {
  std::map<Interval, uint64_t> interval_totals;
  std::map<MeterId, uint64_t> period_bills;

  nlohmann::json to_json() const;
};

/// Folds exactly m column sums (one per aggregator) into the supplier total.
void supplier_collect(SupplierState& supplier,
                      const std::vector<uint64_t>& column_sums,
                      Interval interval, const SimConfig& config);

/// Period-granular billing: each aggregator reveals one per-meter share sum
/// over the whole period; the supplier reconstructs only period totals.
std::map<MeterId, uint64_t> compute_bill(
    std::span<const Interval> period,
    const std::vector<std::map<MeterId, uint64_t>>& per_aggregator_meter_sums,
    const SimConfig& config);

}  // namespace dtbas
