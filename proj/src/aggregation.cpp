#include "dtbas/aggregation.hpp"

#include <string>

namespace dtbas {

void AggregatorLedger::ingest_share(MeterId meter, Interval interval,
                                    uint64_t share, const SimConfig& config) {
  const auto key = std::make_pair(meter, interval);
  if (cells_.count(key)) {
    throw ProtocolError("duplicate share for meter " + std::to_string(meter) +
                        " interval " + std::to_string(interval) +
                        " at aggregator " + std::to_string(id_));
  }
  cells_[key] = share;
  column_sums_[interval] = config.add_mod(column_sums_[interval], share);
  ++meters_seen_[interval];
}

uint64_t AggregatorLedger::interval_column_sum(Interval interval,
                                               const SimConfig& config) const {
  const auto seen = meters_seen_.find(interval);
  const uint32_t have = seen == meters_seen_.end() ? 0 : seen->second;
  if (have < config.n_meters) {
    std::string missing;
    for (MeterId meter = 0; meter < config.n_meters; ++meter) {
      if (!cells_.count({meter, interval})) {
        if (!missing.empty()) missing += ",";
        missing += std::to_string(meter);
      }
    }
    throw AvailabilityError("interval " + std::to_string(interval) +
                            " incomplete at aggregator " + std::to_string(id_) +
                            "; missing meters: " + missing);
  }
  return column_sums_.at(interval);
}

uint64_t AggregatorLedger::period_share_sum(MeterId meter,
                                            std::span<const Interval> period,
                                            const SimConfig& config) const {
  uint64_t sum = 0;
  for (Interval t : period) {
    const auto it = cells_.find({meter, t});
    if (it == cells_.end()) {
      throw AvailabilityError("meter " + std::to_string(meter) +
                              " missing interval " + std::to_string(t) +
                              " at aggregator " + std::to_string(id_));
    }
    sum = config.add_mod(sum, it->second);
  }
  return sum;
}

nlohmann::json AggregatorLedger::to_json() const {
  nlohmann::json column_sums = nlohmann::json::object();
  for (const auto& [interval, sum] : column_sums_) {
    column_sums[std::to_string(interval)] = sum;
  }
  return {{"aggregator", id_}, {"column_sums", column_sums}};
}

nlohmann::json SupplierState::to_json() const {
  nlohmann::json totals = nlohmann::json::object();
  for (const auto& [interval, total] : interval_totals) {
    totals[std::to_string(interval)] = total;
  }
  nlohmann::json bills = nlohmann::json::object();
  for (const auto& [meter, bill] : period_bills) {
    bills[std::to_string(meter)] = bill;
  }
  return {{"interval_totals", totals}, {"period_bills", bills}};
}

void supplier_collect(SupplierState& supplier,
                      const std::vector<uint64_t>& column_sums,
                      Interval interval, const SimConfig& config) {
  if (column_sums.size() != config.m_aggregators) {
    throw AvailabilityError("expected " + std::to_string(config.m_aggregators) +
                            " column sums for interval " +
                            std::to_string(interval) + ", got " +
                            std::to_string(column_sums.size()));
  }
  uint64_t total = 0;
  for (uint64_t s : column_sums) total = config.add_mod(total, s);
  supplier.interval_totals[interval] = total;
}

std::map<MeterId, uint64_t> compute_bill(
    std::span<const Interval> period,
    const std::vector<std::map<MeterId, uint64_t>>& per_aggregator_meter_sums,
    const SimConfig& config) {
  if (period.empty()) throw AvailabilityError("empty billing period");
  if (per_aggregator_meter_sums.size() != config.m_aggregators) {
    throw AvailabilityError(
        "billing needs per-meter sums from all " +
        std::to_string(config.m_aggregators) + " aggregators, got " +
        std::to_string(per_aggregator_meter_sums.size()));
  }
  std::map<MeterId, uint64_t> bills;
  for (MeterId meter = 0; meter < config.n_meters; ++meter) {
    uint64_t bill = 0;
    for (const auto& sums : per_aggregator_meter_sums) {
      const auto it = sums.find(meter);
      if (it == sums.end()) {
        throw AvailabilityError("aggregator omitted period sum for meter " +
                                std::to_string(meter));
      }
      bill = config.add_mod(bill, it->second);
    }
    bills[meter] = bill;
  }
  return bills;
}

}  // namespace dtbas
