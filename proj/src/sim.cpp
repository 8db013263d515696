#include "dtbas/sim.hpp"

#include <string>

#include "dtbas/rng.hpp"
#include "dtbas/sharing.hpp"

namespace dtbas {

uint64_t SimulationResult::plaintext_interval_sum(Interval interval) const {
  uint64_t sum = 0;
  for (const auto& row : readings) sum = config.add_mod(sum, row.at(interval));
  return sum;
}

uint64_t SimulationResult::plaintext_row_sum(MeterId meter) const {
  uint64_t sum = 0;
  for (uint64_t v : readings.at(meter)) sum = config.add_mod(sum, v);
  return sum;
}

bool SimulationResult::conservation_holds() const {
  for (Interval t = 0; t < intervals; ++t) {
    uint64_t column_total = 0;
    for (const auto& ledger : ledgers) {
      column_total = config.add_mod(column_total, ledger.interval_column_sum(t, config));
    }
    if (column_total != plaintext_interval_sum(t)) return false;
  }
  return true;
}

nlohmann::json SimulationResult::to_json() const {
  nlohmann::json aggregators = nlohmann::json::array();
  for (const auto& ledger : ledgers) aggregators.push_back(ledger.to_json());
  return {
      {"n_meters", config.n_meters},
      {"m_aggregators", config.m_aggregators},
      {"scheme", to_string(config.scheme)},
      {"seed", config.seed},
      {"intervals", intervals},
      {"aggregators", aggregators},
      {"supplier", supplier.to_json()},
      {"conservation_ok", conservation_holds()},
  };
}

SimulationResult run_simulation(const SimConfig& config,
                                const std::vector<LoadProfile>& profiles,
                                uint32_t intervals) {
  config.validate();
  if (profiles.size() != config.n_meters) {
    throw DomainError("need one profile per meter: expected " +
                      std::to_string(config.n_meters) + ", got " +
                      std::to_string(profiles.size()));
  }
  for (const auto& profile : profiles) {
    if (profile.length() < intervals) {
      throw DomainError("profile shorter than simulated period");
    }
  }

  SimulationResult result;
  result.config = config;
  result.intervals = intervals;
  result.readings.resize(config.n_meters);
  for (AggregatorId j = 0; j < config.m_aggregators; ++j) {
    result.ledgers.emplace_back(j);
  }

  const uint64_t bound = config.max_energy();
  for (MeterId meter = 0; meter < config.n_meters; ++meter) {
    result.readings[meter].resize(intervals);
    for (Interval t = 0; t < intervals; ++t) {
      const uint64_t energy = profiles[meter].series[t];
      if (energy >= bound) {
        throw DomainError("reading " + std::to_string(energy) + " for meter " +
                          std::to_string(meter) +
                          " exceeds wraparound bound modulus/n = " +
                          std::to_string(bound));
      }
      result.readings[meter][t] = energy;
      Rng rng = derive_rng(config.seed, meter, t);
      const ShareVector sv = split(Reading{meter, t, energy}, config, rng);
      for (AggregatorId j = 0; j < config.m_aggregators; ++j) {
        result.ledgers[j].ingest_share(meter, t, sv.shares[j], config);
      }
    }
  }

  std::vector<Interval> period(intervals);
  for (Interval t = 0; t < intervals; ++t) {
    period[t] = t;
    std::vector<uint64_t> column_sums;
    column_sums.reserve(config.m_aggregators);
    for (const auto& ledger : result.ledgers) {
      column_sums.push_back(ledger.interval_column_sum(t, config));
    }
    supplier_collect(result.supplier, column_sums, t, config);
  }

  std::vector<std::map<MeterId, uint64_t>> per_aggregator_sums;
  for (const auto& ledger : result.ledgers) {
    std::map<MeterId, uint64_t> sums;
    for (MeterId meter = 0; meter < config.n_meters; ++meter) {
      sums[meter] = ledger.period_share_sum(meter, period, config);
    }
    per_aggregator_sums.push_back(std::move(sums));
  }
  result.supplier.period_bills = compute_bill(period, per_aggregator_sums, config);

  return result;
}

}  // namespace dtbas
