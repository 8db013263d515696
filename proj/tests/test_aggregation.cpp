#include <doctest.h>

#include "dtbas/aggregation.hpp"
#include "dtbas/sharing.hpp"
#include "dtbas/sim.hpp"

using namespace dtbas;

TEST_CASE("single ingest updates the column sum") {
  SimConfig config;
  AggregatorLedger ledger(0);
  ledger.ingest_share(0, 0, 7, config);
  CHECK(ledger.cells().at({0, 0}) == 7);
}

TEST_CASE("duplicate ingest is a protocol error") {
  SimConfig config;
  AggregatorLedger ledger(0);
  ledger.ingest_share(0, 0, 7, config);
  CHECK_THROWS_AS(ledger.ingest_share(0, 0, 7, config), ProtocolError);
}

TEST_CASE("column sum equals the recomputed cell sum") {
  SimConfig config;
  AggregatorLedger ledger(1);
  uint64_t expected = 0;
  Rng rng(17);
  for (MeterId meter = 0; meter < config.n_meters; ++meter) {
    const uint64_t share = rng.below(config.modulus);
    ledger.ingest_share(meter, 0, share, config);
    expected = config.add_mod(expected, share);
  }
  CHECK(ledger.interval_column_sum(0, config) == expected);
}

TEST_CASE("incomplete interval blocks the column sum and names the gap") {
  SimConfig config;
  AggregatorLedger ledger(0);
  ledger.ingest_share(0, 0, 5, config);
  try {
    ledger.interval_column_sum(0, config);
    FAIL("expected AvailabilityError");
  } catch (const AvailabilityError& e) {
    CHECK(std::string(e.what()).find("1,2") != std::string::npos);
  }
}

TEST_CASE("column sums across aggregators conserve the plaintext total") {
  SimConfig config;
  config.scheme = ShareScheme::AdditiveRandom;
  std::vector<LoadProfile> profiles = {
      LoadProfile{{10}}, LoadProfile{{20}}, LoadProfile{{30}}};
  const SimulationResult sim = run_simulation(config, profiles, 1);
  uint64_t total = 0;
  for (const auto& ledger : sim.ledgers) {
    total = config.add_mod(total, ledger.interval_column_sum(0, config));
  }
  CHECK(total == 60);
  CHECK(sim.supplier.interval_totals.at(0) == 60);
}

TEST_CASE("equal readings under naive split give equal column sums") {
  SimConfig config;
  config.scheme = ShareScheme::NaiveEqualSplit;
  std::vector<LoadProfile> profiles = {
      LoadProfile{{9}}, LoadProfile{{9}}, LoadProfile{{9}}};
  const SimulationResult sim = run_simulation(config, profiles, 1);
  for (const auto& ledger : sim.ledgers) {
    CHECK(ledger.interval_column_sum(0, config) == 9);
  }
}

TEST_CASE("supplier_collect sums exactly m column sums") {
  SimConfig config;
  SupplierState supplier;
  supplier_collect(supplier, {12, 44, 4}, 0, config);
  CHECK(supplier.interval_totals.at(0) == 60);

  CHECK_THROWS_AS(supplier_collect(supplier, {12, 44}, 1, config),
                  AvailabilityError);
}

TEST_CASE("bills reconstruct period totals without per-interval reveals") {
  SimConfig config;
  config.scheme = ShareScheme::AdditiveRandom;
  std::vector<LoadProfile> profiles = {
      LoadProfile{{1, 2, 3}}, LoadProfile{{0, 0, 0}}, LoadProfile{{1, 2, 3}}};
  const SimulationResult sim = run_simulation(config, profiles, 3);
  CHECK(sim.supplier.period_bills.at(0) == 6);
  CHECK(sim.supplier.period_bills.at(1) == 0);
  CHECK(sim.supplier.period_bills.at(2) == 6);
}

TEST_CASE("billing needs every aggregator's period sum") {
  SimConfig config;
  std::vector<Interval> period = {0};
  std::vector<std::map<MeterId, uint64_t>> sums(2);  // one aggregator short
  CHECK_THROWS_AS(compute_bill(period, sums, config), AvailabilityError);
}

TEST_CASE("conservation holds over randomized simulations, both schemes") {
  Rng meta_rng(31);
  for (int run = 0; run < 50; ++run) {
    for (ShareScheme scheme :
         {ShareScheme::NaiveEqualSplit, ShareScheme::AdditiveRandom}) {
      SimConfig config;
      config.scheme = scheme;
      config.n_meters = 3 + static_cast<uint32_t>(meta_rng.below(6));
      config.seed = meta_rng.next_u64();
      std::vector<LoadProfile> profiles(config.n_meters);
      for (auto& profile : profiles) {
        for (int t = 0; t < 4; ++t) profile.series.push_back(meta_rng.below(5000));
      }
      const SimulationResult sim = run_simulation(config, profiles, 4);
      REQUIRE(sim.conservation_holds());
      // Bills equal plaintext period sums.
      for (MeterId meter = 0; meter < config.n_meters; ++meter) {
        REQUIRE(sim.supplier.period_bills.at(meter) ==
                sim.plaintext_row_sum(meter));
      }
    }
  }
}

TEST_CASE("simulation rejects readings above the wraparound bound") {
  SimConfig config;
  std::vector<LoadProfile> profiles(3);
  for (auto& profile : profiles) profile.series = {config.max_energy()};
  CHECK_THROWS_AS(run_simulation(config, profiles, 1), DomainError);
}
