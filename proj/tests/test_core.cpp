#include <doctest.h>

#include <sstream>

#include "dtbas/core.hpp"

using namespace dtbas;

TEST_CASE("node count is the m*n product") {
  SimConfig config;
  config.n_meters = 3;
  config.m_aggregators = 3;
  CHECK(node_count(config) == 9);

  config.n_meters = 100;
  CHECK(node_count(config) == 300);

  config.n_meters = 5;
  config.m_aggregators = 4;
  CHECK(node_count(config) == 20);
}

TEST_CASE("anonymity set equals the user count") {
  SimConfig config;
  config.n_meters = 3;
  CHECK(anonymity_set_size(config) == 3);

  config.n_meters = 450;
  CHECK(anonymity_set_size(config) == 450);

  config.n_meters = 2;
  CHECK_THROWS_AS(anonymity_set_size(config), DomainError);
}

TEST_CASE("system model rejects too-small configurations") {
  SimConfig config;
  config.n_meters = 2;
  CHECK_THROWS_AS(config.validate(), DomainError);

  config.n_meters = 3;
  config.m_aggregators = 2;
  CHECK_THROWS_AS(config.validate(), DomainError);

  SUBCASE("table-reproduction mode relaxes the bounds") {
    config.table_reproduction = true;
    CHECK_NOTHROW(config.validate());
    config.n_meters = 1;
    config.m_aggregators = 1;
    CHECK_NOTHROW(config.validate());
  }
}

TEST_CASE("node_count equals anonymity set times aggregator count") {
  for (uint32_t n = 3; n <= 12; ++n) {
    for (uint32_t m = 3; m <= 6; ++m) {
      SimConfig config;
      config.n_meters = n;
      config.m_aggregators = m;
      CHECK(node_count(config) ==
            static_cast<uint64_t>(anonymity_set_size(config)) * m);
    }
  }
}

TEST_CASE("config round-trips through the key-value format") {
  SimConfig config;
  config.n_meters = 7;
  config.m_aggregators = 4;
  config.scheme = ShareScheme::NaiveEqualSplit;
  config.seed = 42;
  config.intervals_per_period = 96;

  std::stringstream buffer;
  config.to_stream(buffer);
  const SimConfig parsed = SimConfig::from_stream(buffer);
  CHECK(parsed.n_meters == 7);
  CHECK(parsed.m_aggregators == 4);
  CHECK(parsed.scheme == ShareScheme::NaiveEqualSplit);
  CHECK(parsed.seed == 42);
  CHECK(parsed.intervals_per_period == 96);
  CHECK(parsed.modulus == config.modulus);
}

TEST_CASE("config parser flags bad lines") {
  std::stringstream bad("n_meters: 5\n");
  CHECK_THROWS_AS(SimConfig::from_stream(bad), ParseError);

  std::stringstream unknown("wattage = 5\n");
  CHECK_THROWS_AS(SimConfig::from_stream(unknown), ParseError);

  std::stringstream comments("# a comment\n\nn_meters = 5\n");
  CHECK(SimConfig::from_stream(comments).n_meters == 5);
}
