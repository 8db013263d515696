#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "dtbas/errors.hpp"

namespace dtbas {

/// Meter indices are dense 0..n-1 within a simulation.
using MeterId = uint32_t;

/// Aggregator indices are dense 0..m-1.
using AggregatorId = uint32_t;

/// Interval ordinal; every interval is 15 minutes long.
using Interval = uint32_t;

constexpr uint32_t kIntervalMinutes = 15;

/// 30 days of 15-minute slots.
constexpr uint32_t kIntervalsPerBillingPeriod = 2880;

/// One day of 15-minute slots.
constexpr uint32_t kIntervalsPerDay = 96;

enum class ShareScheme {
  NaiveEqualSplit,   // deterministic equal thirds, remainder on share 0
  AdditiveRandom,    // uniform shares over the prime ring
};

std::string to_string(ShareScheme scheme);
ShareScheme share_scheme_from_string(const std::string& name);

/// One meter's consumption for one interval, integer watt-hours.
struct Reading {
  MeterId meter = 0;
  Interval interval = 0;
  uint64_t energy = 0;
};

/// A time series of per-interval energy values for one meter.
struct LoadProfile {
  std::vector<uint64_t> series;

  size_t length() const { return series.size(); }
  uint64_t total() const;
};

struct SimConfig {
  uint32_t n_meters = 3;
  uint32_t m_aggregators = 3;
  ShareScheme scheme = ShareScheme::AdditiveRandom;
  uint64_t modulus = (uint64_t{1} << 61) - 1;  // 2^61 - 1, prime
  uint64_t seed = 0;
  uint32_t intervals_per_period = kIntervalsPerBillingPeriod;
  /// Relaxes the m > 2 / n > 2 constraints solely for reproducing the
  /// paper-style comparison rows at small m and n.
  bool table_reproduction = false;

  /// Throws DomainError if the configuration violates the system model.
  void validate() const;

  /// Per-reading energy cap that prevents aggregate wraparound.
  uint64_t max_energy() const { return modulus / n_meters; }

  uint64_t add_mod(uint64_t a, uint64_t b) const { return (a + b) % modulus; }
  uint64_t sub_mod(uint64_t a, uint64_t b) const {
    return (a + modulus - b % modulus) % modulus;
  }

  static SimConfig from_stream(std::istream& in);
  static SimConfig from_file(const std::filesystem::path& path);
  void to_stream(std::ostream& out) const;
  void to_file(const std::filesystem::path& path) const;
};

/// Total node count m*n.
uint64_t node_count(const SimConfig& config);

/// The anonymity set is the set of meters, so its size is n.
uint32_t anonymity_set_size(const SimConfig& config);

}  // namespace dtbas
