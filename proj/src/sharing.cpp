#include "dtbas/sharing.hpp"

#include <string>

namespace dtbas {

ShareVector split(const Reading& reading, const SimConfig& config, Rng& rng) {
  if (reading.energy >= config.modulus) {
    throw DomainError("reading energy " + std::to_string(reading.energy) +
                      " not below modulus");
  }
  const uint32_t m = config.m_aggregators;
  ShareVector out;
  out.meter = reading.meter;
  out.interval = reading.interval;
  out.scheme = config.scheme;
  out.shares.resize(m);

  switch (config.scheme) {
    case ShareScheme::NaiveEqualSplit: {
      const uint64_t each = reading.energy / m;
      const uint64_t remainder = reading.energy % m;
      for (uint32_t j = 0; j < m; ++j) out.shares[j] = each;
      out.shares[0] += remainder;
      break;
    }
    case ShareScheme::AdditiveRandom: {
      uint64_t sum_others = 0;
      for (uint32_t j = 1; j < m; ++j) {
        out.shares[j] = rng.below(config.modulus);
        sum_others = config.add_mod(sum_others, out.shares[j]);
      }
      out.shares[0] = config.sub_mod(reading.energy, sum_others);
      break;
    }
  }
  return out;
}

uint64_t reconstruct(const ShareVector& shares, const SimConfig& config) {
  if (shares.shares.size() != config.m_aggregators) {
    throw DomainError("expected " + std::to_string(config.m_aggregators) +
                      " shares, got " + std::to_string(shares.shares.size()));
  }
  uint64_t sum = 0;
  for (uint64_t s : shares.shares) sum = config.add_mod(sum, s);
  return sum;
}

SubsetHistogram partial_view_distribution(uint64_t secret, uint32_t subset_size,
                                          uint64_t trials, const SimConfig& config,
                                          Rng& rng, uint32_t bins_per_share) {
  if (subset_size >= config.m_aggregators) {
    throw DomainError("subset_size must be a proper subset of the m shares");
  }
  if (subset_size == 0) throw DomainError("subset_size must be positive");
  if (config.scheme != ShareScheme::AdditiveRandom) {
    throw DomainError("partial_view_distribution requires AdditiveRandom");
  }

  SubsetHistogram hist;
  hist.bins_per_share = bins_per_share;
  hist.subset_size = subset_size;
  hist.trials = trials;
  size_t cells = 1;
  for (uint32_t i = 0; i < subset_size; ++i) cells *= bins_per_share;
  hist.counts.assign(cells, 0);

  const uint64_t bin_width = config.modulus / bins_per_share + 1;
  Reading reading{0, 0, secret};
  for (uint64_t t = 0; t < trials; ++t) {
    const ShareVector sv = split(reading, config, rng);
    size_t cell = 0;
    for (uint32_t i = 0; i < subset_size; ++i) {
      cell = cell * bins_per_share + sv.shares[i] / bin_width;
    }
    ++hist.counts[cell];
  }
  return hist;
}

}  // namespace dtbas
