#pragma once

#include <cstdint>
#include <vector>

#include "dtbas/core.hpp"
#include "dtbas/rng.hpp"

namespace dtbas {

/// The m additive fragments of one reading, one per aggregator.
struct ShareVector {
  MeterId meter = 0;
  Interval interval = 0;
  std::vector<uint64_t> shares;  // ring elements mod config.modulus
  ShareScheme scheme = ShareScheme::AdditiveRandom;
};

/// Split one reading into m shares.
///
/// NaiveEqualSplit: each share is floor(energy/m), remainder on share 0.
/// AdditiveRandom: shares 1..m-1 uniform in [0, modulus), share 0 makes the
/// sum come out to the secret mod modulus.
ShareVector split(const Reading& reading, const SimConfig& config, Rng& rng);

/// Sum of shares mod modulus; exact inverse of split for both schemes.
uint64_t reconstruct(const ShareVector& shares, const SimConfig& config);

/// Empirical distribution of a proper share subset over repeated fresh splits
/// of the same secret. Shares are binned so the histogram stays tractable;
/// with modulus 2^61-1 the per-bin bias from the final mod is ~2^-55.
struct SubsetHistogram {
  uint32_t bins_per_share = 0;
  uint32_t subset_size = 0;
  uint64_t trials = 0;
  std::vector<uint64_t> counts;  // bins_per_share^subset_size cells
};

SubsetHistogram partial_view_distribution(uint64_t secret, uint32_t subset_size,
                                          uint64_t trials, const SimConfig& config,
                                          Rng& rng, uint32_t bins_per_share = 64);

}  // namespace dtbas
