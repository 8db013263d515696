#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtbas/core.hpp"
#include "dtbas/loadgen.hpp"

namespace dtbas {

enum class Strategy { RandomGuess, ColumnSumMatcher, TotalSumMatcher };
enum class Observable { SingleAggregator, AllAggregators, SupplierTotals };

std::string to_string(Strategy strategy);
std::string to_string(Observable observable);
Strategy strategy_from_string(const std::string& name);
Observable observable_from_string(const std::string& name);

/// The adversary's decision procedure plus what it gets to see.
/// SingleAggregator corresponds to an active attacker with one compromise,
/// AllAggregators to the passive attacker, SupplierTotals to the supplier's
/// aggregate output.
struct Distinguisher {
  Strategy strategy = Strategy::ColumnSumMatcher;
  Observable observable = Observable::SingleAggregator;

  void validate() const;
};

/// What the challenger exposes to the adversary for one trial.
struct GameObservable {
  struct AggregatorSlice {
    AggregatorId id = 0;
    std::vector<std::vector<uint64_t>> rows;  // [meter][interval] shares
    std::vector<uint64_t> column_sums;        // [interval]
  };
  ShareScheme scheme = ShareScheme::AdditiveRandom;
  uint32_t m_total = 0;
  uint64_t modulus = 0;
  std::vector<AggregatorSlice> slices;
  std::vector<uint64_t> supplier_totals;
};

struct GameConfig {
  uint32_t n_meters = 10;
  uint64_t trials = 5000;
  uint32_t round_intervals = kIntervalsPerDay;
  uint64_t seed = 0;
  LoadProfile lf1;
  LoadProfile lf2;
  /// Background pool; when empty, backgrounds come from `background`.
  std::vector<LoadProfile> pool;
  ProfileGenSpec background;
  /// Degenerate test mode: all n-1 backgrounds are zero.
  bool backgrounds_all_zero = false;
  bool record_per_trial = false;
};

struct GameTranscript {
  uint64_t trials = 0;
  uint64_t wins = 0;
  double success_rate = 0.0;
  double advantage = 0.0;  // |success_rate - 0.5|
  uint64_t seed = 0;
  uint64_t challenge_ones = 0;  // how often the secret bit picked lf2
  std::string strategy;
  std::string observable;
  std::string scheme;
  double background_noise_std = 0.0;
  std::vector<std::pair<int, int>> per_trial;  // (challenge, guess), both 1|2

  nlohmann::json to_json() const;
};

/// Flat-vs-peaky synthetic archetypes; adversary-favorable defaults.
std::pair<LoadProfile, LoadProfile> default_challenge_profiles(
    uint32_t round_intervals, uint64_t seed);

/// Per trial the challenger draws a secret bit, installs the chosen profile
/// at a random meter among fresh hidden backgrounds, runs the full pipeline,
/// and shows the adversary only its observable.
GameTranscript run_game(const Distinguisher& distinguisher,
                        const GameConfig& game, const SimConfig& config);

/// Guess from a single aggregator's contents: under NaiveEqualSplit the
/// visible rows are exact thirds of the installed profile; under
/// AdditiveRandom falls back to a nearest-total heuristic on column sums.
int column_sum_matcher_guess(const GameObservable& observable,
                             const LoadProfile& lf1, const LoadProfile& lf2,
                             ShareScheme scheme);

/// Guess from supplier totals against a background-sum prior.
int total_sum_matcher_guess(const GameObservable& observable,
                            const LoadProfile& lf1, const LoadProfile& lf2,
                            const std::vector<double>& background_sum_prior);

}  // namespace dtbas
