#include "dtbas/game.hpp"

#include <cmath>
#include <cstdlib>

#include "dtbas/rng.hpp"
#include "dtbas/sim.hpp"

namespace dtbas {

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::RandomGuess:
      return "random-guess";
    case Strategy::ColumnSumMatcher:
      return "column-sum-matcher";
    case Strategy::TotalSumMatcher:
      return "total-sum-matcher";
  }
  throw DomainError("unknown strategy");
}

std::string to_string(Observable observable) {
  switch (observable) {
    case Observable::SingleAggregator:
      return "single-aggregator";
    case Observable::AllAggregators:
      return "all-aggregators";
    case Observable::SupplierTotals:
      return "supplier-totals";
  }
  throw DomainError("unknown observable");
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "random-guess") return Strategy::RandomGuess;
  if (name == "column-sum-matcher") return Strategy::ColumnSumMatcher;
  if (name == "total-sum-matcher") return Strategy::TotalSumMatcher;
  throw ParseError("unknown strategy: '" + name + "'");
}

Observable observable_from_string(const std::string& name) {
  if (name == "single-aggregator") return Observable::SingleAggregator;
  if (name == "all-aggregators") return Observable::AllAggregators;
  if (name == "supplier-totals") return Observable::SupplierTotals;
  throw ParseError("unknown observable: '" + name + "'");
}

void Distinguisher::validate() const {
  if (strategy == Strategy::ColumnSumMatcher &&
      observable != Observable::SingleAggregator) {
    throw DomainError("column-sum-matcher reads a single aggregator");
  }
  if (strategy == Strategy::TotalSumMatcher &&
      observable != Observable::SupplierTotals) {
    throw DomainError("total-sum-matcher reads supplier totals");
  }
}

nlohmann::json GameTranscript::to_json() const {
  nlohmann::json j = {
      {"trials", trials},
      {"wins", wins},
      {"success_rate", success_rate},
      {"advantage", advantage},
      {"seed", seed},
      {"challenge_ones", challenge_ones},
      {"strategy", strategy},
      {"observable", observable},
      {"scheme", scheme},
      {"background_noise_std", background_noise_std},
  };
  if (!per_trial.empty()) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& [challenge, guess] : per_trial) {
      records.push_back({{"challenge", challenge}, {"guess", guess}});
    }
    j["per_trial"] = records;
  }
  return j;
}

std::pair<LoadProfile, LoadProfile> default_challenge_profiles(
    uint32_t round_intervals, uint64_t seed) {
  ProfileGenSpec flat{Archetype::Flat, 200, 200, 0.0, round_intervals};
  ProfileGenSpec peaky{Archetype::Peaky, 100, 2000, 0.0, round_intervals};
  Rng rng(seed);
  return {generate_profile(flat, rng), generate_profile(peaky, rng)};
}

namespace {

uint64_t abs_diff(uint64_t a, uint64_t b) { return a > b ? a - b : b - a; }

uint64_t ring_distance(uint64_t a, uint64_t b, uint64_t modulus) {
  const uint64_t d = a > b ? a - b : b - a;
  return std::min(d, modulus - d);
}

// Share a meter sends to aggregator `agg` under NaiveEqualSplit.
uint64_t naive_share(uint64_t energy, uint32_t m, AggregatorId agg) {
  return energy / m + (agg == 0 ? energy % m : 0);
}

// Sum of per-interval absolute distances between a visible row and the
// thirds the profile would produce at this aggregator; zero means the row
// is exactly the installed profile's share stream.
uint64_t naive_row_score(const GameObservable::AggregatorSlice& slice,
                         const std::vector<uint64_t>& row,
                         const LoadProfile& lf, uint32_t m) {
  uint64_t score = 0;
  for (size_t t = 0; t < row.size(); ++t) {
    score += abs_diff(row[t], naive_share(lf.series[t], m, slice.id));
  }
  return score;
}

uint64_t naive_best_score(const GameObservable& observable,
                          const LoadProfile& lf) {
  const auto& slice = observable.slices.front();
  uint64_t best = UINT64_MAX;
  for (const auto& row : slice.rows) {
    best = std::min(best, naive_row_score(slice, row, lf, observable.m_total));
  }
  return best;
}

}  // namespace

int column_sum_matcher_guess(const GameObservable& observable,
                             const LoadProfile& lf1, const LoadProfile& lf2,
                             ShareScheme scheme) {
  if (observable.slices.size() != 1) {
    throw DomainError("column-sum-matcher needs exactly one aggregator slice");
  }
  switch (scheme) {
    case ShareScheme::NaiveEqualSplit: {
      const uint64_t s1 = naive_best_score(observable, lf1);
      const uint64_t s2 = naive_best_score(observable, lf2);
      return s2 < s1 ? 2 : 1;
    }
    case ShareScheme::AdditiveRandom: {
      const auto& slice = observable.slices.front();
      uint64_t total = 0;
      for (uint64_t s : slice.column_sums) total = (total + s) % observable.modulus;
      const uint64_t d1 =
          ring_distance(total, lf1.total() % observable.modulus, observable.modulus);
      const uint64_t d2 =
          ring_distance(total, lf2.total() % observable.modulus, observable.modulus);
      return d2 < d1 ? 2 : 1;
    }
  }
  throw DomainError("unknown share scheme");
}

int total_sum_matcher_guess(const GameObservable& observable,
                            const LoadProfile& lf1, const LoadProfile& lf2,
                            const std::vector<double>& background_sum_prior) {
  if (observable.supplier_totals.empty()) {
    throw DomainError("total-sum-matcher needs supplier totals");
  }
  double score1 = 0.0, score2 = 0.0;
  for (size_t t = 0; t < observable.supplier_totals.size(); ++t) {
    const double total = static_cast<double>(observable.supplier_totals[t]);
    const double prior = background_sum_prior[t];
    const double r1 = total - static_cast<double>(lf1.series[t]) - prior;
    const double r2 = total - static_cast<double>(lf2.series[t]) - prior;
    score1 += r1 * r1;
    score2 += r2 * r2;
  }
  return score2 < score1 ? 2 : 1;
}

GameTranscript run_game(const Distinguisher& distinguisher,
                        const GameConfig& game, const SimConfig& config) {
  distinguisher.validate();
  config.validate();
  if (game.n_meters <= 2) throw DomainError("game needs n > 2 meters");
  if (game.trials < 1) throw DomainError("game needs at least one trial");
  if (game.lf1.length() < game.round_intervals ||
      game.lf2.length() < game.round_intervals) {
    throw DomainError("challenge profiles shorter than the round");
  }
  if (game.pool.empty() && !game.backgrounds_all_zero) {
    game.background.validate();  // generator is the background source
  }

  SimConfig trial_config = config;
  trial_config.n_meters = game.n_meters;

  std::vector<double> background_sum_prior(game.round_intervals, 0.0);
  if (!game.backgrounds_all_zero) {
    for (uint32_t t = 0; t < game.round_intervals; ++t) {
      background_sum_prior[t] =
          (game.n_meters - 1) * game.background.mean_at(t);
    }
  }

  GameTranscript transcript;
  transcript.trials = game.trials;
  transcript.seed = game.seed;
  transcript.strategy = to_string(distinguisher.strategy);
  transcript.observable = to_string(distinguisher.observable);
  transcript.scheme = to_string(config.scheme);
  transcript.background_noise_std =
      game.backgrounds_all_zero ? 0.0 : game.background.noise_std;

  for (uint64_t trial = 0; trial < game.trials; ++trial) {
    Rng rng = derive_rng(game.seed, trial);
    const int challenge = rng.bit() + 1;  // picks lf1 or lf2
    if (challenge == 2) ++transcript.challenge_ones;
    const uint32_t challenge_pos =
        static_cast<uint32_t>(rng.below(game.n_meters));

    std::vector<LoadProfile> profiles(game.n_meters);
    for (uint32_t meter = 0; meter < game.n_meters; ++meter) {
      if (meter == challenge_pos) {
        profiles[meter] = challenge == 1 ? game.lf1 : game.lf2;
      } else if (game.backgrounds_all_zero) {
        profiles[meter].series.assign(game.round_intervals, 0);
      } else if (!game.pool.empty()) {
        profiles[meter] = game.pool[rng.below(game.pool.size())];
      } else {
        ProfileGenSpec spec = game.background;
        spec.length = game.round_intervals;
        profiles[meter] = generate_profile(spec, rng);
      }
    }

    trial_config.seed = splitmix64(game.seed ^ (trial + 1));
    const SimulationResult sim =
        run_simulation(trial_config, profiles, game.round_intervals);

    GameObservable observable;
    observable.scheme = trial_config.scheme;
    observable.m_total = trial_config.m_aggregators;
    observable.modulus = trial_config.modulus;
    const auto add_slice = [&](AggregatorId j) {
      GameObservable::AggregatorSlice slice;
      slice.id = j;
      slice.rows.resize(game.n_meters);
      for (MeterId meter = 0; meter < game.n_meters; ++meter) {
        slice.rows[meter].reserve(game.round_intervals);
        for (Interval t = 0; t < game.round_intervals; ++t) {
          slice.rows[meter].push_back(
              sim.ledgers[j].cells().at({meter, t}));
        }
      }
      for (Interval t = 0; t < game.round_intervals; ++t) {
        slice.column_sums.push_back(
            sim.ledgers[j].interval_column_sum(t, trial_config));
      }
      observable.slices.push_back(std::move(slice));
    };
    switch (distinguisher.observable) {
      case Observable::SingleAggregator:
        add_slice(0);
        break;
      case Observable::AllAggregators:
        for (AggregatorId j = 0; j < trial_config.m_aggregators; ++j) add_slice(j);
        break;
      case Observable::SupplierTotals:
        for (Interval t = 0; t < game.round_intervals; ++t) {
          observable.supplier_totals.push_back(sim.supplier.interval_totals.at(t));
        }
        break;
    }

    int guess = 1;
    switch (distinguisher.strategy) {
      case Strategy::RandomGuess:
        guess = rng.bit() + 1;
        break;
      case Strategy::ColumnSumMatcher:
        guess = column_sum_matcher_guess(observable, game.lf1, game.lf2,
                                         trial_config.scheme);
        break;
      case Strategy::TotalSumMatcher:
        guess = total_sum_matcher_guess(observable, game.lf1, game.lf2,
                                        background_sum_prior);
        break;
    }

    if (guess == challenge) ++transcript.wins;
    if (game.record_per_trial) transcript.per_trial.emplace_back(challenge, guess);
  }

  transcript.success_rate =
      static_cast<double>(transcript.wins) / static_cast<double>(transcript.trials);
  transcript.advantage = std::abs(transcript.success_rate - 0.5);
  return transcript;
}

}  // namespace dtbas
