#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtbas/errors.hpp"

namespace dtbas {

enum class ProfileSubject {
  OverSplits,  // probabilities over the m splits/aggregators
  OverUsers,   // probabilities over the n meters
};

/// An attacker's probability assignment; must sum to 1 within 1e-9.
struct ProbabilityProfile {
  std::vector<double> probabilities;
  ProfileSubject subject = ProfileSubject::OverSplits;

  void validate() const;
  bool is_uniform(double eps = 1e-9) const;
  static ProbabilityProfile uniform(uint32_t s, ProfileSubject subject);
};

/// Shannon entropy in bits; 0*log(0) contributes 0.
double entropy(const ProbabilityProfile& profile);

/// log2(s), the entropy of a uniform assignment over s subjects.
double max_entropy(uint64_t s);

/// Normalized entropy in [0,1]; nullopt when max entropy is zero (s = 1).
/// Exactly-uniform profiles map to exactly 1.0.
std::optional<double> degree_of_anonymity(const ProbabilityProfile& profile);

struct AnonymityReport {
  double entropy_bits = 0.0;
  double max_entropy_bits = 0.0;
  std::optional<double> degree;

  nlohmann::json to_json() const;
  static AnonymityReport from_json(const nlohmann::json& j);
};

AnonymityReport analyze(const ProbabilityProfile& profile);

/// Worst-case skewed assignment [0.50, 1-0.50-0.01*(s-2), 0.01 repeated].
ProbabilityProfile decremental_profile(uint32_t s);

/// 1/n, the chance of one user being the originator under a uniform view.
double uniform_user_probability(uint32_t n, bool table_reproduction = false);

/// The three published comparison tables, aligned plain text.
/// Entropy cells carry the printed negative sign; values round half-up to
/// two decimals.
std::string render_comparison_tables();

nlohmann::json comparison_tables_json();

/// Compares computed cells against the embedded golden values.
/// Returns true on a cell-for-cell match; otherwise fills first_mismatch.
bool check_comparison_tables(std::string* first_mismatch);

/// Half-up decimal rounding used by the table emitters.
double round_half_up(double value, int decimals);

}  // namespace dtbas
