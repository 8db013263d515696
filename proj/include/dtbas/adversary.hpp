#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "dtbas/core.hpp"
#include "dtbas/metrics.hpp"
#include "dtbas/sim.hpp"

namespace dtbas {

enum class AttackerKind { Active, Passive };

/// Active: controls one or at most two aggregators. Passive: the supplier,
/// observing every aggregator.
struct AttackerModel {
  AttackerKind kind = AttackerKind::Active;
  std::set<AggregatorId> compromised;

  void validate(const SimConfig& config) const;

  static AttackerModel active(std::set<AggregatorId> compromised);
  static AttackerModel passive(const SimConfig& config);
};

/// Immutable snapshot of exactly the compromised aggregators' contents.
struct AttackerView {
  std::set<AggregatorId> compromised;
  ShareScheme scheme = ShareScheme::AdditiveRandom;
  uint32_t m_total = 0;
  uint32_t n_meters = 0;
  uint64_t modulus = 0;
  uint32_t intervals = 0;
  std::map<std::tuple<AggregatorId, MeterId, Interval>, uint64_t> visible_cells;
  std::map<std::pair<AggregatorId, Interval>, uint64_t> visible_column_sums;
};

AttackerView observe(const AttackerModel& model, const SimulationResult& sim);

/// One-column comparison: what a single compromised aggregator accumulates
/// versus the plaintext row total it would need to deanonymize the target.
struct GainedVsNeeded {
  uint64_t gained = 0;  // compromised column sum over the range
  uint64_t needed = 0;  // target meter's plaintext row total over the range
  bool equal = false;
};

GainedVsNeeded gained_vs_needed(const AttackerView& view,
                                const SimulationResult& truth, MeterId target,
                                Interval first, Interval last);

struct ReadingEstimate {
  std::optional<uint64_t> point_estimate;  // nullopt = Unknown
  bool exact = false;
};

/// NaiveEqualSplit leaks: m times any visible share brackets the energy
/// within m units. AdditiveRandom with a proper subset gives Unknown; the
/// full passive view reconstructs exactly.
ReadingEstimate estimate_reading(const AttackerView& view, MeterId target,
                                 Interval interval, ShareScheme scheme);

/// Originator probabilities over the n meters, for the data item sent by
/// meter 0. AdditiveRandom gives the attacker no basis to skew: uniform 1/n.
/// NaiveEqualSplit concentrates mass on the meters whose share-derived
/// estimates collide with the target row.
ProbabilityProfile assign_user_probabilities(const AttackerView& view, uint32_t n);

}  // namespace dtbas
