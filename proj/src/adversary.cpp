#include "dtbas/adversary.hpp"

#include <string>
#include <vector>

namespace dtbas {

void AttackerModel::validate(const SimConfig& config) const {
  switch (kind) {
    case AttackerKind::Active:
      if (compromised.empty() || compromised.size() > 2) {
        throw DomainError("active attacker controls one or at most two "
                          "aggregators, got " +
                          std::to_string(compromised.size()));
      }
      break;
    case AttackerKind::Passive:
      if (compromised.size() != config.m_aggregators) {
        throw DomainError("passive attacker controls all aggregators");
      }
      break;
  }
  for (AggregatorId id : compromised) {
    if (id >= config.m_aggregators) {
      throw DomainError("compromised aggregator " + std::to_string(id) +
                        " out of range");
    }
  }
}

AttackerModel AttackerModel::active(std::set<AggregatorId> compromised) {
  return AttackerModel{AttackerKind::Active, std::move(compromised)};
}

AttackerModel AttackerModel::passive(const SimConfig& config) {
  AttackerModel model;
  model.kind = AttackerKind::Passive;
  for (AggregatorId j = 0; j < config.m_aggregators; ++j) {
    model.compromised.insert(j);
  }
  return model;
}

AttackerView observe(const AttackerModel& model, const SimulationResult& sim) {
  model.validate(sim.config);
  AttackerView view;
  view.compromised = model.compromised;
  view.scheme = sim.config.scheme;
  view.m_total = sim.config.m_aggregators;
  view.n_meters = sim.config.n_meters;
  view.modulus = sim.config.modulus;
  view.intervals = sim.intervals;
  for (AggregatorId j : model.compromised) {
    const auto& ledger = sim.ledgers.at(j);
    for (const auto& [key, share] : ledger.cells()) {
      view.visible_cells[{j, key.first, key.second}] = share;
    }
    for (Interval t = 0; t < sim.intervals; ++t) {
      view.visible_column_sums[{j, t}] = ledger.interval_column_sum(t, sim.config);
    }
  }
  return view;
}

GainedVsNeeded gained_vs_needed(const AttackerView& view,
                                const SimulationResult& truth, MeterId target,
                                Interval first, Interval last) {
  if (view.compromised.size() != 1) {
    throw DomainError("gained-vs-needed is defined for a single compromised "
                      "aggregator");
  }
  const AggregatorId j = *view.compromised.begin();
  GainedVsNeeded cmp;
  for (Interval t = first; t <= last; ++t) {
    cmp.gained = truth.config.add_mod(cmp.gained, view.visible_column_sums.at({j, t}));
    cmp.needed = truth.config.add_mod(cmp.needed, truth.readings.at(target).at(t));
  }
  cmp.equal = cmp.gained == cmp.needed;
  return cmp;
}

ReadingEstimate estimate_reading(const AttackerView& view, MeterId target,
                                 Interval interval, ShareScheme scheme) {
  std::vector<std::pair<AggregatorId, uint64_t>> visible;
  for (AggregatorId j : view.compromised) {
    const auto it = view.visible_cells.find({j, target, interval});
    if (it != view.visible_cells.end()) visible.emplace_back(j, it->second);
  }
  if (visible.empty()) {
    throw DomainError("target cell not visible in any compromised aggregator");
  }

  ReadingEstimate estimate;
  switch (scheme) {
    case ShareScheme::NaiveEqualSplit:
      // m times a share brackets the energy within m units; a non-zero
      // aggregator's share avoids the remainder.
      estimate.point_estimate = view.m_total * visible.back().second;
      estimate.exact = true;
      break;
    case ShareScheme::AdditiveRandom:
      if (visible.size() < view.m_total) {
        // Share marginal is uniform over the ring.
        estimate.point_estimate = std::nullopt;
        estimate.exact = false;
      } else {
        uint64_t sum = 0;
        for (const auto& [j, share] : visible) sum = (sum + share) % view.modulus;
        estimate.point_estimate = sum;
        estimate.exact = true;
      }
      break;
  }
  return estimate;
}

ProbabilityProfile assign_user_probabilities(const AttackerView& view, uint32_t n) {
  if (n <= 2) throw DomainError("user probabilities need n > 2");

  ProbabilityProfile profile;
  profile.subject = ProfileSubject::OverUsers;

  if (view.scheme == ShareScheme::AdditiveRandom || view.visible_cells.empty()) {
    // Uniform marginals: the attacker has no basis to skew.
    profile.probabilities.assign(n, 1.0 / n);
    return profile;
  }

  // NaiveEqualSplit: visible rows are thirds of the plaintext, so meters with
  // identical rows are indistinguishable; the target (meter 0) is uniform over
  // its tie set.
  const AggregatorId j = *view.compromised.begin();
  const auto row_of = [&](MeterId meter) {
    std::vector<uint64_t> row;
    for (Interval t = 0; t < view.intervals; ++t) {
      row.push_back(view.visible_cells.at({j, meter, t}));
    }
    return row;
  };
  const std::vector<uint64_t> target_row = row_of(0);
  std::vector<MeterId> ties;
  for (MeterId meter = 0; meter < n; ++meter) {
    if (row_of(meter) == target_row) ties.push_back(meter);
  }
  profile.probabilities.assign(n, 0.0);
  for (MeterId meter : ties) profile.probabilities[meter] = 1.0 / ties.size();
  return profile;
}

}  // namespace dtbas
