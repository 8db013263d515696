#pragma once

#include <cstdint>
#include <filesystem>
#include <map>

#include <nlohmann/json.hpp>

#include "dtbas/core.hpp"
#include "dtbas/rng.hpp"

namespace dtbas {

enum class Archetype { Flat, Peaky, Diurnal };

std::string to_string(Archetype archetype);
Archetype archetype_from_string(const std::string& name);

/// Synthetic household load shapes; values are integer Wh per 15-minute slot,
/// clamped to [0, max_wh).
struct ProfileGenSpec {
  Archetype archetype = Archetype::Diurnal;
  uint64_t base_wh = 100;
  uint64_t peak_wh = 500;
  double noise_std = 0.0;
  uint32_t length = kIntervalsPerDay;
  uint64_t max_wh = uint64_t{1} << 40;

  void validate() const;

  /// Noise-free expected value at one slot; the TotalSumMatcher's prior.
  double mean_at(uint32_t slot) const;
};

/// Pure function of (spec, rng state).
LoadProfile generate_profile(const ProfileGenSpec& spec, Rng& rng);

/// CSV schema: header `meter_id,interval,wh`; intervals dense 0..L-1 per
/// meter; equal lengths across meters.
std::map<MeterId, LoadProfile> ingest_csv(const std::filesystem::path& path,
                                          uint64_t max_wh);

void export_csv(const std::filesystem::path& path,
                const std::map<MeterId, LoadProfile>& profiles);

/// Canonical JSON (sorted keys, newline-terminated), written atomically via
/// temp file + rename.
void persist_report(const nlohmann::json& report,
                    const std::filesystem::path& path);

}  // namespace dtbas
