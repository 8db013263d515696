#include "dtbas/loadgen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dtbas {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Meal-time spike slots within a 96-interval day (07:30 and 19:00).
constexpr uint32_t kMorningPeakSlot = 30;
constexpr uint32_t kEveningPeakSlot = 76;

}  // namespace

std::string to_string(Archetype archetype) {
  switch (archetype) {
    case Archetype::Flat:
      return "flat";
    case Archetype::Peaky:
      return "peaky";
    case Archetype::Diurnal:
      return "diurnal";
  }
  throw DomainError("unknown archetype");
}

Archetype archetype_from_string(const std::string& name) {
  if (name == "flat") return Archetype::Flat;
  if (name == "peaky") return Archetype::Peaky;
  if (name == "diurnal") return Archetype::Diurnal;
  throw ParseError("unknown archetype: '" + name + "'");
}

void ProfileGenSpec::validate() const {
  if (peak_wh < base_wh) throw DomainError("peak_wh must be >= base_wh");
  if (noise_std < 0.0) throw DomainError("noise_std must be non-negative");
  if (length == 0) throw DomainError("profile length must be positive");
  if (max_wh == 0) throw DomainError("max_wh must be positive");
}

double ProfileGenSpec::mean_at(uint32_t slot) const {
  switch (archetype) {
    case Archetype::Flat:
      return static_cast<double>(base_wh);
    case Archetype::Peaky: {
      const uint32_t day_slot = slot % kIntervalsPerDay;
      if (day_slot == kMorningPeakSlot || day_slot == kEveningPeakSlot) {
        return static_cast<double>(peak_wh);
      }
      return static_cast<double>(base_wh);
    }
    case Archetype::Diurnal: {
      const double phase = 2.0 * kPi * (slot % kIntervalsPerDay) / kIntervalsPerDay;
      return base_wh + (peak_wh - base_wh) * 0.5 * (1.0 - std::cos(phase));
    }
  }
  throw DomainError("unknown archetype");
}

LoadProfile generate_profile(const ProfileGenSpec& spec, Rng& rng) {
  spec.validate();
  LoadProfile profile;
  profile.series.reserve(spec.length);
  for (uint32_t t = 0; t < spec.length; ++t) {
    double value = spec.mean_at(t);
    if (spec.noise_std > 0.0) value = rng.gaussian(value, spec.noise_std);
    value = std::floor(value + 0.5);
    if (value < 0.0) value = 0.0;
    uint64_t wh = static_cast<uint64_t>(value);
    if (wh >= spec.max_wh) wh = spec.max_wh - 1;
    profile.series.push_back(wh);
  }
  return profile;
}

std::map<MeterId, LoadProfile> ingest_csv(const std::filesystem::path& path,
                                          uint64_t max_wh) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open CSV: " + path.string());

  std::string line;
  size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty CSV: " + path.string());
  ++lineno;
  // Tolerate a trailing \r from CRLF files.
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  if (line != "meter_id,interval,wh") {
    throw ParseError(path.string() + ":1: expected header 'meter_id,interval,wh'");
  }

  std::map<MeterId, std::vector<uint64_t>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);

    long long meter = -1, interval = -1, wh = -1;
    char trailing = 0;
    const int parsed = std::sscanf(line.c_str(), "%lld,%lld,%lld%c", &meter,
                                   &interval, &wh, &trailing);
    if (parsed != 3) throw ParseError(where + ": malformed row '" + line + "'");
    if (meter < 0) throw ParseError(where + ": negative meter_id");
    if (interval < 0) throw ParseError(where + ": negative interval");
    if (wh < 0) throw ParseError(where + ": negative energy");
    if (static_cast<uint64_t>(wh) >= max_wh) {
      throw DomainError(where + ": energy " + std::to_string(wh) +
                        " exceeds bound " + std::to_string(max_wh));
    }

    auto& series = rows[static_cast<MeterId>(meter)];
    if (static_cast<size_t>(interval) != series.size()) {
      throw ParseError(where + ": intervals must be dense 0..L-1 per meter; "
                       "expected " + std::to_string(series.size()));
    }
    series.push_back(static_cast<uint64_t>(wh));
  }

  if (rows.empty()) throw ParseError(path.string() + ": no data rows");
  const size_t expected_length = rows.begin()->second.size();
  std::map<MeterId, LoadProfile> profiles;
  for (auto& [meter, series] : rows) {
    if (series.size() != expected_length) {
      throw ParseError(path.string() + ": ragged profile lengths (meter " +
                       std::to_string(meter) + " has " +
                       std::to_string(series.size()) + ", expected " +
                       std::to_string(expected_length) + ")");
    }
    profiles[meter] = LoadProfile{std::move(series)};
  }
  return profiles;
}

void export_csv(const std::filesystem::path& path,
                const std::map<MeterId, LoadProfile>& profiles) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write CSV: " + path.string());
  out << "meter_id,interval,wh\n";
  for (const auto& [meter, profile] : profiles) {
    for (size_t t = 0; t < profile.series.size(); ++t) {
      out << meter << "," << t << "," << profile.series[t] << "\n";
    }
  }
}

void persist_report(const nlohmann::json& report,
                    const std::filesystem::path& path) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write report: " + path.string());
    out << report.dump(2) << "\n";
    if (!out) throw ParseError("write failed: " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ParseError("cannot finalize report " + path.string() + ": " +
                     ec.message());
  }
}

}  // namespace dtbas
