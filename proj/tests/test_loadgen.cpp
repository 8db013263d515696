#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dtbas/loadgen.hpp"

using namespace dtbas;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("flat archetype without noise is constant") {
  ProfileGenSpec spec{Archetype::Flat, 100, 100, 0.0, 96};
  Rng rng(1);
  const LoadProfile profile = generate_profile(spec, rng);
  REQUIRE(profile.length() == 96);
  for (uint64_t v : profile.series) CHECK(v == 100);
}

TEST_CASE("diurnal archetype peaks mid-day and troughs at midnight") {
  ProfileGenSpec spec{Archetype::Diurnal, 50, 500, 0.0, 96};
  Rng rng(1);
  const LoadProfile profile = generate_profile(spec, rng);
  const auto max_it =
      std::max_element(profile.series.begin(), profile.series.end());
  CHECK(*max_it == 500);
  CHECK(profile.series[48] == 500);
  CHECK(profile.series.front() == 50);
  const double mean =
      static_cast<double>(profile.total()) / profile.length();
  CHECK(mean >= 50.0);
  CHECK(mean <= 500.0);
}

TEST_CASE("peaky archetype spikes at the two meal slots") {
  ProfileGenSpec spec{Archetype::Peaky, 100, 2000, 0.0, 96};
  Rng rng(1);
  const LoadProfile profile = generate_profile(spec, rng);
  CHECK(profile.series[30] == 2000);
  CHECK(profile.series[76] == 2000);
  CHECK(profile.series[0] == 100);
}

TEST_CASE("noisy generation is reproducible for a fixed seed") {
  ProfileGenSpec spec{Archetype::Diurnal, 50, 500, 30.0, 96};
  Rng rng_a(42), rng_b(42), rng_c(43);
  const LoadProfile a = generate_profile(spec, rng_a);
  const LoadProfile b = generate_profile(spec, rng_b);
  const LoadProfile c = generate_profile(spec, rng_c);
  CHECK(a.series == b.series);
  CHECK(a.series != c.series);
}

TEST_CASE("generator rejects invalid specs") {
  ProfileGenSpec spec{Archetype::Flat, 100, 50, 0.0, 96};
  Rng rng(1);
  CHECK_THROWS_AS(generate_profile(spec, rng), DomainError);
  spec.peak_wh = 100;
  spec.noise_std = -1.0;
  CHECK_THROWS_AS(generate_profile(spec, rng), DomainError);
}

TEST_CASE("CSV export then ingest is the identity") {
  std::map<MeterId, LoadProfile> profiles;
  Rng rng(9);
  for (MeterId meter = 0; meter < 3; ++meter) {
    ProfileGenSpec spec{Archetype::Diurnal, 50, 500, 20.0, 96};
    profiles[meter] = generate_profile(spec, rng);
  }
  const auto path = temp_file("dtbas_roundtrip.csv");
  export_csv(path, profiles);
  const auto parsed = ingest_csv(path, uint64_t{1} << 40);
  REQUIRE(parsed.size() == 3);
  for (const auto& [meter, profile] : profiles) {
    CHECK(parsed.at(meter).series == profile.series);
  }
  std::filesystem::remove(path);
}

TEST_CASE("CSV ingest reports the offending line") {
  const auto path = temp_file("dtbas_bad.csv");
  {
    std::ofstream out(path);
    out << "meter_id,interval,wh\n0,0,100\n0,1,-5\n";
  }
  try {
    ingest_csv(path, uint64_t{1} << 40);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("ragged CSV lengths are a schema error") {
  const auto path = temp_file("dtbas_ragged.csv");
  {
    std::ofstream out(path);
    out << "meter_id,interval,wh\n0,0,100\n0,1,100\n1,0,100\n";
  }
  CHECK_THROWS_AS(ingest_csv(path, uint64_t{1} << 40), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("CSV values at or above the bound are rejected") {
  const auto path = temp_file("dtbas_big.csv");
  {
    std::ofstream out(path);
    out << "meter_id,interval,wh\n0,0,1000\n";
  }
  CHECK_THROWS_AS(ingest_csv(path, 1000), DomainError);
  std::filesystem::remove(path);
}

TEST_CASE("persisted reports are canonical and byte-stable") {
  nlohmann::json report = {{"zeta", 1}, {"alpha", {{"b", 2}, {"a", 1}}}};
  const auto path_a = temp_file("dtbas_report_a.json");
  const auto path_b = temp_file("dtbas_report_b.json");
  persist_report(report, path_a);
  persist_report(report, path_b);
  const std::string a = slurp(path_a);
  CHECK(a == slurp(path_b));
  CHECK(a.back() == '\n');
  CHECK(a.find("alpha") < a.find("zeta"));  // sorted keys
  std::filesystem::remove(path_a);
  std::filesystem::remove(path_b);
}

TEST_CASE("persisting to an unwritable directory fails with path context") {
  nlohmann::json report = {{"x", 1}};
  try {
    persist_report(report, "/nonexistent-dir/report.json");
    FAIL("expected error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("nonexistent-dir") != std::string::npos);
  }
}
