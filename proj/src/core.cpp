#include "dtbas/core.hpp"

#include <fstream>
#include <sstream>

namespace dtbas {

std::string to_string(ShareScheme scheme) {
  switch (scheme) {
    case ShareScheme::NaiveEqualSplit:
      return "naive-equal";
    case ShareScheme::AdditiveRandom:
      return "additive-random";
  }
  throw DomainError("unknown share scheme");
}

ShareScheme share_scheme_from_string(const std::string& name) {
  if (name == "naive-equal") return ShareScheme::NaiveEqualSplit;
  if (name == "additive-random") return ShareScheme::AdditiveRandom;
  throw ParseError("unknown share scheme: '" + name + "'");
}

uint64_t LoadProfile::total() const {
  uint64_t sum = 0;
  for (uint64_t v : series) sum += v;
  return sum;
}

void SimConfig::validate() const {
  if (!table_reproduction) {
    if (n_meters <= 2) {
      throw DomainError("n_meters must be > 2 (got " + std::to_string(n_meters) + ")");
    }
    if (m_aggregators <= 2) {
      throw DomainError("m_aggregators must be > 2 (got " +
                        std::to_string(m_aggregators) + ")");
    }
  }
  if (n_meters == 0) throw DomainError("n_meters must be positive");
  if (m_aggregators == 0) throw DomainError("m_aggregators must be positive");
  if (modulus < 2) throw DomainError("modulus must be a prime >= 2");
  if (intervals_per_period == 0) {
    throw DomainError("intervals_per_period must be positive");
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

SimConfig SimConfig::from_stream(std::istream& in) {
  SimConfig config;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) +
                       ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      if (key == "n_meters") {
        config.n_meters = static_cast<uint32_t>(std::stoul(value));
      } else if (key == "m_aggregators") {
        config.m_aggregators = static_cast<uint32_t>(std::stoul(value));
      } else if (key == "scheme") {
        config.scheme = share_scheme_from_string(value);
      } else if (key == "modulus") {
        config.modulus = std::stoull(value);
      } else if (key == "seed") {
        config.seed = std::stoull(value);
      } else if (key == "intervals_per_period") {
        config.intervals_per_period = static_cast<uint32_t>(std::stoul(value));
      } else if (key == "table_reproduction") {
        config.table_reproduction = (value == "true" || value == "1");
      } else {
        throw ParseError("config line " + std::to_string(lineno) +
                         ": unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("config line " + std::to_string(lineno) +
                       ": bad value for '" + key + "'");
    }
  }
  return config;
}

SimConfig SimConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path.string());
  return from_stream(in);
}

void SimConfig::to_stream(std::ostream& out) const {
  out << "n_meters = " << n_meters << "\n"
      << "m_aggregators = " << m_aggregators << "\n"
      << "scheme = " << to_string(scheme) << "\n"
      << "modulus = " << modulus << "\n"
      << "seed = " << seed << "\n"
      << "intervals_per_period = " << intervals_per_period << "\n"
      << "table_reproduction = " << (table_reproduction ? "true" : "false")
      << "\n";
}

void SimConfig::to_file(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write config file: " + path.string());
  to_stream(out);
}

uint64_t node_count(const SimConfig& config) {
  config.validate();
  return static_cast<uint64_t>(config.m_aggregators) * config.n_meters;
}

uint32_t anonymity_set_size(const SimConfig& config) {
  config.validate();
  return config.n_meters;
}

}  // namespace dtbas
