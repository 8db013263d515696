#include "dtbas/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace dtbas {

void ProbabilityProfile::validate() const {
  if (probabilities.empty()) throw DomainError("empty probability profile");
  double sum = 0.0;
  for (double p : probabilities) {
    if (p < 0.0 || p > 1.0) {
      throw DomainError("probability out of [0,1]: " + std::to_string(p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DomainError("probabilities sum to " + std::to_string(sum) +
                      ", expected 1");
  }
}

bool ProbabilityProfile::is_uniform(double eps) const {
  for (double p : probabilities) {
    if (std::abs(p - probabilities.front()) > eps) return false;
  }
  return true;
}

ProbabilityProfile ProbabilityProfile::uniform(uint32_t s, ProfileSubject subject) {
  if (s == 0) throw DomainError("uniform profile needs s >= 1");
  ProbabilityProfile profile;
  profile.subject = subject;
  profile.probabilities.assign(s, 1.0 / s);
  return profile;
}

double entropy(const ProbabilityProfile& profile) {
  profile.validate();
  double h = 0.0;
  for (double p : profile.probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double max_entropy(uint64_t s) {
  if (s < 1) throw DomainError("max_entropy needs s >= 1");
  return std::log2(static_cast<double>(s));
}

std::optional<double> degree_of_anonymity(const ProbabilityProfile& profile) {
  profile.validate();
  const uint64_t s = profile.probabilities.size();
  if (s == 1) return std::nullopt;
  if (profile.is_uniform(0.0)) return 1.0;
  const double h_max = max_entropy(s);
  return 1.0 - (h_max - entropy(profile)) / h_max;
}

nlohmann::json AnonymityReport::to_json() const {
  nlohmann::json j = {
      {"entropy_bits", entropy_bits},
      {"max_entropy_bits", max_entropy_bits},
  };
  if (degree) {
    j["degree"] = *degree;
  } else {
    j["degree"] = nullptr;
  }
  return j;
}

AnonymityReport AnonymityReport::from_json(const nlohmann::json& j) {
  AnonymityReport report;
  report.entropy_bits = j.at("entropy_bits").get<double>();
  report.max_entropy_bits = j.at("max_entropy_bits").get<double>();
  if (!j.at("degree").is_null()) report.degree = j.at("degree").get<double>();
  return report;
}

AnonymityReport analyze(const ProbabilityProfile& profile) {
  AnonymityReport report;
  report.entropy_bits = entropy(profile);
  report.max_entropy_bits = max_entropy(profile.probabilities.size());
  report.degree = degree_of_anonymity(profile);
  return report;
}

ProbabilityProfile decremental_profile(uint32_t s) {
  if (s < 3) throw DomainError("decremental_profile needs s >= 3");
  ProbabilityProfile profile;
  profile.subject = ProfileSubject::OverSplits;
  profile.probabilities.push_back(0.50);
  profile.probabilities.push_back(1.0 - 0.50 - 0.01 * (s - 2));
  for (uint32_t i = 2; i < s; ++i) profile.probabilities.push_back(0.01);
  profile.validate();
  return profile;
}

double uniform_user_probability(uint32_t n, bool table_reproduction) {
  const uint32_t minimum = table_reproduction ? 2 : 3;
  if (n < minimum) {
    throw DomainError("user count " + std::to_string(n) + " below minimum " +
                      std::to_string(minimum));
  }
  return 1.0 / n;
}

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(value * scale + 0.5) / scale;
}

namespace {

struct TableRow {
  uint32_t s;
  std::vector<double> probabilities;
  double entropy_printed;  // with the published negative sign
  double h_max;
  std::optional<double> degree;
};

TableRow make_row(uint32_t s, const ProbabilityProfile& profile) {
  TableRow row;
  row.s = s;
  for (double p : profile.probabilities) {
    row.probabilities.push_back(round_half_up(p, 2));
  }
  const double h = entropy(profile);
  row.entropy_printed = s == 1 ? 0.0 : -round_half_up(h, 2);
  row.h_max = round_half_up(max_entropy(s), 2);
  const auto degree = degree_of_anonymity(profile);
  if (degree) row.degree = round_half_up(*degree, 2);
  return row;
}

std::vector<TableRow> equal_probability_rows() {
  std::vector<TableRow> rows;
  for (uint32_t s = 1; s <= 5; ++s) {
    rows.push_back(make_row(s, ProbabilityProfile::uniform(s, ProfileSubject::OverSplits)));
  }
  return rows;
}

std::vector<TableRow> variable_probability_rows() {
  std::vector<TableRow> rows;
  for (uint32_t s = 3; s <= 5; ++s) {
    rows.push_back(make_row(s, decremental_profile(s)));
  }
  return rows;
}

std::vector<std::pair<uint32_t, double>> user_probability_rows() {
  std::vector<std::pair<uint32_t, double>> rows;
  for (uint32_t n = 2; n <= 6; ++n) {
    rows.emplace_back(n, round_half_up(uniform_user_probability(n, true), 2));
  }
  return rows;
}

std::string fmt(double v, int decimals = 2) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

void render_anonymity_table(std::ostringstream& out, const std::string& title,
                            const std::vector<TableRow>& rows) {
  out << title << "\n";
  out << "  Aggregators  P_i    H(ES)   H(MaxES)  d_a\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.probabilities.size(); ++i) {
      if (i == row.probabilities.size() / 2) {
        out << "  " << row.s << "            " << fmt(row.probabilities[i])
            << "   " << fmt(row.entropy_printed) << "   " << fmt(row.h_max)
            << "      " << (row.degree ? fmt(*row.degree) : "None") << "\n";
      } else {
        out << "               " << fmt(row.probabilities[i]) << "\n";
      }
    }
  }
  out << "\n";
}

// Published cells: (s, |H|, Hmax, degree); degree < 0 encodes "None".
constexpr struct {
  uint32_t s;
  double h, h_max, degree;
} kEqualGolden[] = {
    {1, 0.00, 0.00, -1.0}, {2, 1.00, 1.00, 1.0}, {3, 1.58, 1.58, 1.0},
    {4, 2.00, 2.00, 1.0},  {5, 2.32, 2.32, 1.0},
};

constexpr struct {
  uint32_t s;
  double h, h_max, degree;
} kVariableGolden[] = {
    {3, 1.07, 1.58, 0.68},
    {4, 1.14, 2.00, 0.57},
    {5, 1.21, 2.32, 0.52},
};

constexpr struct {
  uint32_t n;
  double p;
} kUserGolden[] = {
    {2, 0.50}, {3, 0.33}, {4, 0.25}, {5, 0.20}, {6, 0.17},
};

}  // namespace

std::string render_comparison_tables() {
  std::ostringstream out;
  render_anonymity_table(out, "Degree of Anonymity with Equal Probability",
                         equal_probability_rows());
  render_anonymity_table(out, "Degree of Anonymity with Variable Probability",
                         variable_probability_rows());
  out << "Probability of a User being the Originator\n";
  out << "  Meters  P_user\n";
  for (const auto& [n, p] : user_probability_rows()) {
    out << "  " << n << "       " << fmt(p) << "\n";
  }
  out << "  n       1/n\n";
  return out.str();
}

nlohmann::json comparison_tables_json() {
  nlohmann::json equal = nlohmann::json::array();
  for (const auto& row : equal_probability_rows()) {
    equal.push_back({{"aggregators", row.s},
                     {"p_i", row.probabilities},
                     {"entropy", row.entropy_printed},
                     {"max_entropy", row.h_max},
                     {"degree", row.degree ? nlohmann::json(*row.degree)
                                           : nlohmann::json(nullptr)}});
  }
  nlohmann::json variable = nlohmann::json::array();
  for (const auto& row : variable_probability_rows()) {
    variable.push_back({{"aggregators", row.s},
                        {"p_i", row.probabilities},
                        {"entropy", row.entropy_printed},
                        {"max_entropy", row.h_max},
                        {"degree", *row.degree}});
  }
  nlohmann::json users = nlohmann::json::array();
  for (const auto& [n, p] : user_probability_rows()) {
    users.push_back({{"meters", n}, {"p_user", p}});
  }
  return {{"equal_probability", equal},
          {"variable_probability", variable},
          {"user_probability", users}};
}

bool check_comparison_tables(std::string* first_mismatch) {
  const auto mismatch = [&](const std::string& what) {
    if (first_mismatch) *first_mismatch = what;
    return false;
  };
  const auto rows_equal = equal_probability_rows();
  for (size_t i = 0; i < std::size(kEqualGolden); ++i) {
    const auto& golden = kEqualGolden[i];
    const auto& row = rows_equal[i];
    if (std::abs(std::abs(row.entropy_printed) - golden.h) > 1e-9) {
      return mismatch("equal-probability s=" + std::to_string(golden.s) + " H");
    }
    if (std::abs(row.h_max - golden.h_max) > 1e-9) {
      return mismatch("equal-probability s=" + std::to_string(golden.s) + " Hmax");
    }
    const bool golden_none = golden.degree < 0.0;
    if (golden_none != !row.degree.has_value()) {
      return mismatch("equal-probability s=" + std::to_string(golden.s) + " d_a");
    }
    if (row.degree && std::abs(*row.degree - golden.degree) > 1e-9) {
      return mismatch("equal-probability s=" + std::to_string(golden.s) + " d_a");
    }
  }
  const auto rows_variable = variable_probability_rows();
  for (size_t i = 0; i < std::size(kVariableGolden); ++i) {
    const auto& golden = kVariableGolden[i];
    const auto& row = rows_variable[i];
    if (std::abs(std::abs(row.entropy_printed) - golden.h) > 1e-9) {
      return mismatch("variable-probability s=" + std::to_string(golden.s) + " H");
    }
    if (std::abs(row.h_max - golden.h_max) > 1e-9) {
      return mismatch("variable-probability s=" + std::to_string(golden.s) + " Hmax");
    }
    if (std::abs(*row.degree - golden.degree) > 1e-9) {
      return mismatch("variable-probability s=" + std::to_string(golden.s) + " d_a");
    }
  }
  const auto rows_user = user_probability_rows();
  for (size_t i = 0; i < std::size(kUserGolden); ++i) {
    if (rows_user[i].first != kUserGolden[i].n ||
        std::abs(rows_user[i].second - kUserGolden[i].p) > 1e-9) {
      return mismatch("user-probability n=" + std::to_string(kUserGolden[i].n));
    }
  }
  return true;
}

}  // namespace dtbas
