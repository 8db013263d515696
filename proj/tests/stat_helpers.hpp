#pragma once

// Test-only statistical oracles, independent of the implementation they check.

#include <cmath>
#include <cstdint>
#include <vector>

namespace dtbas_test {

/// Upper critical value of the chi-square distribution via the
/// Wilson-Hilferty cube approximation. z defaults to the 0.99 quantile of
/// the standard normal, i.e. significance 0.01.
inline double chi2_critical(double df, double z = 2.3263478740408408) {
  const double a = 2.0 / (9.0 * df);
  const double c = 1.0 - a + z * std::sqrt(a);
  return df * c * c * c;
}

/// Two-sample chi-square statistic over shared bins; empty-in-both bins drop
/// out of the degrees of freedom. Returns the statistic and sets df.
inline double chi2_two_sample(const std::vector<uint64_t>& observed1,
                              const std::vector<uint64_t>& observed2,
                              double* df_out) {
  double total1 = 0, total2 = 0;
  for (uint64_t c : observed1) total1 += static_cast<double>(c);
  for (uint64_t c : observed2) total2 += static_cast<double>(c);
  const double k1 = std::sqrt(total2 / total1);
  const double k2 = std::sqrt(total1 / total2);

  double stat = 0.0;
  double nonempty = 0.0;
  for (size_t i = 0; i < observed1.size(); ++i) {
    const double o1 = static_cast<double>(observed1[i]);
    const double o2 = static_cast<double>(observed2[i]);
    if (o1 + o2 == 0.0) continue;
    const double d = k1 * o1 - k2 * o2;
    stat += d * d / (o1 + o2);
    ++nonempty;
  }
  if (df_out) *df_out = nonempty - 1.0;
  return stat;
}

/// One-sample chi-square against a uniform expectation.
inline double chi2_uniform(const std::vector<uint64_t>& observed, double* df_out) {
  double total = 0;
  for (uint64_t c : observed) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(observed.size());
  double stat = 0.0;
  for (uint64_t c : observed) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  if (df_out) *df_out = static_cast<double>(observed.size()) - 1.0;
  return stat;
}

}  // namespace dtbas_test
