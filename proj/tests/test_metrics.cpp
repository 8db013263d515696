#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dtbas/metrics.hpp"
#include "dtbas/rng.hpp"

using namespace dtbas;

TEST_CASE("entropy of published profiles") {
  CHECK(entropy(ProbabilityProfile::uniform(3, ProfileSubject::OverSplits)) ==
        doctest::Approx(1.58).epsilon(0.01));
  CHECK(entropy(ProbabilityProfile::uniform(1, ProfileSubject::OverSplits)) ==
        doctest::Approx(0.0));
  ProbabilityProfile skewed{{0.50, 0.49, 0.01}, ProfileSubject::OverSplits};
  CHECK(entropy(skewed) == doctest::Approx(1.07).epsilon(0.01));
}

TEST_CASE("entropy rejects profiles that do not sum to one") {
  ProbabilityProfile bad{{0.5, 0.4}, ProfileSubject::OverSplits};
  CHECK_THROWS_AS(entropy(bad), DomainError);
  ProbabilityProfile negative{{1.5, -0.5}, ProfileSubject::OverSplits};
  CHECK_THROWS_AS(entropy(negative), DomainError);
}

TEST_CASE("zero probabilities contribute nothing") {
  ProbabilityProfile profile{{1.0, 0.0, 0.0}, ProfileSubject::OverSplits};
  CHECK(entropy(profile) == doctest::Approx(0.0));
}

TEST_CASE("max entropy is log2 of the subject count") {
  CHECK(max_entropy(3) == doctest::Approx(1.58).epsilon(0.01));
  CHECK(max_entropy(1) == doctest::Approx(0.0));
  CHECK(max_entropy(5) == doctest::Approx(2.32).epsilon(0.01));
  CHECK_THROWS_AS(max_entropy(0), DomainError);
}

TEST_CASE("degree of anonymity matches the published cells") {
  CHECK(*degree_of_anonymity(
            ProbabilityProfile::uniform(3, ProfileSubject::OverSplits)) == 1.0);
  CHECK(*degree_of_anonymity(decremental_profile(3)) ==
        doctest::Approx(0.68).epsilon(0.01));
  CHECK(*degree_of_anonymity(decremental_profile(5)) ==
        doctest::Approx(0.52).epsilon(0.01));
  CHECK(!degree_of_anonymity(
             ProbabilityProfile::uniform(1, ProfileSubject::OverSplits))
             .has_value());
}

TEST_CASE("decremental profiles take the published shapes") {
  CHECK(decremental_profile(3).probabilities ==
        std::vector<double>{0.50, 0.49, 0.01});
  auto p4 = decremental_profile(4).probabilities;
  CHECK(p4[0] == doctest::Approx(0.50));
  CHECK(p4[1] == doctest::Approx(0.48));
  CHECK(p4[2] == doctest::Approx(0.01));
  auto p5 = decremental_profile(5).probabilities;
  CHECK(p5[1] == doctest::Approx(0.47));
  CHECK(p5.size() == 5);
  CHECK_THROWS_AS(decremental_profile(2), DomainError);
}

TEST_CASE("user probability is 1/n") {
  CHECK(uniform_user_probability(3) == doctest::Approx(1.0 / 3));
  CHECK(uniform_user_probability(6) == doctest::Approx(1.0 / 6));
  CHECK_THROWS_AS(uniform_user_probability(2), DomainError);
  CHECK(uniform_user_probability(2, true) == doctest::Approx(0.5));
}

TEST_CASE("entropy respects the Jensen bound and permutation invariance") {
  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    const uint32_t s = 2 + static_cast<uint32_t>(rng.below(8));
    ProbabilityProfile profile;
    profile.subject = ProfileSubject::OverSplits;
    double sum = 0.0;
    for (uint32_t k = 0; k < s; ++k) {
      const double w = rng.unit() + 1e-12;
      profile.probabilities.push_back(w);
      sum += w;
    }
    for (double& p : profile.probabilities) p /= sum;

    const double h = entropy(profile);
    REQUIRE(h >= -1e-9);
    REQUIRE(h <= max_entropy(s) + 1e-9);

    ProbabilityProfile shuffled = profile;
    for (size_t k = shuffled.probabilities.size(); k > 1; --k) {
      std::swap(shuffled.probabilities[k - 1],
                shuffled.probabilities[rng.below(k)]);
    }
    REQUIRE(std::abs(entropy(shuffled) - h) <= 1e-9);
  }
}

TEST_CASE("both degree formulations agree") {
  // Eq-style 1 - (Hmax - H)/Hmax versus the direct ratio H/Hmax.
  Rng rng(78);
  for (int i = 0; i < 200; ++i) {
    const uint32_t s = 2 + static_cast<uint32_t>(rng.below(6));
    ProbabilityProfile profile;
    double sum = 0.0;
    for (uint32_t k = 0; k < s; ++k) {
      const double w = rng.unit() + 1e-12;
      profile.probabilities.push_back(w);
      sum += w;
    }
    for (double& p : profile.probabilities) p /= sum;
    const double ratio = entropy(profile) / max_entropy(s);
    REQUIRE(std::abs(*degree_of_anonymity(profile) - ratio) <= 1e-12);
  }
}

TEST_CASE("degree strictly decreases along the decremental sweep") {
  const double d3 = *degree_of_anonymity(decremental_profile(3));
  const double d4 = *degree_of_anonymity(decremental_profile(4));
  const double d5 = *degree_of_anonymity(decremental_profile(5));
  CHECK(d3 > d4);
  CHECK(d4 > d5);
  CHECK(d3 == doctest::Approx(0.68).epsilon(0.01));
  CHECK(d4 == doctest::Approx(0.57).epsilon(0.01));
  CHECK(d5 == doctest::Approx(0.52).epsilon(0.01));
}

TEST_CASE("uniform profiles give degree exactly one") {
  for (uint32_t s = 2; s <= 8; ++s) {
    CHECK(*degree_of_anonymity(
              ProbabilityProfile::uniform(s, ProfileSubject::OverUsers)) == 1.0);
  }
}

TEST_CASE("table emitter rounds half-up to two decimals") {
  CHECK(round_half_up(1.585, 2) == doctest::Approx(1.59));
  CHECK(round_half_up(std::log2(3.0), 2) == doctest::Approx(1.58));
  CHECK(round_half_up(0.675, 2) == doctest::Approx(0.68));
}

TEST_CASE("embedded golden cells match the computed tables") {
  std::string mismatch;
  CHECK(check_comparison_tables(&mismatch));
  CHECK(mismatch.empty());
}

TEST_CASE("rendered tables carry the published negative entropy sign") {
  const std::string text = render_comparison_tables();
  CHECK(text.find("-1.58") != std::string::npos);
  CHECK(text.find("-1.07") != std::string::npos);
  CHECK(text.find("None") != std::string::npos);
}
