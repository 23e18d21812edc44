#include <cmath>
#include <random>

#include "crossum/error.hpp"
#include "crossum/stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace crossum;

TEST_CASE("exact small-sample p-values") {
  const std::vector<double> zero(6, 0.0);
  const std::vector<double> six{1, 2, 3, 4, 5, 6};
  const auto r6 = wilcoxon_signed_rank(six, zero);
  CHECK(r6.n_effective == 6);
  CHECK(r6.statistic == 0.0);
  CHECK(r6.w_plus == 21.0);
  CHECK(r6.p_two_sided == 0.03125);
  CHECK(r6.method == WilcoxonMethod::Exact);
  CHECK(r6.significant);

  const std::vector<double> five{1, 2, 3, 4, 5};
  const auto r5 = wilcoxon_signed_rank(five, std::vector<double>(5, 0.0));
  CHECK(r5.p_two_sided == 0.0625);
  CHECK_FALSE(r5.significant);
}

TEST_CASE("identical inputs give p = 1") {
  const std::vector<double> x{3, 1, 4, 1, 5};
  const auto r = wilcoxon_signed_rank(x, x);
  CHECK(r.n_effective == 0);
  CHECK(r.p_two_sided == 1.0);
  CHECK_FALSE(r.significant);
}

TEST_CASE("input validation") {
  const std::vector<double> a{1, 2}, b{1};
  CHECK_THROWS_AS(wilcoxon_signed_rank(a, b), Error);
  CHECK_THROWS_AS(wilcoxon_signed_rank(std::vector<double>{}, std::vector<double>{}), Error);
  CHECK_THROWS_AS(parse_pairing("bogus"), Error);
  CHECK(parse_pairing("per-test-dataset") == Pairing::PerTestDataset);
}

TEST_CASE("two-dataset grid comparison") {
  const CrossMatrix a({DatasetId("X"), DatasetId("Y")}, {48, 40, 41, 45});
  const CrossMatrix b({DatasetId("X"), DatasetId("Y")}, {61, 43, 46, 69});
  const auto r = compare_systems(a, b, Pairing::PerCell);
  CHECK(r.n_effective == 4);
  CHECK(r.p_two_sided == 0.125);
  // Normalized diagonals are both 100 and drop out.
  CHECK(compare_systems(a, b, Pairing::PerCellNormalized).n_effective == 2);
  CHECK(compare_systems(a, b, Pairing::PerTestDataset).n_effective == 2);
}

TEST_CASE("exact p matches enumeration and is symmetric") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + trial % 12;
    std::uniform_int_distribution<int> mag(-4, 4);
    std::vector<double> x(n), y(n, 0.0);
    for (auto& v : x) v = mag(rng);
    const auto r = wilcoxon_signed_rank(x, y, 0.05, WilcoxonMethod::Exact);
    const auto rev = wilcoxon_signed_rank(y, x, 0.05, WilcoxonMethod::Exact);
    CHECK(r.p_two_sided == rev.p_two_sided);
    CHECK(r.w_plus == rev.w_minus);

    std::vector<double> d;
    for (double v : x)
      if (v != 0) d.push_back(v);
    if (d.empty()) {
      CHECK(r.p_two_sided == 1.0);
      continue;
    }
    const auto ranks = oracle::doubled_average_ranks(d);
    std::uint64_t plus = 0, total = 0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      total += ranks[k];
      if (d[k] > 0) plus += ranks[k];
    }
    const double want = oracle::wilcoxon_enumerated_p(ranks, std::min(plus, total - plus));
    CHECK(r.n_effective == d.size());
    CHECK(r.statistic == static_cast<double>(std::min(plus, total - plus)) / 2);
    CHECK(r.p_two_sided == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("normal approximation tracks the exact distribution") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.3, 1.0);
  for (std::size_t n = 20; n <= 25; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> x(n), y(n, 0.0);
      for (auto& v : x) v = noise(rng);
      const auto e = wilcoxon_signed_rank(x, y, 0.05, WilcoxonMethod::Exact);
      const auto a = wilcoxon_signed_rank(x, y, 0.05, WilcoxonMethod::Normal);
      CHECK(std::abs(e.p_two_sided - a.p_two_sided) < 0.01);
      CHECK(wilcoxon_signed_rank(x, y).method == WilcoxonMethod::Exact);
    }
  }
  std::vector<double> big(30, 1.0);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<double>(i) - 10.5;
  CHECK(wilcoxon_signed_rank(big, std::vector<double>(30, 0.0)).method == WilcoxonMethod::Normal);
}
