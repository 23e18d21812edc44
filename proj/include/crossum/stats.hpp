#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "crossum/crossgrid.hpp"

namespace crossum {

enum class WilcoxonMethod { Auto, Exact, Normal };

std::string_view method_name(WilcoxonMethod m);

/// Largest effective sample size for which Auto uses the exact distribution.
constexpr std::size_t kExactWilcoxonLimit = 25;

struct TestResult {
  std::size_t n_effective = 0;
  double statistic = 0.0;  // W = min(W+, W-)
  double w_plus = 0.0;
  double w_minus = 0.0;
  double p_two_sided = 1.0;
  WilcoxonMethod method = WilcoxonMethod::Exact;
  bool significant = false;  // p < alpha
};

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
/// are dropped, tied magnitudes get average ranks. Auto picks the exact null
/// distribution for n_effective <= 25 and the tie-corrected normal
/// approximation with 0.5 continuity correction above that.
TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y, double alpha = 0.05,
                                WilcoxonMethod method = WilcoxonMethod::Auto);

enum class Pairing {
  PerCell,            // the N^2 raw cells
  PerCellNormalized,  // the N^2 normalized cells
  PerTestDataset,     // the N column averages
};

std::string_view pairing_name(Pairing p);
Pairing parse_pairing(std::string_view name);

TestResult compare_systems(const CrossMatrix& a, const CrossMatrix& b, Pairing pairing, double alpha = 0.05);

}  // namespace crossum
