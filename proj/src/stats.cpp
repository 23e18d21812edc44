#include "crossum/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "crossum/error.hpp"
#include "crossum/kernels.hpp"

namespace crossum {

namespace {

struct SignedRanks {
  std::vector<std::uint32_t> doubled;  // 2 * rank, integral even with ties
  std::vector<bool> positive;
  double tie_term = 0.0;  // sum over tie groups of t^3 - t
};

SignedRanks rank_differences(std::span<const double> d) {
  std::vector<std::size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return std::fabs(d[a]) < std::fabs(d[b]); });

  SignedRanks out;
  out.doubled.resize(d.size());
  out.positive.resize(d.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && std::fabs(d[idx[j]]) == std::fabs(d[idx[i]])) ++j;
    // Ranks i+1..j average to (i+1+j)/2.
    const auto doubled = static_cast<std::uint32_t>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) out.doubled[idx[k]] = doubled;
    const double t = static_cast<double>(j - i);
    out.tie_term += t * t * t - t;
    i = j;
  }
  for (std::size_t k = 0; k < d.size(); ++k) out.positive[k] = d[k] > 0;
  return out;
}

// P-value from the exact null distribution of the doubled signed-rank sum.
double exact_p(const std::vector<std::uint32_t>& doubled, std::uint64_t w_doubled) {
  const std::size_t max_sum = std::accumulate(doubled.begin(), doubled.end(), std::size_t{0});
  std::vector<std::uint64_t> counts(max_sum + 1, 0), next(max_sum + 1, 0);
  counts[0] = 1;
  for (std::uint32_t r : doubled) {
    kernels::shifted_add(counts, next, r);
    std::swap(counts, next);
  }
  std::uint64_t tail = 0;
  for (std::size_t s = 0; s <= max_sum && s <= w_doubled; ++s) tail += counts[s];
  const double total = std::ldexp(1.0, static_cast<int>(doubled.size()));
  return std::min(1.0, 2.0 * static_cast<double>(tail) / total);
}

double normal_p(std::size_t n, double w, double tie_term) {
  const double nn = static_cast<double>(n);
  const double mean = nn * (nn + 1) / 4.0;
  const double var = nn * (nn + 1) * (2 * nn + 1) / 24.0 - tie_term / 48.0;
  if (var <= 0) return 1.0;
  const double z = std::max(0.0, std::fabs(w - mean) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace

std::string_view method_name(WilcoxonMethod m) {
  switch (m) {
    case WilcoxonMethod::Exact: return "exact";
    case WilcoxonMethod::Normal: return "normal-approx";
    case WilcoxonMethod::Auto: break;
  }
  return "auto";
}

TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y, double alpha,
                                WilcoxonMethod method) {
  if (x.size() != y.size()) throw Error("wilcoxon: samples differ in length");
  if (x.empty()) throw Error("wilcoxon: empty samples");

  std::vector<double> d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = x[i] - y[i];
    if (!std::isfinite(v)) throw Error("wilcoxon: non-finite difference");
    if (v != 0.0) d.push_back(v);
  }

  TestResult r;
  r.n_effective = d.size();
  if (method == WilcoxonMethod::Auto)
    method = d.size() <= kExactWilcoxonLimit ? WilcoxonMethod::Exact : WilcoxonMethod::Normal;
  r.method = method;
  if (d.empty()) return r;

  const SignedRanks ranks = rank_differences(d);
  std::uint64_t plus2 = 0, minus2 = 0;
  for (std::size_t k = 0; k < d.size(); ++k) (ranks.positive[k] ? plus2 : minus2) += ranks.doubled[k];
  r.w_plus = static_cast<double>(plus2) / 2.0;
  r.w_minus = static_cast<double>(minus2) / 2.0;
  r.statistic = std::min(r.w_plus, r.w_minus);

  if (method == WilcoxonMethod::Exact) {
    if (d.size() > 62) throw Error("wilcoxon: exact distribution limited to 62 observations");
    r.p_two_sided = exact_p(ranks.doubled, std::min(plus2, minus2));
  } else {
    r.p_two_sided = normal_p(d.size(), r.statistic, ranks.tie_term);
  }
  r.significant = r.p_two_sided < alpha;
  return r;
}

std::string_view pairing_name(Pairing p) {
  switch (p) {
    case Pairing::PerCell: return "per-cell";
    case Pairing::PerCellNormalized: return "per-cell-normalized";
    case Pairing::PerTestDataset: return "per-test-dataset";
  }
  return "per-cell";
}

Pairing parse_pairing(std::string_view name) {
  for (Pairing p : {Pairing::PerCell, Pairing::PerCellNormalized, Pairing::PerTestDataset})
    if (pairing_name(p) == name) return p;
  throw Error("unknown pairing '" + std::string(name) + "'");
}

TestResult compare_systems(const CrossMatrix& a, const CrossMatrix& b, Pairing pairing, double alpha) {
  if (a.order() != b.order()) throw Error("cannot compare matrices with different dataset orders");
  switch (pairing) {
    case Pairing::PerCell:
      return wilcoxon_signed_rank(a.values(), b.values(), alpha);
    case Pairing::PerCellNormalized:
      return wilcoxon_signed_rank(normalize(a).values(), normalize(b).values(), alpha);
    case Pairing::PerTestDataset:
      return wilcoxon_signed_rank(a.column_averages(), b.column_averages(), alpha);
  }
  throw Error("unknown pairing");
}

}  // namespace crossum
