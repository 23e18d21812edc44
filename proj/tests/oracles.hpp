#pragma once

// Brute-force reference implementations. Deliberately naive and independent
// of the library code paths they check.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;

inline Tokens random_tokens(std::mt19937_64& rng, std::size_t max_len, int alphabet, std::size_t min_len = 0) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  Tokens out(len(rng));
  for (auto& t : out) t = std::string(1, static_cast<char>('a' + sym(rng)));
  return out;
}

inline bool same_window(const Tokens& a, std::size_t i, const Tokens& b, std::size_t j, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k)
    if (a[i + k] != b[j + k]) return false;
  return true;
}

// Clipped n-gram overlap by counting every window pair.
inline std::size_t clipped_overlap(const Tokens& cand, const Tokens& ref, std::size_t n) {
  if (cand.size() < n || ref.size() < n) return 0;
  std::size_t total = 0;
  std::vector<bool> seen(cand.size() - n + 1, false);
  for (std::size_t i = 0; i + n <= cand.size(); ++i) {
    if (seen[i]) continue;
    std::size_t in_cand = 0, in_ref = 0;
    for (std::size_t k = i; k + n <= cand.size(); ++k)
      if (same_window(cand, i, cand, k, n)) {
        seen[k] = true;
        ++in_cand;
      }
    for (std::size_t k = 0; k + n <= ref.size(); ++k)
      if (same_window(cand, i, ref, k, n)) ++in_ref;
    total += std::min(in_cand, in_ref);
  }
  return total;
}

inline bool is_subsequence(const Tokens& sub, const Tokens& seq) {
  std::size_t j = 0;
  for (const auto& t : seq)
    if (j < sub.size() && sub[j] == t) ++j;
  return j == sub.size();
}

// LCS by enumerating every subsequence of `a` (|a| <= ~16).
inline std::size_t lcs_by_enumeration(const Tokens& a, const Tokens& b) {
  std::size_t best = 0;
  const std::uint32_t subsets = 1u << a.size();
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    Tokens sub;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (mask & (1u << i)) sub.push_back(a[i]);
    if (is_subsequence(sub, b)) best = size;
  }
  return best;
}

inline double f1(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

struct Frag {
  std::size_t summary_start, length, document_start;
};

// Greedy fragments: at each summary position try every document start and
// every length.
inline std::vector<Frag> fragments_brute_force(const Tokens& summary, const Tokens& document) {
  std::vector<Frag> out;
  std::size_t i = 0;
  while (i < summary.size()) {
    std::size_t best_len = 0, best_pos = 0;
    for (std::size_t j = 0; j < document.size(); ++j) {
      for (std::size_t len = 1; i + len <= summary.size() && j + len <= document.size(); ++len) {
        if (!same_window(summary, i, document, j, len)) break;
        if (len > best_len) {
          best_len = len;
          best_pos = j;
        }
      }
    }
    if (best_len == 0) {
      ++i;
    } else {
      out.push_back({i, best_len, best_pos});
      i += best_len;
    }
  }
  return out;
}

// Two-sided Wilcoxon p-value by visiting all 2^n sign assignments: the share
// whose min(W+, W-) is at most the observed one. Ranks are passed doubled.
inline double wilcoxon_enumerated_p(const std::vector<std::uint32_t>& doubled_ranks, std::uint64_t observed_doubled) {
  const std::size_t n = doubled_ranks.size();
  std::uint64_t total_rank = 0;
  for (auto r : doubled_ranks) total_rank += r;
  std::uint64_t hits = 0;
  const std::uint64_t assignments = 1ull << n;
  for (std::uint64_t mask = 0; mask < assignments; ++mask) {
    std::uint64_t plus = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1ull << k)) plus += doubled_ranks[k];
    if (std::min(plus, total_rank - plus) <= observed_doubled) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(assignments);
}

// Average ranks of |d| (doubled), by counting smaller and equal magnitudes.
inline std::vector<std::uint32_t> doubled_average_ranks(const std::vector<double>& d) {
  std::vector<std::uint32_t> out;
  for (double x : d) {
    std::uint32_t less = 0, equal = 0;
    for (double y : d) {
      if (std::abs(y) < std::abs(x)) ++less;
      if (std::abs(y) == std::abs(x)) ++equal;
    }
    // ranks less+1 .. less+equal, average doubled = 2*less + equal + 1
    out.push_back(2 * less + equal + 1);
  }
  return out;
}

}  // namespace oracle
