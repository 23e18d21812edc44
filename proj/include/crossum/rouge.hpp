#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "crossum/corpus.hpp"
#include "crossum/record.hpp"

namespace crossum {

/// Multiset of contiguous n-grams. Keys are the tokens joined by '\x1f'.
class NgramCounts {
 public:
  std::size_t total() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return counts_.size(); }
  std::size_t count(const std::string& key) const;
  const std::unordered_map<std::string, std::size_t>& entries() const noexcept { return counts_; }

  void add(std::string key);

 private:
  std::unordered_map<std::string, std::size_t> counts_;
  std::size_t total_ = 0;
};

std::string ngram_key(std::span<const std::string> tokens);

/// All contiguous n-grams with multiplicity. n == 0 throws.
NgramCounts ngrams(std::span<const std::string> tokens, int n);

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  /// Zero denominators give zero; f1 = 0 when precision + recall = 0.
  static RougeScore from_hits(double hits, std::size_t candidate_total, std::size_t reference_total);
};

RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference, int n);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

/// Positions in `b` matched by one longest common subsequence of a and b.
/// Backtracking prefers the diagonal on a match, then the cell above.
std::vector<std::size_t> lcs_matched_positions(std::span<const std::string> a,
                                               std::span<const std::string> b);

enum class RougeLMode { Auto, Flat, Union };

RougeScore rouge_l_flat(std::span<const std::string> candidate, std::span<const std::string> reference);

/// Summary-level LCS: each reference sentence takes the union of its tokens
/// hit by an LCS with any candidate sentence. A union token scores only while
/// unused copies of it remain on both sides, so hits never exceed either
/// side's token count.
RougeScore rouge_l_union(const std::vector<TokenSeq>& candidate_sents,
                         const std::vector<TokenSeq>& reference_sents);

struct RougeConfig {
  bool stemming = true;
  RougeLMode l_mode = RougeLMode::Auto;
};

struct SampleRouge {
  RougeScore rouge1, rouge2, rougeL;
};

/// ROUGE-1/2/L for one output against one reference. In Auto mode the union
/// variant runs when both sides carry pre-split sentences.
SampleRouge score_sample(const SystemOutput& output, const Sample& sample, const RougeConfig& config);

/// Per-sample F1 records (rouge1, rouge2, rougeL) for the outputs tested on
/// `corpus`, in output order; outputs for other test sets are skipped. A
/// sample id absent from the corpus throws. Fingerprints are left empty.
std::vector<ScoreRecord> score_corpus(std::span<const SystemOutput> outputs, const Corpus& corpus,
                                      const RougeConfig& config, unsigned jobs = 1);

/// Arithmetic mean of the record values for one metric (0 records throws).
double corpus_mean(std::span<const ScoreRecord> records, const MetricId& metric);

}  // namespace crossum
