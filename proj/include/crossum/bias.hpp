#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crossum/corpus.hpp"

namespace crossum {

/// A run of summary tokens copied verbatim from the document.
struct Fragment {
  std::size_t summary_start = 0;
  std::size_t length = 0;
  std::size_t document_start = 0;

  friend bool operator==(const Fragment&, const Fragment&) = default;
};

/// Greedy left-to-right extraction: at each summary position take the longest
/// document match (earliest document position on ties), skip it, or advance
/// by one token when nothing matches.
std::vector<Fragment> extract_fragments(std::span<const std::string> summary,
                                        std::span<const std::string> document);

/// Same on interned token ids.
std::vector<Fragment> extract_fragments(std::span<const std::int32_t> summary,
                                        std::span<const std::int32_t> document);

/// Undefined for an empty summary.
std::optional<double> coverage(std::span<const Fragment> fragments, std::size_t summary_len);

/// Mean fragment length; 0 without fragments.
double copy_length(std::span<const Fragment> fragments);

/// Share of summary n-grams (with multiplicity) whose type never occurs in the
/// document. Undefined when the summary has no n-grams.
std::optional<double> novelty(std::span<const std::string> summary, std::span<const std::string> document,
                              int n);

/// 1 - distinct/total over summary n-grams. Undefined when total is 0.
std::optional<double> repetition(std::span<const std::string> summary, int n);

struct FusionParams {
  std::size_t max_support = 3;
  double gain_threshold = 0.02;  // absolute ROUGE-1 recall gain
};

struct FusionResult {
  std::optional<double> score;        // fused sentences / summary sentences
  std::vector<std::size_t> support;   // one entry per summary sentence
};

/// For each summary sentence, greedily picks document sentences maximizing the
/// ROUGE-1 recall of the summary sentence against the pooled picks. The best
/// first pick is always taken; later picks stop once the gain drops below
/// the threshold. A sentence is fused when 2 <= support <= 3.
FusionResult fusion_score(const std::vector<TokenSeq>& summary_sents,
                          const std::vector<TokenSeq>& document_sents, const FusionParams& params);

constexpr int kMaxNgramOrder = 4;

struct BiasConfig {
  FusionParams fusion;
  int novelty_n = 2;
  int repetition_n = 3;
  std::size_t max_doc_tokens = 0;  // 0 keeps full documents
};

/// Measures for one (summary, document) pair; unset fields are undefined.
struct SampleBias {
  std::optional<double> coverage;
  std::optional<double> copy_length;
  std::array<std::optional<double>, kMaxNgramOrder> novelty;     // index n - 1
  std::array<std::optional<double>, kMaxNgramOrder> repetition;  // index n - 1
  std::optional<double> fusion;
};

/// Token-level measures use the whole texts, fusion uses the sentence lists.
/// Stemming is off throughout.
SampleBias measure_bias(const std::string& summary, const std::vector<std::string>& summary_sents,
                        const std::string& document, const std::vector<std::string>& document_sents,
                        const FusionParams& fusion);

/// Mean over the samples where the field is defined.
struct MeanField {
  double mean = 0.0;
  std::size_t count = 0;
};

struct BiasProfile {
  DatasetId dataset;
  MeanField coverage;
  MeanField copy_length;
  std::array<MeanField, kMaxNgramOrder> novelty;
  std::array<MeanField, kMaxNgramOrder> repetition;
  MeanField fusion;
  int novelty_n = 2;
  int repetition_n = 3;

  const MeanField& selected_novelty() const { return novelty[static_cast<std::size_t>(novelty_n - 1)]; }
  const MeanField& selected_repetition() const {
    return repetition[static_cast<std::size_t>(repetition_n - 1)];
  }
};

/// Reference-vs-document measures averaged over the corpus.
BiasProfile profile_dataset(const Corpus& corpus, const BiasConfig& config, unsigned jobs = 1);

}  // namespace crossum
