#include "crossum/bias.hpp"

#include <unordered_map>
#include <unordered_set>

#include "crossum/error.hpp"
#include "crossum/kernels.hpp"
#include "crossum/parallel.hpp"
#include "crossum/rouge.hpp"

namespace crossum {

namespace {

void check_order(int n) {
  if (n < 1 || n > kMaxNgramOrder) throw Error("n-gram order must be in 1..4");
}

std::unordered_map<std::string, std::size_t> counts_of(const TokenSeq& seq) {
  std::unordered_map<std::string, std::size_t> c;
  for (const auto& t : seq.tokens) ++c[t];
  return c;
}

// Clipped unigram overlap of `target` against the pooled counts.
std::size_t overlap(const std::unordered_map<std::string, std::size_t>& target,
                    const std::unordered_map<std::string, std::size_t>& pooled) {
  std::size_t hits = 0;
  for (const auto& [tok, c] : target) {
    auto it = pooled.find(tok);
    if (it != pooled.end()) hits += std::min(c, it->second);
  }
  return hits;
}

}  // namespace

std::vector<Fragment> extract_fragments(std::span<const std::int32_t> summary,
                                        std::span<const std::int32_t> document) {
  const std::size_t s = summary.size(), m = document.size();
  std::vector<kernels::RunMax> best(s);
  std::vector<std::int32_t> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = s; i-- > 0;) {
    best[i] = kernels::match_run_row(summary[i], document, prev, cur);
    std::swap(prev, cur);
  }

  std::vector<Fragment> out;
  for (std::size_t i = 0; i < s;) {
    const auto len = static_cast<std::size_t>(best[i].length);
    if (len == 0) {
      ++i;
      continue;
    }
    out.push_back({i, len, static_cast<std::size_t>(best[i].position)});
    i += len;
  }
  return out;
}

std::vector<Fragment> extract_fragments(std::span<const std::string> summary,
                                        std::span<const std::string> document) {
  std::unordered_map<std::string_view, std::int32_t> ids;
  auto intern = [&](std::span<const std::string> seq) {
    std::vector<std::int32_t> out;
    out.reserve(seq.size());
    for (const auto& t : seq) out.push_back(ids.emplace(t, static_cast<std::int32_t>(ids.size())).first->second);
    return out;
  };
  const auto doc = intern(document);
  const auto sum = intern(summary);
  return extract_fragments(std::span<const std::int32_t>(sum), std::span<const std::int32_t>(doc));
}

std::optional<double> coverage(std::span<const Fragment> fragments, std::size_t summary_len) {
  if (summary_len == 0) return std::nullopt;
  std::size_t copied = 0;
  for (const auto& f : fragments) copied += f.length;
  return static_cast<double>(copied) / static_cast<double>(summary_len);
}

double copy_length(std::span<const Fragment> fragments) {
  if (fragments.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& f : fragments) total += f.length;
  return static_cast<double>(total) / static_cast<double>(fragments.size());
}

std::optional<double> novelty(std::span<const std::string> summary, std::span<const std::string> document,
                              int n) {
  check_order(n);
  const NgramCounts sum = ngrams(summary, n);
  if (sum.total() == 0) return std::nullopt;
  const NgramCounts doc = ngrams(document, n);
  std::size_t novel = 0;
  for (const auto& [gram, c] : sum.entries())
    if (doc.count(gram) == 0) novel += c;
  return static_cast<double>(novel) / static_cast<double>(sum.total());
}

std::optional<double> repetition(std::span<const std::string> summary, int n) {
  check_order(n);
  const NgramCounts sum = ngrams(summary, n);
  if (sum.total() == 0) return std::nullopt;
  return static_cast<double>(sum.total() - sum.distinct()) / static_cast<double>(sum.total());
}

FusionResult fusion_score(const std::vector<TokenSeq>& summary_sents,
                          const std::vector<TokenSeq>& document_sents, const FusionParams& params) {
  FusionResult result;
  if (summary_sents.empty() || document_sents.empty()) return result;
  if (params.max_support < 1) throw Error("fusion max_support must be >= 1");

  std::vector<std::unordered_map<std::string, std::size_t>> doc_counts;
  doc_counts.reserve(document_sents.size());
  for (const auto& d : document_sents) doc_counts.push_back(counts_of(d));

  std::size_t fused = 0;
  for (const auto& sent : summary_sents) {
    const auto target = counts_of(sent);
    const double len = static_cast<double>(sent.size());
    std::unordered_map<std::string, std::size_t> pooled;
    std::vector<bool> used(document_sents.size(), false);
    std::size_t current = 0, support = 0;

    while (support < params.max_support) {
      std::size_t best_doc = document_sents.size(), best_hits = 0;
      for (std::size_t d = 0; d < document_sents.size(); ++d) {
        if (used[d]) continue;
        auto trial = pooled;
        for (const auto& [tok, c] : doc_counts[d]) trial[tok] += c;
        const std::size_t hits = overlap(target, trial);
        if (best_doc == document_sents.size() || hits > best_hits) {
          best_doc = d;
          best_hits = hits;
        }
      }
      if (best_doc == document_sents.size()) break;
      const double gain = len > 0 ? static_cast<double>(best_hits - current) / len : 0.0;
      if (support > 0 && gain < params.gain_threshold) break;
      used[best_doc] = true;
      for (const auto& [tok, c] : doc_counts[best_doc]) pooled[tok] += c;
      current = best_hits;
      ++support;
    }
    result.support.push_back(support);
    if (support >= 2 && support <= 3) ++fused;
  }
  result.score = static_cast<double>(fused) / static_cast<double>(summary_sents.size());
  return result;
}

SampleBias measure_bias(const std::string& summary, const std::vector<std::string>& summary_sents,
                        const std::string& document, const std::vector<std::string>& document_sents,
                        const FusionParams& fusion) {
  const TokenSeq sum = tokenize(summary);
  const TokenSeq doc = tokenize(document);

  SampleBias out;
  const auto fragments = extract_fragments(sum.view(), doc.view());
  out.coverage = coverage(fragments, sum.size());
  if (!sum.empty()) out.copy_length = copy_length(fragments);
  for (int n = 1; n <= kMaxNgramOrder; ++n) {
    out.novelty[static_cast<std::size_t>(n - 1)] = novelty(sum.view(), doc.view(), n);
    out.repetition[static_cast<std::size_t>(n - 1)] = repetition(sum.view(), n);
  }

  std::vector<TokenSeq> ss, ds;
  for (const auto& s : summary_sents) ss.push_back(tokenize(s));
  for (const auto& d : document_sents) ds.push_back(tokenize(d));
  out.fusion = fusion_score(ss, ds, fusion).score;
  return out;
}

namespace {

struct Accumulator {
  double sum = 0.0;
  std::size_t count = 0;

  void add(const std::optional<double>& v) {
    if (!v) return;
    sum += *v;
    ++count;
  }
  MeanField result() const { return {count ? sum / static_cast<double>(count) : 0.0, count}; }
};

}  // namespace

BiasProfile profile_dataset(const Corpus& corpus, const BiasConfig& config, unsigned jobs) {
  if (corpus.size() == 0) throw Error("cannot profile an empty corpus");
  check_order(config.novelty_n);
  check_order(config.repetition_n);

  std::vector<SampleBias> per_sample(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t i) {
    const Sample s = corpus.samples()[i].truncated(config.max_doc_tokens);
    per_sample[i] = measure_bias(s.reference, s.reference_sentences(), s.document, s.document_sentences(),
                                 config.fusion);
  });

  Accumulator cov, copy, fus;
  std::array<Accumulator, kMaxNgramOrder> nov, rep;
  for (const auto& m : per_sample) {
    cov.add(m.coverage);
    copy.add(m.copy_length);
    fus.add(m.fusion);
    for (std::size_t k = 0; k < kMaxNgramOrder; ++k) {
      nov[k].add(m.novelty[k]);
      rep[k].add(m.repetition[k]);
    }
  }

  BiasProfile p{corpus.dataset(), cov.result(), copy.result(), {}, {}, fus.result(),
                config.novelty_n, config.repetition_n};
  for (std::size_t k = 0; k < kMaxNgramOrder; ++k) {
    p.novelty[k] = nov[k].result();
    p.repetition[k] = rep[k].result();
  }
  return p;
}

}  // namespace crossum
