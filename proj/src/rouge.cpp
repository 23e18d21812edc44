#include "crossum/rouge.hpp"

#include <algorithm>
#include <set>

#include "crossum/error.hpp"
#include "crossum/parallel.hpp"

namespace crossum {

std::size_t NgramCounts::count(const std::string& key) const {
  auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

void NgramCounts::add(std::string key) {
  ++counts_[std::move(key)];
  ++total_;
}

std::string ngram_key(std::span<const std::string> tokens) {
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) key.push_back('\x1f');
    key += tokens[i];
  }
  return key;
}

NgramCounts ngrams(std::span<const std::string> tokens, int n) {
  if (n < 1) throw Error("n-gram order must be >= 1");
  NgramCounts out;
  const auto order = static_cast<std::size_t>(n);
  if (tokens.size() < order) return out;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) out.add(ngram_key(tokens.subspan(i, order)));
  return out;
}

RougeScore RougeScore::from_hits(double hits, std::size_t candidate_total, std::size_t reference_total) {
  RougeScore s;
  s.precision = candidate_total ? hits / static_cast<double>(candidate_total) : 0.0;
  s.recall = reference_total ? hits / static_cast<double>(reference_total) : 0.0;
  s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference, int n) {
  const NgramCounts cand = ngrams(candidate, n);
  const NgramCounts ref = ngrams(reference, n);
  std::size_t overlap = 0;
  const NgramCounts& small = cand.distinct() <= ref.distinct() ? cand : ref;
  const NgramCounts& large = &small == &cand ? ref : cand;
  for (const auto& [gram, c] : small.entries()) overlap += std::min(c, large.count(gram));
  return RougeScore::from_hits(static_cast<double>(overlap), cand.total(), ref.total());
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Row over the shorter sequence.
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i] == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

std::vector<std::size_t> lcs_matched_positions(std::span<const std::string> a,
                                               std::span<const std::string> b) {
  const std::size_t rows = a.size() + 1, cols = b.size() + 1;
  std::vector<std::uint32_t> t(rows * cols, 0);
  for (std::size_t i = 1; i < rows; ++i)
    for (std::size_t j = 1; j < cols; ++j)
      t[i * cols + j] = a[i - 1] == b[j - 1] ? t[(i - 1) * cols + j - 1] + 1
                                             : std::max(t[(i - 1) * cols + j], t[i * cols + j - 1]);
  std::vector<std::size_t> hits;
  std::size_t i = a.size(), j = b.size();
  while (i > 0 && j > 0) {
    if (a[i - 1] == b[j - 1]) {
      hits.push_back(j - 1);
      --i;
      --j;
    } else if (t[(i - 1) * cols + j] >= t[i * cols + j - 1]) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(hits.begin(), hits.end());
  return hits;
}

RougeScore rouge_l_flat(std::span<const std::string> candidate, std::span<const std::string> reference) {
  return RougeScore::from_hits(static_cast<double>(lcs_length(candidate, reference)), candidate.size(),
                               reference.size());
}

RougeScore rouge_l_union(const std::vector<TokenSeq>& candidate_sents,
                         const std::vector<TokenSeq>& reference_sents) {
  std::unordered_map<std::string, std::size_t> cand_left, ref_left;
  std::size_t cand_total = 0, ref_total = 0;
  for (const auto& s : candidate_sents) {
    cand_total += s.size();
    for (const auto& t : s.tokens) ++cand_left[t];
  }
  for (const auto& s : reference_sents) {
    ref_total += s.size();
    for (const auto& t : s.tokens) ++ref_left[t];
  }

  std::size_t hits = 0;
  for (const auto& ref : reference_sents) {
    std::set<std::size_t> united;
    for (const auto& cand : candidate_sents)
      for (std::size_t pos : lcs_matched_positions(cand.view(), ref.view())) united.insert(pos);
    for (std::size_t pos : united) {
      const std::string& tok = ref.tokens[pos];
      auto c = cand_left.find(tok);
      auto r = ref_left.find(tok);
      if (c != cand_left.end() && c->second > 0 && r->second > 0) {
        --c->second;
        --r->second;
        ++hits;
      }
    }
  }
  return RougeScore::from_hits(static_cast<double>(hits), cand_total, ref_total);
}

namespace {

std::vector<TokenSeq> tokenize_all(const std::vector<std::string>& sentences, TokenizeOptions opts) {
  std::vector<TokenSeq> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(tokenize(s, opts));
  return out;
}

}  // namespace

SampleRouge score_sample(const SystemOutput& output, const Sample& sample, const RougeConfig& config) {
  const TokenizeOptions opts{config.stemming};
  const TokenSeq cand = tokenize(output.summary, opts);
  const TokenSeq ref = tokenize(sample.reference, opts);

  SampleRouge s;
  s.rouge1 = rouge_n(cand.view(), ref.view(), 1);
  s.rouge2 = rouge_n(cand.view(), ref.view(), 2);

  const bool union_mode =
      config.l_mode == RougeLMode::Union ||
      (config.l_mode == RougeLMode::Auto && output.summary_sents && sample.reference_sents);
  if (union_mode)
    s.rougeL = rouge_l_union(tokenize_all(output.sentences(), opts),
                             tokenize_all(sample.reference_sentences(), opts));
  else
    s.rougeL = rouge_l_flat(cand.view(), ref.view());
  return s;
}

std::vector<ScoreRecord> score_corpus(std::span<const SystemOutput> outputs, const Corpus& corpus,
                                      const RougeConfig& config, unsigned jobs) {
  std::vector<const SystemOutput*> mine;
  for (const auto& o : outputs) {
    if (o.key.test_dataset != corpus.dataset()) continue;
    if (!corpus.find(o.sample_id))
      throw Error("sample '" + o.sample_id + "' missing from corpus " + corpus.dataset().str());
    mine.push_back(&o);
  }

  std::vector<SampleRouge> scores(mine.size());
  parallel_for(mine.size(), jobs, [&](std::size_t i) {
    scores[i] = score_sample(*mine[i], *corpus.find(mine[i]->sample_id), config);
  });

  std::vector<ScoreRecord> records;
  records.reserve(3 * mine.size());
  for (std::size_t i = 0; i < mine.size(); ++i) {
    const auto& o = *mine[i];
    records.push_back({o.sample_id, o.key, MetricId(MetricKind::Rouge1), scores[i].rouge1.f1, 1.0, {}});
    records.push_back({o.sample_id, o.key, MetricId(MetricKind::Rouge2), scores[i].rouge2.f1, 1.0, {}});
    records.push_back({o.sample_id, o.key, MetricId(MetricKind::RougeL), scores[i].rougeL.f1, 1.0, {}});
  }
  return records;
}

double corpus_mean(std::span<const ScoreRecord> records, const MetricId& metric) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    if (r.metric != metric) continue;
    sum += r.value;
    ++n;
  }
  if (n == 0) throw Error("no records for metric " + metric.name());
  return sum / static_cast<double>(n);
}

}  // namespace crossum
