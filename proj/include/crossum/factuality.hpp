#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "crossum/corpus.hpp"
#include "crossum/record.hpp"

namespace crossum {

/// Verdict of an external consistency checker on one summary sentence.
struct SentenceVerdict {
  std::string sample_id;
  OutputKey key;
  std::size_t sentence_index = 0;
  bool consistent = false;
};

struct VerdictSet {
  std::vector<SentenceVerdict> verdicts;
  std::vector<std::string> warnings;
};

/// JSON-lines verdicts. Duplicate (output, sentence_index) keys throw; an
/// empty file yields an empty set plus a warning.
VerdictSet load_verdicts(const std::filesystem::path& path);
VerdictSet parse_verdicts(std::istream& in, std::string_view source = "<stream>");

/// Every verdict must name a loaded output and a sentence index below that
/// output's sentence count.
void check_verdicts(const VerdictSet& verdicts, std::span<const SystemOutput> outputs);

struct FactualityCell {
  std::size_t consistent = 0;
  std::size_t total = 0;
  double pooled = 0.0;  // consistent / total over all sentences in scope
  double macro = 0.0;   // unweighted mean of per-sample proportions
};

/// Aggregates one (system, train, test) cell. An empty scope throws.
FactualityCell factuality_score(const VerdictSet& verdicts, const OutputKey& scope);

/// Per-sample proportions, weighted by the sample's verdict count, ordered by
/// (key, sample id). Fingerprints are left empty.
std::vector<ScoreRecord> factuality_records(const VerdictSet& verdicts);

}  // namespace crossum
