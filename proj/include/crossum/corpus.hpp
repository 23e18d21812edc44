#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crossum/ids.hpp"

namespace crossum {

/// Lowercased alphanumeric tokens plus the byte offset of each token in the
/// source text.
struct TokenSeq {
  std::vector<std::string> tokens;
  std::vector<std::size_t> offsets;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  std::span<const std::string> view() const noexcept { return tokens; }
};

struct TokenizeOptions {
  bool stemming = false;
};

/// Maximal runs of alphanumeric code points after simple case folding.
/// With stemming on, Porter stemming is applied to all-ASCII-alphabetic
/// tokens only. Invalid UTF-8 bytes act as separators.
TokenSeq tokenize(std::string_view text, TokenizeOptions options = {});

/// Splits after runs of '.', '?' or '!' that are followed by whitespace.
/// Returned spans are trimmed; blank pieces are dropped.
std::vector<std::string> split_sentences(std::string_view text);

struct Sample {
  std::string id;
  std::string document;
  std::string reference;
  std::optional<std::vector<std::string>> document_sents;
  std::optional<std::vector<std::string>> reference_sents;

  /// Pre-split sentences when the record carries them, else the splitter.
  std::vector<std::string> document_sentences() const;
  std::vector<std::string> reference_sentences() const;

  /// Copy whose document keeps only its first `max_tokens` tokens (0 = all).
  Sample truncated(std::size_t max_tokens) const;
};

class Corpus {
 public:
  Corpus(DatasetId dataset, std::vector<Sample> samples);

  const DatasetId& dataset() const noexcept { return dataset_; }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }

  /// nullptr when the id is not part of the corpus.
  const Sample* find(std::string_view id) const;

 private:
  DatasetId dataset_;
  std::vector<Sample> samples_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// Reads a JSON-lines corpus. Errors carry the 1-based line number.
Corpus load_corpus(const std::filesystem::path& path, DatasetId dataset);
Corpus parse_corpus(std::istream& in, DatasetId dataset, std::string_view source = "<stream>");

/// (system, train dataset, test dataset): one cell of a cross-dataset grid.
struct OutputKey {
  SystemId system;
  DatasetId train_dataset;
  DatasetId test_dataset;

  friend auto operator<=>(const OutputKey&, const OutputKey&) = default;
  friend bool operator==(const OutputKey&, const OutputKey&) = default;
  std::string describe() const;
};

struct SystemOutput {
  std::string sample_id;
  OutputKey key;
  std::string summary;
  std::optional<std::vector<std::string>> summary_sents;

  std::vector<std::string> sentences() const;
};

std::vector<SystemOutput> load_outputs(const std::filesystem::path& path);
std::vector<SystemOutput> parse_outputs(std::istream& in, std::string_view source = "<stream>");

struct AlignmentReport {
  struct Slice {
    OutputKey key;
    std::vector<std::string> orphans;  // output ids absent from the test corpus
    std::vector<std::string> missing;  // corpus ids without an output
  };
  std::vector<Slice> slices;                 // only slices with problems
  std::vector<DatasetId> unknown_test_sets;  // test datasets with no corpus loaded

  bool empty() const noexcept { return slices.empty() && unknown_test_sets.empty(); }
  std::string describe() const;
};

AlignmentReport validate_alignment(const std::map<DatasetId, Corpus>& corpora,
                                   std::span<const SystemOutput> outputs);

}  // namespace crossum
