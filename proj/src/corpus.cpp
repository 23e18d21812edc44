#include "crossum/corpus.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "crossum/porter.hpp"
#include "json.hpp"

namespace crossum {

namespace {

using json = nlohmann::json;

bool is_ascii_alpha(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return c >= 'a' && c <= 'z'; });
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string where(std::string_view source, std::size_t line) {
  std::ostringstream os;
  os << source << ":" << line << ": ";
  return os.str();
}

std::string required_string(const json& rec, const char* field, std::string_view source,
                            std::size_t line) {
  auto it = rec.find(field);
  if (it == rec.end()) throw Error(where(source, line) + "missing field '" + field + "'");
  if (!it->is_string()) throw Error(where(source, line) + "field '" + field + "' must be a string");
  return it->get<std::string>();
}

std::optional<std::vector<std::string>> optional_sentences(const json& rec, const char* field,
                                                           std::string_view source,
                                                           std::size_t line) {
  auto it = rec.find(field);
  if (it == rec.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) throw Error(where(source, line) + "field '" + field + "' must be an array");
  std::vector<std::string> out;
  for (const auto& s : *it) {
    if (!s.is_string())
      throw Error(where(source, line) + "field '" + field + "' must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

// Calls fn(line_number, record) for each nonblank line.
template <class Fn>
void for_each_record(std::istream& in, std::string_view source, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(where(source, lineno) + "malformed record: " + e.what());
    }
    if (!rec.is_object()) throw Error(where(source, lineno) + "record must be a JSON object");
    fn(lineno, rec);
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

TokenSeq tokenize(std::string_view text, TokenizeOptions options) {
  TokenSeq seq;
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  std::string current;
  std::size_t start = 0;
  bool in_token = false;

  auto flush = [&] {
    if (!in_token) return;
    if (options.stemming && is_ascii_alpha(current)) {
      // A lone "s" stems to nothing; tokens stay nonempty.
      if (auto stem = porter_stem(current); !stem.empty()) current = std::move(stem);
    }
    seq.tokens.push_back(std::move(current));
    seq.offsets.push_back(start);
    current.clear();
    in_token = false;
  };

  int32_t i = 0;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c >= 0 && u_isalnum(c)) {
      if (!in_token) {
        in_token = true;
        start = static_cast<std::size_t>(at);
      }
      const UChar32 folded = u_foldCase(c, U_FOLD_CASE_DEFAULT);
      uint8_t buf[U8_MAX_LENGTH];
      int32_t n = 0;
      U8_APPEND_UNSAFE(buf, n, folded);
      current.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
    } else {
      flush();
    }
  }
  flush();
  return seq;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '.' || c == '?' || c == '!') {
      std::size_t j = i;
      while (j < text.size() && (text[j] == '.' || text[j] == '?' || text[j] == '!')) ++j;
      if (j < text.size() && is_space(text[j])) {
        if (auto s = trim(text.substr(begin, j - begin)); !s.empty()) out.push_back(std::move(s));
        begin = j;
      }
      i = j;
    } else {
      ++i;
    }
  }
  if (auto s = trim(text.substr(begin)); !s.empty()) out.push_back(std::move(s));
  return out;
}

std::vector<std::string> Sample::document_sentences() const {
  return document_sents ? *document_sents : split_sentences(document);
}

std::vector<std::string> Sample::reference_sentences() const {
  return reference_sents ? *reference_sents : split_sentences(reference);
}

Sample Sample::truncated(std::size_t max_tokens) const {
  if (max_tokens == 0) return *this;
  Sample out = *this;
  const TokenSeq doc = tokenize(document);
  if (doc.size() > max_tokens) out.document = trim(std::string_view(document).substr(0, doc.offsets[max_tokens]));
  if (document_sents) {
    std::vector<std::string> kept;
    std::size_t budget = max_tokens;
    for (const auto& sent : *document_sents) {
      if (budget == 0) break;
      const TokenSeq t = tokenize(sent);
      if (t.size() <= budget) {
        kept.push_back(sent);
        budget -= t.size();
      } else {
        kept.push_back(trim(std::string_view(sent).substr(0, t.offsets[budget])));
        budget = 0;
      }
    }
    out.document_sents = std::move(kept);
  }
  return out;
}

Corpus::Corpus(DatasetId dataset, std::vector<Sample> samples)
    : dataset_(std::move(dataset)), samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!by_id_.emplace(samples_[i].id, i).second)
      throw Error("duplicate sample id '" + samples_[i].id + "' in dataset " + dataset_.str());
  }
}

const Sample* Corpus::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &samples_[it->second];
}

Corpus parse_corpus(std::istream& in, DatasetId dataset, std::string_view source) {
  std::vector<Sample> samples;
  std::set<std::string> seen;
  for_each_record(in, source, [&](std::size_t line, const json& rec) {
    Sample s;
    s.id = required_string(rec, "id", source, line);
    if (s.id.empty()) throw Error(where(source, line) + "empty sample id");
    s.document = required_string(rec, "document", source, line);
    s.reference = required_string(rec, "reference", source, line);
    s.document_sents = optional_sentences(rec, "document_sents", source, line);
    s.reference_sents = optional_sentences(rec, "reference_sents", source, line);
    if (tokenize(s.document).empty())
      throw Error(where(source, line) + "document of '" + s.id + "' has no tokens");
    if (tokenize(s.reference).empty())
      throw Error(where(source, line) + "reference of '" + s.id + "' has no tokens");
    if (!seen.insert(s.id).second)
      throw Error(where(source, line) + "duplicate sample id '" + s.id + "'");
    samples.push_back(std::move(s));
  });
  if (samples.empty()) throw Error(std::string(source) + ": empty corpus");
  return Corpus(std::move(dataset), std::move(samples));
}

Corpus load_corpus(const std::filesystem::path& path, DatasetId dataset) {
  auto in = open_input(path);
  return parse_corpus(in, std::move(dataset), path.string());
}

std::string OutputKey::describe() const {
  return system.str() + " (" + train_dataset.str() + " -> " + test_dataset.str() + ")";
}

std::vector<std::string> SystemOutput::sentences() const {
  return summary_sents ? *summary_sents : split_sentences(summary);
}

std::vector<SystemOutput> parse_outputs(std::istream& in, std::string_view source) {
  std::vector<SystemOutput> outputs;
  std::set<std::pair<OutputKey, std::string>> seen;
  for_each_record(in, source, [&](std::size_t line, const json& rec) {
    auto name = [&](const char* field) {
      auto v = required_string(rec, field, source, line);
      if (v.empty()) throw Error(where(source, line) + "field '" + field + "' is empty");
      return v;
    };
    SystemOutput o{
        name("id"),
        OutputKey{SystemId(name("system")), DatasetId(name("train_dataset")),
                  DatasetId(name("test_dataset"))},
        required_string(rec, "summary", source, line),
        optional_sentences(rec, "summary_sents", source, line),
    };
    if (!seen.emplace(o.key, o.sample_id).second)
      throw Error(where(source, line) + "duplicate output '" + o.sample_id + "' for " +
                  o.key.describe());
    outputs.push_back(std::move(o));
  });
  return outputs;
}

std::vector<SystemOutput> load_outputs(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_outputs(in, path.string());
}

std::string AlignmentReport::describe() const {
  std::ostringstream os;
  for (const auto& d : unknown_test_sets) os << "no corpus loaded for test dataset " << d.str() << "\n";
  for (const auto& s : slices) {
    for (const auto& id : s.orphans)
      os << s.key.describe() << ": output '" << id << "' not in test corpus\n";
    for (const auto& id : s.missing)
      os << s.key.describe() << ": sample '" << id << "' has no output\n";
  }
  return os.str();
}

AlignmentReport validate_alignment(const std::map<DatasetId, Corpus>& corpora,
                                   std::span<const SystemOutput> outputs) {
  std::map<OutputKey, std::set<std::string>> by_slice;
  for (const auto& o : outputs) by_slice[o.key].insert(o.sample_id);

  AlignmentReport report;
  std::set<DatasetId> unknown;
  for (const auto& [key, ids] : by_slice) {
    auto it = corpora.find(key.test_dataset);
    if (it == corpora.end()) {
      unknown.insert(key.test_dataset);
      continue;
    }
    const Corpus& corpus = it->second;
    AlignmentReport::Slice slice{key, {}, {}};
    for (const auto& id : ids)
      if (!corpus.find(id)) slice.orphans.push_back(id);
    for (const auto& s : corpus.samples())
      if (!ids.contains(s.id)) slice.missing.push_back(s.id);
    if (!slice.orphans.empty() || !slice.missing.empty()) report.slices.push_back(std::move(slice));
  }
  report.unknown_test_sets.assign(unknown.begin(), unknown.end());
  return report;
}

}  // namespace crossum
