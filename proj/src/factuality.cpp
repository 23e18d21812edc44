#include "crossum/factuality.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "crossum/error.hpp"
#include "json.hpp"

namespace crossum {

namespace {

using json = nlohmann::json;

std::string at_line(std::string_view source, std::size_t line) {
  std::ostringstream os;
  os << source << ":" << line << ": ";
  return os.str();
}

struct Tally {
  std::size_t consistent = 0;
  std::size_t total = 0;
};

// (key, sample id) -> counts, in sorted order.
std::map<std::pair<OutputKey, std::string>, Tally> tally(const VerdictSet& set) {
  std::map<std::pair<OutputKey, std::string>, Tally> out;
  for (const auto& v : set.verdicts) {
    auto& t = out[{v.key, v.sample_id}];
    ++t.total;
    if (v.consistent) ++t.consistent;
  }
  return out;
}

}  // namespace

VerdictSet parse_verdicts(std::istream& in, std::string_view source) {
  VerdictSet set;
  std::set<std::tuple<OutputKey, std::string, std::size_t>> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(at_line(source, lineno) + "malformed record: " + e.what());
    }
    try {
      SentenceVerdict v{
          rec.at("id").get<std::string>(),
          OutputKey{SystemId(rec.at("system").get<std::string>()),
                    DatasetId(rec.at("train_dataset").get<std::string>()),
                    DatasetId(rec.at("test_dataset").get<std::string>())},
          0,
          rec.at("consistent").get<bool>(),
      };
      const auto& idx = rec.at("sentence_index");
      if (!idx.is_number_integer() || idx.get<long long>() < 0)
        throw Error("sentence_index must be a nonnegative integer");
      v.sentence_index = idx.get<std::size_t>();
      if (!seen.emplace(v.key, v.sample_id, v.sentence_index).second)
        throw Error("duplicate verdict for '" + v.sample_id + "' sentence " +
                    std::to_string(v.sentence_index) + " of " + v.key.describe());
      set.verdicts.push_back(std::move(v));
    } catch (const json::exception& e) {
      throw Error(at_line(source, lineno) + "bad verdict record: " + e.what());
    } catch (const Error& e) {
      throw Error(at_line(source, lineno) + e.what());
    }
  }
  if (set.verdicts.empty()) set.warnings.push_back(std::string(source) + ": no verdicts");
  return set;
}

VerdictSet load_verdicts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_verdicts(in, path.string());
}

void check_verdicts(const VerdictSet& verdicts, std::span<const SystemOutput> outputs) {
  std::map<std::pair<OutputKey, std::string>, std::size_t> sentence_counts;
  for (const auto& o : outputs) sentence_counts[{o.key, o.sample_id}] = o.sentences().size();
  for (const auto& v : verdicts.verdicts) {
    auto it = sentence_counts.find({v.key, v.sample_id});
    if (it == sentence_counts.end())
      throw Error("verdict references unknown output '" + v.sample_id + "' of " + v.key.describe());
    if (v.sentence_index >= it->second)
      throw Error("verdict sentence_index " + std::to_string(v.sentence_index) + " out of range for '" +
                  v.sample_id + "' of " + v.key.describe() + " (" + std::to_string(it->second) +
                  " sentences)");
  }
}

FactualityCell factuality_score(const VerdictSet& verdicts, const OutputKey& scope) {
  FactualityCell cell;
  double macro_sum = 0.0;
  std::size_t samples = 0;
  for (const auto& [key, t] : tally(verdicts)) {
    if (key.first != scope) continue;
    cell.consistent += t.consistent;
    cell.total += t.total;
    macro_sum += static_cast<double>(t.consistent) / static_cast<double>(t.total);
    ++samples;
  }
  if (cell.total == 0) throw Error("no factuality verdicts for " + scope.describe());
  cell.pooled = static_cast<double>(cell.consistent) / static_cast<double>(cell.total);
  cell.macro = macro_sum / static_cast<double>(samples);
  return cell;
}

std::vector<ScoreRecord> factuality_records(const VerdictSet& verdicts) {
  std::vector<ScoreRecord> out;
  for (const auto& [key, t] : tally(verdicts)) {
    out.push_back({key.second, key.first, MetricId(MetricKind::Factuality),
                   static_cast<double>(t.consistent) / static_cast<double>(t.total),
                   static_cast<double>(t.total), {}});
  }
  return out;
}

}  // namespace crossum
