#include "crossum/store.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "crossum/error.hpp"
#include "json.hpp"

namespace crossum {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kScores = "scores.jsonl";
constexpr const char* kIndex = "index.json";

ojson to_json(const ScoreRecord& r) {
  ojson j;
  j["sample_id"] = r.sample_id;
  j["system"] = r.key.system.str();
  j["train_dataset"] = r.key.train_dataset.str();
  j["test_dataset"] = r.key.test_dataset.str();
  j["metric"] = r.metric.name();
  j["value"] = r.value;
  j["weight"] = r.weight;
  j["fingerprint"] = r.fingerprint;
  return j;
}

ScoreRecord from_json(const ojson& j) {
  return ScoreRecord{
      j.at("sample_id").get<std::string>(),
      OutputKey{SystemId(j.at("system").get<std::string>()), DatasetId(j.at("train_dataset").get<std::string>()),
                DatasetId(j.at("test_dataset").get<std::string>())},
      MetricId::parse(j.at("metric").get<std::string>()),
      j.at("value").get<double>(),
      j.contains("weight") ? j.at("weight").get<double>() : 1.0,
      j.at("fingerprint").get<std::string>(),
  };
}

}  // namespace

Aggregation aggregation_for(const MetricId& metric) {
  return metric.kind() == MetricKind::Factuality ? Aggregation::Pooled : Aggregation::Mean;
}

std::string_view aggregation_name(Aggregation a) { return a == Aggregation::Pooled ? "pooled" : "mean"; }

ScoreStore ScoreStore::open(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  ScoreStore store;
  store.dir_ = dir;
  std::ifstream in(dir / kScores, std::ios::binary);
  std::string line;
  std::size_t lineno = 0;
  std::set<CellKey> touched;
  while (in && std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      ScoreRecord r = from_json(ojson::parse(line));
      touched.insert(CellKey{r.key, r.metric, r.fingerprint});
      store.insert(r);
    } catch (const std::exception& e) {
      throw Error((dir / kScores).string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  store.reaggregate(touched);
  return store;
}

void ScoreStore::insert(const ScoreRecord& r) {
  if (!std::isfinite(r.value) || !std::isfinite(r.weight) || r.weight <= 0)
    throw Error("non-finite or nonpositive score for '" + r.sample_id + "'");
  CellKey cell{r.key, r.metric, r.fingerprint};
  if (!keys_.emplace(cell, r.sample_id).second)
    throw Error("duplicate score record for '" + r.sample_id + "' " + r.metric.name() + " of " +
                r.key.describe());
  members_[cell].push_back(records_.size());
  records_.push_back(r);
}

void ScoreStore::put_records(std::span<const ScoreRecord> records) {
  // Validate the whole batch before touching state.
  std::set<RecordKey> batch;
  for (const auto& r : records) {
    RecordKey k{CellKey{r.key, r.metric, r.fingerprint}, r.sample_id};
    if (keys_.contains(k) || !batch.insert(k).second)
      throw Error("duplicate score record for '" + r.sample_id + "' " + r.metric.name() + " of " +
                  r.key.describe());
    if (!std::isfinite(r.value) || !std::isfinite(r.weight) || r.weight <= 0)
      throw Error("non-finite or nonpositive score for '" + r.sample_id + "'");
  }
  std::set<CellKey> touched;
  for (const auto& r : records) {
    touched.insert(CellKey{r.key, r.metric, r.fingerprint});
    insert(r);
  }
  reaggregate(touched);

  if (dir_ && !records.empty()) {
    std::ofstream out(*dir_ / kScores, std::ios::binary | std::ios::app);
    if (!out) throw Error("cannot write " + (*dir_ / kScores).string());
    for (const auto& r : records) out << to_json(r).dump() << '\n';
    if (!out) throw Error("write failed: " + (*dir_ / kScores).string());
    write_index();
  }
}

void ScoreStore::reaggregate(const std::set<CellKey>& touched) {
  for (const auto& cell : touched) {
    std::vector<const ScoreRecord*> rs;
    for (std::size_t i : members_.at(cell)) rs.push_back(&records_[i]);
    // Sum in sample-id order so the aggregate ignores insertion order.
    std::sort(rs.begin(), rs.end(), [](auto* a, auto* b) { return a->sample_id < b->sample_id; });
    CellAggregate agg;
    double sum = 0.0, weighted = 0.0;
    for (const auto* r : rs) {
      sum += r->value;
      weighted += r->value * r->weight;
      agg.weight += r->weight;
    }
    agg.count = rs.size();
    agg.mean = sum / static_cast<double>(agg.count);
    agg.pooled = weighted / agg.weight;
    cells_[cell] = agg;
  }
}

void ScoreStore::write_index() const {
  ojson cells = ojson::array();
  for (const auto& [k, agg] : cells_) {
    ojson c;
    c["system"] = k.key.system.str();
    c["train_dataset"] = k.key.train_dataset.str();
    c["test_dataset"] = k.key.test_dataset.str();
    c["metric"] = k.metric.name();
    c["fingerprint"] = k.fingerprint;
    c["count"] = agg.count;
    c["mean"] = agg.mean;
    c["pooled"] = agg.pooled;
    c["weight"] = agg.weight;
    cells.push_back(std::move(c));
  }
  const auto tmp = *dir_ / (std::string(kIndex) + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << ojson{{"cells", cells}}.dump(1) << '\n';
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, *dir_ / kIndex);
}

std::optional<CellAggregate> ScoreStore::get_cell(const CellKey& key) const {
  auto it = cells_.find(key);
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

std::vector<SystemId> ScoreStore::systems(const MetricId& metric, const std::string& fingerprint) const {
  std::set<SystemId> out;
  for (const auto& [k, agg] : cells_)
    if (k.metric == metric && k.fingerprint == fingerprint) out.insert(k.key.system);
  return {out.begin(), out.end()};
}

}  // namespace crossum
