#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "crossum/record.hpp"

namespace crossum {

/// How per-sample records fold into one cell value.
enum class Aggregation { Mean, Pooled };

/// Factuality pools over sentences; everything else is a per-sample mean.
Aggregation aggregation_for(const MetricId& metric);
std::string_view aggregation_name(Aggregation a);

struct CellKey {
  OutputKey key;
  MetricId metric;
  std::string fingerprint;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellAggregate {
  std::size_t count = 0;
  double mean = 0.0;    // unweighted mean of values
  double pooled = 0.0;  // sum(value * weight) / sum(weight)
  double weight = 0.0;

  double value(Aggregation a) const noexcept { return a == Aggregation::Pooled ? pooled : mean; }
};

/// Per-sample score records plus cell aggregates. File-backed stores keep an
/// append-only `scores.jsonl` and a derived `index.json` of cell aggregates.
/// Single writer.
class ScoreStore {
 public:
  ScoreStore() = default;

  /// Opens (creating if needed) a store directory.
  static ScoreStore open(const std::filesystem::path& dir);

  /// Rejects non-finite values and keys already present. Persists when
  /// file-backed; records are appended in the given order.
  void put_records(std::span<const ScoreRecord> records);

  /// std::nullopt when no record exists for the cell.
  std::optional<CellAggregate> get_cell(const CellKey& key) const;
  bool has_cell(const CellKey& key) const { return cells_.contains(key); }

  /// Systems with at least one cell for (metric, fingerprint), sorted.
  std::vector<SystemId> systems(const MetricId& metric, const std::string& fingerprint) const;

  const std::vector<ScoreRecord>& records() const noexcept { return records_; }

 private:
  using RecordKey = std::tuple<CellKey, std::string>;

  void insert(const ScoreRecord& r);
  void reaggregate(const std::set<CellKey>& touched);
  void write_index() const;

  std::optional<std::filesystem::path> dir_;
  std::vector<ScoreRecord> records_;
  std::set<RecordKey> keys_;
  std::map<CellKey, std::vector<std::size_t>> members_;
  std::map<CellKey, CellAggregate> cells_;
};

}  // namespace crossum
