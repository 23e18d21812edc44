#include <cmath>
#include <filesystem>
#include <random>

#include <unistd.h>

#include "crossum/error.hpp"
#include "crossum/store.hpp"
#include "doctest.h"

using namespace crossum;
namespace fs = std::filesystem;

namespace {

const OutputKey kKey{SystemId("A"), DatasetId("cnn"), DatasetId("xsum")};
const MetricId kR1(MetricKind::Rouge1);

ScoreRecord rec(std::string id, double v, std::string fp = "fp1", double w = 1.0) {
  return {std::move(id), kKey, kR1, v, w, std::move(fp)};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("crossum_store_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("cell aggregate is the mean of its records") {
  ScoreStore s;
  const std::vector<ScoreRecord> rs{rec("1", 0.2), rec("2", 0.4), rec("3", 0.9)};
  s.put_records(rs);
  const auto cell = s.get_cell({kKey, kR1, "fp1"});
  REQUIRE(cell.has_value());
  CHECK(cell->count == 3);
  CHECK(cell->mean == doctest::Approx(0.5));
  CHECK(cell->value(aggregation_for(kR1)) == cell->mean);
  CHECK_FALSE(s.get_cell({kKey, kR1, "fp2"}).has_value());
  CHECK_FALSE(s.get_cell({kKey, MetricId(MetricKind::Rouge2), "fp1"}).has_value());
  CHECK(s.systems(kR1, "fp1") == std::vector<SystemId>{SystemId("A")});
  CHECK(s.systems(kR1, "nope").empty());
}

TEST_CASE("factuality cells pool by weight") {
  ScoreStore s;
  const MetricId f(MetricKind::Factuality);
  CHECK(aggregation_for(f) == Aggregation::Pooled);
  const std::vector<ScoreRecord> rs{{"1", kKey, f, 1.0, 1.0, "x"}, {"2", kKey, f, 1.0 / 3, 3.0, "x"}};
  s.put_records(rs);
  const auto cell = s.get_cell({kKey, f, "x"});
  CHECK(cell->pooled == doctest::Approx(0.5));
  CHECK(cell->mean == doctest::Approx(2.0 / 3));
}

TEST_CASE("put_records rejects bad batches atomically") {
  ScoreStore s;
  const std::vector<ScoreRecord> ok{rec("1", 0.5)};
  s.put_records(ok);
  const std::vector<ScoreRecord> dup{rec("2", 0.1), rec("1", 0.3)};
  CHECK_THROWS_WITH_AS(s.put_records(dup), doctest::Contains("duplicate"), Error);
  CHECK(s.records().size() == 1);
  const std::vector<ScoreRecord> nan{rec("9", NAN)};
  CHECK_THROWS_AS(s.put_records(nan), Error);
  // Same sample under another fingerprint is a different record.
  const std::vector<ScoreRecord> other{rec("1", 0.7, "fp2")};
  CHECK_NOTHROW(s.put_records(other));
}

TEST_CASE("file-backed store round-trips values bit-exactly") {
  const fs::path dir = fresh_dir("roundtrip");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ScoreRecord> rs;
  for (int i = 0; i < 50; ++i) rs.push_back(rec("s" + std::to_string(i), u(rng)));
  rs.push_back(rec("tiny", 5e-324));
  rs.push_back(rec("third", 1.0 / 3));
  {
    ScoreStore s = ScoreStore::open(dir);
    s.put_records(std::span<const ScoreRecord>(rs).first(20));
    s.put_records(std::span<const ScoreRecord>(rs).subspan(20));
  }
  CHECK(fs::exists(dir / "scores.jsonl"));
  CHECK(fs::exists(dir / "index.json"));
  const ScoreStore again = ScoreStore::open(dir);
  REQUIRE(again.records().size() == rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    CHECK(again.records()[i].sample_id == rs[i].sample_id);
    CHECK(again.records()[i].value == rs[i].value);
    CHECK(again.records()[i].key == rs[i].key);
    CHECK(again.records()[i].metric == rs[i].metric);
  }
  ScoreStore mem;
  mem.put_records(rs);
  CHECK(again.get_cell({kKey, kR1, "fp1"})->mean == mem.get_cell({kKey, kR1, "fp1"})->mean);
  fs::remove_all(dir);
}

TEST_CASE("aggregates do not depend on insertion order") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ScoreRecord> rs;
  for (int i = 0; i < 200; ++i) rs.push_back(rec("s" + std::to_string(i), u(rng)));
  ScoreStore a;
  a.put_records(rs);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(rs.begin(), rs.end(), rng);
    ScoreStore b;
    b.put_records(std::span<const ScoreRecord>(rs).first(77));
    b.put_records(std::span<const ScoreRecord>(rs).subspan(77));
    CHECK(b.get_cell({kKey, kR1, "fp1"})->mean == a.get_cell({kKey, kR1, "fp1"})->mean);
  }
}
