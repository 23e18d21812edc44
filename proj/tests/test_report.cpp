#include <regex>

#include "crossum/error.hpp"
#include "crossum/report.hpp"
#include "doctest.h"

using namespace crossum;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

std::vector<DatasetId> names(std::initializer_list<const char*> xs) {
  std::vector<DatasetId> out;
  for (const char* x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("half-up rounding of printed table values") {
  CHECK(round_half_up(43.5, 0) == "44");
  CHECK(round_half_up(93.576, 0) == "94");
  CHECK(round_half_up(54.75, 0) == "55");
  CHECK(round_half_up(84.43, 0) == "84");
  CHECK(round_half_up(0.125, 2) == "0.13");
  CHECK(round_half_up(2.5, 0) == "3");
  CHECK(round_half_up(-2.5, 0) == "-3");
  CHECK(round_half_up(-0.004, 2) == "0.00");
  // 1.005 is stored just below the half, so it rounds down.
  CHECK(round_half_up(1.005, 2) == "1.00");
  CHECK(round_half_up(97.264, 1) == "97.3");
  CHECK(format_number(0.1, -1) == "0.1");
  CHECK(format_number(1.0 / 3, 3) == "0.333");
}

TEST_CASE("matrix csv layout and round trip") {
  const CrossMatrix m(names({"X", "Y"}), {48, 40, 41, 45});
  const std::string csv = matrix_csv(m, 1);
  CHECK(csv ==
        "train\\test,X,Y,avg\n"
        "X,48.0,40.0,44.0\n"
        "Y,41.0,45.0,43.0\n"
        "avg,44.5,42.5,43.5\n");
  const CrossMatrix back = parse_matrix_csv(matrix_csv(m));
  CHECK(back.order() == m.order());
  CHECK(back.values() == m.values());
  CHECK(parse_matrix_csv("train\\test,X,Y\nX,1,2\nY,3,4\n").at(1, 0) == 3.0);
  CHECK_THROWS_AS(parse_matrix_csv("train\\test,X,Y\nX,1,2\nZ,3,4\n"), Error);
  CHECK_THROWS_AS(parse_matrix_csv("train\\test,X,Y\nX,1,oops\nY,3,4\n"), Error);
}

TEST_CASE("holistic csv") {
  const CrossMatrix m(names({"X", "Y"}), {48, 40, 41, 45});
  const Holistic h = holistic(m);
  CHECK(h.stiffness == 43.5);
  CHECK(h.in_dataset == 46.5);
  const std::string csv = holistic_csv("A", "rouge1", h, 0);
  CHECK(csv.find("44") != std::string::npos);
  CHECK(csv.find("94") != std::string::npos);
}

TEST_CASE("heatmap structure and colors") {
  const CrossMatrix d(names({"X", "Y", "Z"}), {0, -2, 4, 1, 0, -4, 2, 3, 0});
  const std::string svg = heatmap_svg(d, "A vs B");
  CHECK(count(svg, "class=\"cell\"") == 9);
  CHECK(count(svg, "class=\"label col\"") == 3);
  CHECK(count(svg, "class=\"label row\"") == 3);
  CHECK(count(svg, "class=\"value\"") == 9);
  CHECK(count(svg, "fill=\"#ffffff\"") == 3);
  CHECK(count(svg, "fill=\"#d62728\"") == 1);  // most negative cell
  CHECK(count(svg, "fill=\"#808080\"") == 1);  // most positive cell
  CHECK(svg.find(">-2.00<") != std::string::npos);
  const CrossMatrix bad(names({"X", "Y"}), {0, 0, 0, 0});
  CHECK(count(heatmap_svg(bad, "t"), "fill=\"#ffffff\"") == 4);
}

TEST_CASE("ranking csv") {
  CHECK(ranking_csv({{"b", 2.0}, {"a", 1.5}}, 1) == "rank,system,value\n1,b,2.0\n2,a,1.5\n");
}

TEST_CASE("profiles csv and json agree") {
  BiasProfile p{DatasetId("cnn"), {0.8, 2}, {2.5, 2}, {}, {}, {0.25, 2}, 2, 3};
  p.novelty[1] = {1.0 / 3, 2};
  p.repetition[2] = {0.1, 2};
  BiasProfile q = p;
  q.dataset = DatasetId("xsum");
  q.coverage.mean = 0.5;
  const std::vector<BiasProfile> ps{p, q};
  const std::string csv = profiles_csv(ps);
  CHECK(csv.rfind("dataset,coverage,copy_length,novelty,fusion,repetition\n", 0) == 0);
  const auto parsed = parse_profiles_csv(csv);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed.at("cnn") == std::array<double, 5>{0.8, 2.5, 1.0 / 3, 0.25, 0.1});
  CHECK(parsed.at("xsum")[0] == 0.5);
  const std::string json = profiles_json(ps);
  CHECK(json.find("\"cnn\"") != std::string::npos);
  CHECK(json.find("0.3333333333333333") != std::string::npos);
}

TEST_CASE("significance rows merge by key") {
  TestResult t;
  t.n_effective = 4;
  t.statistic = 0;
  t.p_two_sided = 0.125;
  const std::vector<SignificanceRow> first{{"A", "B", "rouge1", "raw", t}, {"A", "B", "rouge1", "normalized", t}};
  const std::string once = merge_significance("", first);
  CHECK(count(once, "\n") == 3);
  CHECK(once.find("A,B,rouge1,normalized,4,0,0.125,exact,not significant") != std::string::npos);
  t.p_two_sided = 0.01;
  t.significant = true;
  const std::vector<SignificanceRow> second{{"A", "B", "rouge1", "raw", t}, {"A", "C", "rouge1", "raw", t}};
  const std::string twice = merge_significance(once, second);
  CHECK(count(twice, "\n") == 4);
  CHECK(twice.find("A,B,rouge1,raw,4,0,0.01,exact,significant") != std::string::npos);
  CHECK(merge_significance(twice, second) == twice);
}

TEST_CASE("filenames are sanitized") {
  CHECK(sanitize_filename("BART/large v2") == "BART_large_v2");
}
