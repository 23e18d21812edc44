#include "cli_util.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Fixture {
  fs::path dir = cli::scratch("cli");
  fs::path log = dir / "log.txt";
  Fixture() { cli::write_toy(dir); }
  ~Fixture() { fs::remove_all(dir); }

  int run(const std::string& args) { return cli::run(args, log); }
  std::string q(const std::string& name) const { return "\"" + (dir / name).string() + "\""; }
  std::string corpora() const {
    return "--corpus alpha=" + q("alpha.jsonl") + " --corpus beta=" + q("beta.jsonl");
  }
};

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE_FIXTURE(Fixture, "profile writes csv and json") {
  REQUIRE(run("--out " + q("") + " profile alpha=" + q("alpha.jsonl") + " beta=" + q("beta.jsonl")) == 0);
  const std::string csv = cli::read(dir / "profiles.csv");
  CHECK(csv.rfind("dataset,coverage,copy_length,novelty,fusion,repetition\n", 0) == 0);
  CHECK(lines(csv) == 3);
  CHECK(fs::exists(dir / "profiles.json"));
}

TEST_CASE_FIXTURE(Fixture, "score, matrix, compare and rank on a toy grid") {
  const std::string store = q("store");
  REQUIRE(run("score " + corpora() + " --outputs " + q("outputs.jsonl") + " --store " + store) == 0);
  const std::string records = cli::read(dir / "store" / "scores.jsonl");
  // 2 systems x 4 cells x 2 samples x 3 metrics
  CHECK(lines(records) == 48);
  CHECK(records.find("\"value\":1.0") != std::string::npos);
  CHECK(records.find("\"value\":0") == std::string::npos);

  SUBCASE("rescoring the same configuration is a no-op") {
    REQUIRE(run("score " + corpora() + " --outputs " + q("outputs.jsonl") + " --store " + store) == 0);
    CHECK(cli::read(dir / "store" / "scores.jsonl") == records);
  }
  SUBCASE("a different configuration adds new cells") {
    REQUIRE(run("--stemming off score " + corpora() + " --outputs " + q("outputs.jsonl") + " --store " + store) == 0);
    CHECK(lines(cli::read(dir / "store" / "scores.jsonl")) == 96);
  }
  SUBCASE("bias metrics") {
    REQUIRE(run("score " + corpora() + " --outputs " + q("outputs.jsonl") + " --store " + store +
                " --metrics coverage,novelty_1") == 0);
    CHECK(lines(cli::read(dir / "store" / "scores.jsonl")) == 48 + 32);
  }
  SUBCASE("matrix and holistic") {
    REQUIRE(run("--out " + q("") + " --datasets alpha,beta --precision 2 matrix --store " + store +
                " --system S1 --metric rouge1 --normalized") == 0);
    CHECK(cli::read(dir / "matrix_S1_rouge1.csv") ==
          "train\\test,alpha,beta,avg\nalpha,1.00,1.00,1.00\nbeta,1.00,1.00,1.00\navg,1.00,1.00,1.00\n");
    CHECK(fs::exists(dir / "matrix_S1_rouge1.norm.csv"));
    CHECK(fs::exists(dir / "matrix_S1_rouge1.json"));
    CHECK(cli::read(dir / "holistic_S1_rouge1.csv").find("S1,rouge1,1.00,100.00,1.00") != std::string::npos);
  }
  SUBCASE("missing dataset in the order is reported") {
    CHECK(run("--out " + q("") + " --datasets alpha,gamma matrix --store " + store + " --system S1 --metric rouge1") != 0);
    CHECK(cli::read(log).find("missing") != std::string::npos);
  }
  SUBCASE("identical systems compare to zero with p = 1") {
    REQUIRE(run("--out " + q("") + " --datasets alpha,beta compare --store " + store +
                " --system-a S1 --system-b S2 --metric rouge1") == 0);
    const std::string sig = cli::read(dir / "significance.csv");
    CHECK(sig.find("S1,S2,rouge1,per-cell,0,0,1,exact,not significant") != std::string::npos);
    CHECK(fs::exists(dir / "diff_S1_vs_S2.svg"));
    CHECK(fs::exists(dir / "diff_S1_vs_S2.norm.svg"));
  }
  SUBCASE("rank") {
    REQUIRE(run("--out " + q("") + " --datasets alpha,beta rank --store " + store + " --metric rouge1") == 0);
    CHECK(cli::read(dir / "ranking_rouge1_in-dataset.csv") == "rank,system,value\n1,S1,1\n2,S2,1\n");
  }
}

TEST_CASE_FIXTURE(Fixture, "misaligned outputs fail before scoring") {
  cli::write(dir / "partial.jsonl",
             "{\"id\":\"a1\",\"system\":\"S\",\"train_dataset\":\"alpha\",\"test_dataset\":\"alpha\",\"summary\":\"x\"}\n");
  CHECK(run("score " + corpora() + " --outputs " + q("partial.jsonl") + " --store " + q("store")) != 0);
  CHECK(cli::read(log).find("a2") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "store" / "scores.jsonl"));
}

TEST_CASE_FIXTURE(Fixture, "matrix and compare from csv grids") {
  cli::write(dir / "A.csv", "train\\test,X,Y\nX,48,40\nY,41,45\n");
  cli::write(dir / "B.csv", "train\\test,X,Y\nX,61,43\nY,46,69\n");
  REQUIRE(run("--out " + q("") + " --precision 0 matrix --from-csv " + q("A.csv") + " --system A --metric rouge1") == 0);
  CHECK(cli::read(dir / "holistic_A_rouge1.csv") == "system,metric,stiffness,stableness,in_dataset_mean\nA,rouge1,44,94,47\n");
  REQUIRE(run("--out " + q("") + " --precision 0 matrix --from-csv " + q("B.csv") + " --system B --metric rouge1") == 0);
  CHECK(cli::read(dir / "holistic_B_rouge1.csv").find("B,rouge1,55,84,") != std::string::npos);

  REQUIRE(run("--out " + q("") + " compare --csv-a " + q("A.csv") + " --csv-b " + q("B.csv") +
              " --system-a A --system-b B --metric rouge1") == 0);
  const std::string sig = cli::read(dir / "significance.csv");
  CHECK(sig.find("A,B,rouge1,per-cell,4,0,0.125,exact,not significant") != std::string::npos);
  CHECK(cli::read(dir / "diff_A_vs_B.norm.csv").find("X,0,") != std::string::npos);

  REQUIRE(run("--out " + q("") + " rank --matrix A=" + q("A.csv") + " --matrix B=" + q("B.csv") +
              " --metric rouge1 --measure stableness --precision 1") == 0);
  CHECK(cli::read(dir / "ranking_rouge1_stableness.csv") == "rank,system,value\n1,A,93.6\n2,B,84.4\n");
}

TEST_CASE_FIXTURE(Fixture, "bad arguments exit nonzero") {
  CHECK(run("matrix --system A --metric rouge1") != 0);
  CHECK(run("--out " + q("") + " matrix --from-csv " + q("nope.csv") + " --system A --metric bogus") != 0);
  CHECK(run("--novelty-n 7 profile a=" + q("alpha.jsonl")) != 0);
}
