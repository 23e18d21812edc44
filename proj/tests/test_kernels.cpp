#include <random>
#include <vector>

#include "crossum/kernels.hpp"
#include "doctest.h"

using namespace crossum::kernels;

TEST_CASE("dispatcher reports a usable instruction set") {
  CHECK(isa_available(Isa::Scalar));
  CHECK(isa_available(active_isa()));
  MESSAGE("active kernels: " << isa_name(active_isa()));
}

TEST_CASE("match_run_row scalar reference") {
  const std::vector<std::int32_t> doc{1, 2, 1, 1};
  const std::vector<std::int32_t> prev{0, 3, 0, 5, 0};
  std::vector<std::int32_t> cur(5, -1);
  const RunMax r = scalar::match_run_row(1, doc, prev, cur);
  CHECK(cur == std::vector<std::int32_t>{4, 0, 6, 1, 0});
  CHECK(r.length == 6);
  CHECK(r.position == 2);

  const RunMax none = scalar::match_run_row(9, doc, prev, cur);
  CHECK(none.length == 0);
}

TEST_CASE("AVX2 kernels equal the scalar reference") {
  if (!isa_available(Isa::Avx2)) {
    MESSAGE("AVX2 not available; skipping equivalence");
    return;
  }
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t m = std::uniform_int_distribution<std::size_t>(0, 70)(rng);
    std::uniform_int_distribution<std::int32_t> sym(0, 3), run(0, 9);
    std::vector<std::int32_t> doc(m), prev(m + 1);
    for (auto& d : doc) d = sym(rng);
    for (auto& p : prev) p = run(rng);
    prev[m] = 0;
    const std::int32_t tok = sym(rng);
    std::vector<std::int32_t> a(m + 1, -7), b(m + 1, -9);
    const RunMax ra = scalar::match_run_row(tok, doc, prev, a);
    const RunMax rb = avx2::match_run_row(tok, doc, prev, b);
    REQUIRE(a == b);
    REQUIRE(ra.length == rb.length);
    REQUIRE(ra.position == rb.position);
  }
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 90)(rng);
    const std::size_t shift = std::uniform_int_distribution<std::size_t>(0, n + 3)(rng);
    std::vector<std::uint64_t> src(n);
    for (auto& s : src) s = rng() >> 2;
    std::vector<std::uint64_t> a(n), b(n);
    scalar::shifted_add(src, a, shift);
    avx2::shifted_add(src, b, shift);
    REQUIRE(a == b);
  }
}

TEST_CASE("force_isa switches the dispatched path") {
  const Isa before = active_isa();
  force_isa(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  force_isa(before);
}
