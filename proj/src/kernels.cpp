#include "crossum/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "crossum/error.hpp"

namespace crossum::kernels {

#if !defined(CROSSUM_HAVE_AVX2)
namespace avx2 {
RunMax match_run_row(std::int32_t, std::span<const std::int32_t>, std::span<const std::int32_t>,
                     std::span<std::int32_t>) {
  throw Error("AVX2 kernels not built");
}
void shifted_add(std::span<const std::uint64_t>, std::span<std::uint64_t>, std::size_t) {
  throw Error("AVX2 kernels not built");
}
}  // namespace avx2
#endif

namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("CROSSUM_ISA"); env && std::string(env) == "scalar")
    return Isa::Scalar;
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) noexcept {
  if (isa == Isa::Scalar) return true;
#if defined(CROSSUM_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() noexcept { return selected().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) throw Error(std::string("instruction set unavailable: ") + std::string(isa_name(isa)));
  selected().store(isa, std::memory_order_relaxed);
}

RunMax match_run_row(std::int32_t token, std::span<const std::int32_t> doc,
                     std::span<const std::int32_t> prev, std::span<std::int32_t> cur) {
  if (active_isa() == Isa::Avx2) return avx2::match_run_row(token, doc, prev, cur);
  return scalar::match_run_row(token, doc, prev, cur);
}

void shifted_add(std::span<const std::uint64_t> src, std::span<std::uint64_t> dst, std::size_t shift) {
  if (active_isa() == Isa::Avx2) return avx2::shifted_add(src, dst, shift);
  scalar::shifted_add(src, dst, shift);
}

}  // namespace crossum::kernels
