#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Data-parallel inner loops. Each kernel has a scalar reference and, on
// x86-64, an AVX2 variant; the dispatcher picks one at first use. Both
// variants produce identical results.
namespace crossum::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;

/// Currently selected instruction set. Defaults to the best available one;
/// CROSSUM_ISA=scalar in the environment forces the scalar path.
Isa active_isa() noexcept;

/// Overrides the selection (tests). Throws crossum::Error when unavailable.
void force_isa(Isa isa);

struct RunMax {
  std::int32_t length = 0;
  std::int32_t position = 0;  // earliest doc position reaching `length`
};

/// One row of the common-run recurrence used for longest-match search:
///   cur[j] = token == doc[j] ? prev[j + 1] + 1 : 0   for j < doc.size()
///   cur[doc.size()] = 0
/// prev and cur hold doc.size() + 1 entries. Returns the row maximum and the
/// first position holding it (length 0 when the token never occurs).
RunMax match_run_row(std::int32_t token, std::span<const std::int32_t> doc,
                     std::span<const std::int32_t> prev, std::span<std::int32_t> cur);

/// dst[k] = src[k] + (k >= shift ? src[k - shift] : 0); dst.size() == src.size().
void shifted_add(std::span<const std::uint64_t> src, std::span<std::uint64_t> dst, std::size_t shift);

namespace scalar {
RunMax match_run_row(std::int32_t token, std::span<const std::int32_t> doc,
                     std::span<const std::int32_t> prev, std::span<std::int32_t> cur);
void shifted_add(std::span<const std::uint64_t> src, std::span<std::uint64_t> dst, std::size_t shift);
}  // namespace scalar

namespace avx2 {
RunMax match_run_row(std::int32_t token, std::span<const std::int32_t> doc,
                     std::span<const std::int32_t> prev, std::span<std::int32_t> cur);
void shifted_add(std::span<const std::uint64_t> src, std::span<std::uint64_t> dst, std::size_t shift);
}  // namespace avx2

}  // namespace crossum::kernels
