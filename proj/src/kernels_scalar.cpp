#include "crossum/kernels.hpp"

namespace crossum::kernels::scalar {

RunMax match_run_row(std::int32_t token, std::span<const std::int32_t> doc,
                     std::span<const std::int32_t> prev, std::span<std::int32_t> cur) {
  RunMax best;
  const std::size_t m = doc.size();
  for (std::size_t j = 0; j < m; ++j) {
    const std::int32_t v = doc[j] == token ? prev[j + 1] + 1 : 0;
    cur[j] = v;
    if (v > best.length) {
      best.length = v;
      best.position = static_cast<std::int32_t>(j);
    }
  }
  cur[m] = 0;
  return best;
}

void shifted_add(std::span<const std::uint64_t> src, std::span<std::uint64_t> dst, std::size_t shift) {
  const std::size_t n = src.size();
  for (std::size_t k = 0; k < n; ++k) dst[k] = src[k] + (k >= shift ? src[k - shift] : 0);
}

}  // namespace crossum::kernels::scalar
