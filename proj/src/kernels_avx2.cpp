#include <immintrin.h>

#include "crossum/kernels.hpp"

namespace crossum::kernels::avx2 {

namespace {

std::int32_t reduce_max_i32x8(__m256i v) {
  __m128i m = _mm_max_epi32(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
  m = _mm_max_epi32(m, _mm_shuffle_epi32(m, _MM_SHUFFLE(1, 0, 3, 2)));
  m = _mm_max_epi32(m, _mm_shuffle_epi32(m, _MM_SHUFFLE(2, 3, 0, 1)));
  return _mm_cvtsi128_si32(m);
}

}  // namespace

RunMax match_run_row(std::int32_t token, std::span<const std::int32_t> doc,
                     std::span<const std::int32_t> prev, std::span<std::int32_t> cur) {
  const std::size_t m = doc.size();
  const __m256i tok = _mm256_set1_epi32(token);
  const __m256i one = _mm256_set1_epi32(1);
  __m256i vmax = _mm256_setzero_si256();

  std::size_t j = 0;
  for (; j + 8 <= m; j += 8) {
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(doc.data() + j));
    const __m256i p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev.data() + j + 1));
    const __m256i eq = _mm256_cmpeq_epi32(d, tok);
    const __m256i v = _mm256_and_si256(eq, _mm256_add_epi32(p, one));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(cur.data() + j), v);
    vmax = _mm256_max_epi32(vmax, v);
  }
  std::int32_t best = reduce_max_i32x8(vmax);
  for (; j < m; ++j) {
    const std::int32_t v = doc[j] == token ? prev[j + 1] + 1 : 0;
    cur[j] = v;
    if (v > best) best = v;
  }
  cur[m] = 0;

  RunMax out;
  if (best == 0) return out;
  out.length = best;
  const __m256i target = _mm256_set1_epi32(best);
  std::size_t k = 0;
  for (; k + 8 <= m; k += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cur.data() + k));
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(v, target)));
    if (mask != 0) {
      out.position = static_cast<std::int32_t>(k) + __builtin_ctz(static_cast<unsigned>(mask));
      return out;
    }
  }
  for (; k < m; ++k) {
    if (cur[k] == best) {
      out.position = static_cast<std::int32_t>(k);
      break;
    }
  }
  return out;
}

void shifted_add(std::span<const std::uint64_t> src, std::span<std::uint64_t> dst, std::size_t shift) {
  const std::size_t n = src.size();
  const std::size_t head = shift < n ? shift : n;
  for (std::size_t k = 0; k < head; ++k) dst[k] = src[k];
  std::size_t k = head;
  for (; k + 4 <= n; k += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + k));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + k - shift));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + k), _mm256_add_epi64(a, b));
  }
  for (; k < n; ++k) dst[k] = src[k] + src[k - shift];
}

}  // namespace crossum::kernels::avx2
