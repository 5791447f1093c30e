#include <immintrin.h>

#include "rsm/simd.hpp"

namespace rsm::simd::avx2 {

namespace {

inline void two_sum(__m256d a, __m256d b, __m256d& s, __m256d& e) noexcept {
  s = _mm256_add_pd(a, b);
  const __m256d bb = _mm256_sub_pd(s, a);
  e = _mm256_add_pd(_mm256_sub_pd(a, _mm256_sub_pd(s, bb)), _mm256_sub_pd(b, bb));
}

}  // namespace

double sum(std::span<const double> xs) noexcept {
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  const std::size_t body = xs.size() & ~std::size_t{3};
  for (std::size_t i = 0; i < body; i += 4) {
    __m256d e;
    two_sum(s, _mm256_loadu_pd(xs.data() + i), s, e);
    c = _mm256_add_pd(c, e);
  }
  alignas(32) double sl[4], cl[4];
  _mm256_store_pd(sl, s);
  _mm256_store_pd(cl, c);
  return detail::fold_lanes(sl, cl, xs.subspan(body), {}, false);
}

double dot(std::span<const double> xs, std::span<const double> ys) noexcept {
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  const std::size_t n = xs.size() < ys.size() ? xs.size() : ys.size();
  const std::size_t body = n & ~std::size_t{3};
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs.data() + i);
    const __m256d y = _mm256_loadu_pd(ys.data() + i);
    const __m256d p = _mm256_mul_pd(x, y);
    const __m256d pe = _mm256_fmsub_pd(x, y, p);
    __m256d e;
    two_sum(s, p, s, e);
    c = _mm256_add_pd(c, _mm256_add_pd(e, pe));
  }
  alignas(32) double sl[4], cl[4];
  _mm256_store_pd(sl, s);
  _mm256_store_pd(cl, c);
  return detail::fold_lanes(sl, cl, xs.subspan(body, n - body), ys.subspan(body, n - body), true);
}

}  // namespace rsm::simd::avx2
