#include "kernels_impl.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define MECSIM_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#else
#define MECSIM_HAVE_AVX2_BUILD 0
#endif

#include <cmath>

namespace mecsim::kernels::detail {

#if MECSIM_HAVE_AVX2_BUILD

bool avx2_compiled() { return true; }

// No FMA anywhere below: each lane performs the same mul/add/sqrt sequence
// as the scalar kernel, so elementwise results match it bit for bit.

void batch_distance_avx2(const double* xs, const double* ys, std::size_t n,
                         double x0, double y0, double* out) {
  const __m256d vx0 = _mm256_set1_pd(x0);
  const __m256d vy0 = _mm256_set1_pd(y0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx0);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy0);
    const __m256d sum = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(sum));
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - x0;
    const double dy = ys[i] - y0;
    out[i] = std::sqrt(dx * dx + dy * dy);
  }
}

double sum_squares_pair_avx2(const double* q, const double* h, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vq = _mm256_loadu_pd(q + i);
    const __m256d vh = _mm256_loadu_pd(h + i);
    acc = _mm256_add_pd(acc, _mm256_add_pd(_mm256_mul_pd(vq, vq), _mm256_mul_pd(vh, vh)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    total += q[i] * q[i] + h[i] * h[i];
  }
  return total;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) {
    y[i] += a * x[i];
  }
}

void scale_avx2(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
  }
  for (; i < n; ++i) {
    x[i] *= a;
  }
}

#else  // !MECSIM_HAVE_AVX2_BUILD

bool avx2_compiled() { return false; }

void batch_distance_avx2(const double* xs, const double* ys, std::size_t n,
                         double x0, double y0, double* out) {
  batch_distance_scalar(xs, ys, n, x0, y0, out);
}

double sum_squares_pair_avx2(const double* q, const double* h, std::size_t n) {
  return sum_squares_pair_scalar(q, h, n);
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  axpy_scalar(a, x, y, n);
}

void scale_avx2(double a, double* x, std::size_t n) {
  scale_scalar(a, x, n);
}

#endif

}  // namespace mecsim::kernels::detail
