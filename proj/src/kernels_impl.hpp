#pragma once

#include <cstddef>

// Private kernel entry points. The AVX2 functions live in a TU compiled with
// -mavx2 and must only be called after a runtime CPU check.
namespace mecsim::kernels::detail {

void batch_distance_scalar(const double* xs, const double* ys, std::size_t n,
                           double x0, double y0, double* out);
double sum_squares_pair_scalar(const double* q, const double* h, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void scale_scalar(double a, double* x, std::size_t n);

bool avx2_compiled();
void batch_distance_avx2(const double* xs, const double* ys, std::size_t n,
                         double x0, double y0, double* out);
double sum_squares_pair_avx2(const double* q, const double* h, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void scale_avx2(double a, double* x, std::size_t n);

}  // namespace mecsim::kernels::detail
