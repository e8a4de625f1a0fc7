#include <cmath>

#include "kernels_impl.hpp"

namespace mecsim::kernels::detail {

void batch_distance_scalar(const double* xs, const double* ys, std::size_t n,
                           double x0, double y0, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - x0;
    const double dy = ys[i] - y0;
    out[i] = std::sqrt(dx * dx + dy * dy);
  }
}

double sum_squares_pair_scalar(const double* q, const double* h, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += q[i] * q[i] + h[i] * h[i];
  }
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += a * x[i];
  }
}

void scale_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    x[i] *= a;
  }
}

}  // namespace mecsim::kernels::detail
