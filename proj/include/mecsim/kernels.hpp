#pragma once

#include <cstddef>
#include <span>

namespace mecsim::kernels {

// Batch arithmetic used by the per-slot loop and the model aggregation paths.
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2, a vector variant selected once at startup. Elementwise kernels
// (batch_distance, axpy, scale) are bit-identical between backends: the
// vector code uses the same mul/add/sqrt sequence per lane and the build
// disables FMA contraction. The reduction (sum_squares_pair) accumulates in
// a different association order, so callers compare it against references
// with a relative tolerance, not bitwise.
enum class Backend { Scalar, Avx2 };

Backend active_backend();
const char* backend_name(Backend b);
bool backend_available(Backend b);

// Force a backend (tests, troubleshooting). Throws std::invalid_argument if
// the backend is not available on this machine. The MECSIM_KERNELS
// environment variable ("scalar" or "avx2") overrides the startup choice.
void force_backend(Backend b);

// out[i] = sqrt((xs[i] - x0)^2 + (ys[i] - y0)^2)
void batch_distance(std::span<const double> xs, std::span<const double> ys,
                    double x0, double y0, std::span<double> out);

// sum_i (q[i]^2 + h[i]^2)
double sum_squares_pair(std::span<const double> q, std::span<const double> h);

// y[i] += a * x[i]
void axpy(double a, std::span<const double> x, std::span<double> y);

// x[i] *= a
void scale(double a, std::span<double> x);

}  // namespace mecsim::kernels
