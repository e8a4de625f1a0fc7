#include <doctest.h>

#include <cmath>
#include <vector>

#include "mecsim/kernels.hpp"
#include "mecsim/rng.hpp"

using namespace mecsim;
using kernels::Backend;

namespace {

struct BackendGuard {
  Backend saved = kernels::active_backend();
  ~BackendGuard() { kernels::force_backend(saved); }
};

std::vector<double> random_vec(rng::Stream& s, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = s.uniform(lo, hi);
  return v;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(kernels::backend_available(Backend::Scalar));
  BackendGuard guard;
  kernels::force_backend(Backend::Scalar);
  CHECK(kernels::active_backend() == Backend::Scalar);
}

TEST_CASE("elementwise kernels match bitwise across backends") {
  if (!kernels::backend_available(Backend::Avx2)) {
    MESSAGE("avx2 not available; scalar-only machine");
    return;
  }
  BackendGuard guard;
  auto stream = rng::make_stream(77, rng::StreamId::HflData);

  // Sizes straddling the 4-lane width, including empty and remainders.
  for (const std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 64, 67}) {
    const auto xs = random_vec(stream, n, -500.0, 500.0);
    const auto ys = random_vec(stream, n, -500.0, 500.0);
    const double x0 = stream.uniform(-50.0, 50.0);
    const double y0 = stream.uniform(-50.0, 50.0);

    std::vector<double> d_scalar(n), d_avx2(n);
    kernels::force_backend(Backend::Scalar);
    kernels::batch_distance(xs, ys, x0, y0, d_scalar);
    kernels::force_backend(Backend::Avx2);
    kernels::batch_distance(xs, ys, x0, y0, d_avx2);
    CHECK(d_scalar == d_avx2);

    const auto src = random_vec(stream, n, -10.0, 10.0);
    auto acc_scalar = random_vec(stream, n, -10.0, 10.0);
    auto acc_avx2 = acc_scalar;
    const double a = stream.uniform(-3.0, 3.0);
    kernels::force_backend(Backend::Scalar);
    kernels::axpy(a, src, acc_scalar);
    kernels::force_backend(Backend::Avx2);
    kernels::axpy(a, src, acc_avx2);
    CHECK(acc_scalar == acc_avx2);

    auto scale_scalar = src;
    auto scale_avx2 = src;
    kernels::force_backend(Backend::Scalar);
    kernels::scale(a, scale_scalar);
    kernels::force_backend(Backend::Avx2);
    kernels::scale(a, scale_avx2);
    CHECK(scale_scalar == scale_avx2);
  }
}

TEST_CASE("reduction matches scalar within summation-order tolerance") {
  if (!kernels::backend_available(Backend::Avx2)) {
    MESSAGE("avx2 not available; scalar-only machine");
    return;
  }
  BackendGuard guard;
  auto stream = rng::make_stream(78, rng::StreamId::HflData);
  for (const std::size_t n : {0, 1, 3, 4, 5, 8, 33, 1000}) {
    const auto q = random_vec(stream, n, 0.0, 1e6);
    const auto h = random_vec(stream, n, 0.0, 1e6);
    kernels::force_backend(Backend::Scalar);
    const double s = kernels::sum_squares_pair(q, h);
    kernels::force_backend(Backend::Avx2);
    const double v = kernels::sum_squares_pair(q, h);
    if (n == 0) {
      CHECK(s == 0.0);
      CHECK(v == 0.0);
    } else {
      CHECK(std::abs(s - v) <= 1e-13 * std::max(std::abs(s), std::abs(v)));
    }
  }
}

TEST_CASE("kernel hand values") {
  std::vector<double> xs{3.0}, ys{4.0}, out{0.0};
  kernels::batch_distance(xs, ys, 0.0, 0.0, out);
  CHECK(out[0] == 5.0);

  std::vector<double> q{3.0}, h{4.0};
  CHECK(kernels::sum_squares_pair(q, h) == 25.0);

  std::vector<double> x{1.0, 2.0}, y{10.0, 20.0};
  kernels::axpy(2.0, x, y);
  CHECK(y[0] == 12.0);
  CHECK(y[1] == 24.0);
  kernels::scale(0.5, y);
  CHECK(y[0] == 6.0);
  CHECK(y[1] == 12.0);
}
