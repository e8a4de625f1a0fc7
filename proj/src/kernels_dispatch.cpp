#include "mecsim/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "kernels_impl.hpp"

namespace mecsim::kernels {
namespace {

struct KernelTable {
  void (*batch_distance)(const double*, const double*, std::size_t, double, double, double*);
  double (*sum_squares_pair)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  Backend backend;
};

constexpr KernelTable kScalarTable{
    detail::batch_distance_scalar, detail::sum_squares_pair_scalar,
    detail::axpy_scalar,           detail::scale_scalar,
    Backend::Scalar,
};

constexpr KernelTable kAvx2Table{
    detail::batch_distance_avx2, detail::sum_squares_pair_avx2,
    detail::axpy_avx2,           detail::scale_avx2,
    Backend::Avx2,
};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return detail::avx2_compiled() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend startup_backend() {
  if (const char* env = std::getenv("MECSIM_KERNELS")) {
    const std::string_view want(env);
    if (want == "scalar") return Backend::Scalar;
    if (want == "avx2" && cpu_has_avx2()) return Backend::Avx2;
    // Anything else (including avx2 on unsupported hardware) falls through
    // to autodetection.
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

const KernelTable* table_for(Backend b) {
  return b == Backend::Avx2 ? &kAvx2Table : &kScalarTable;
}

const KernelTable*& active_table() {
  static const KernelTable* table = table_for(startup_backend());
  return table;
}

}  // namespace

Backend active_backend() { return active_table()->backend; }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) {
  return b == Backend::Scalar || cpu_has_avx2();
}

void force_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("kernel backend not available on this machine");
  }
  active_table() = table_for(b);
}

void batch_distance(std::span<const double> xs, std::span<const double> ys,
                    double x0, double y0, std::span<double> out) {
  active_table()->batch_distance(xs.data(), ys.data(), xs.size(), x0, y0, out.data());
}

double sum_squares_pair(std::span<const double> q, std::span<const double> h) {
  return active_table()->sum_squares_pair(q.data(), h.data(), q.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  active_table()->axpy(a, x.data(), y.data(), x.size());
}

void scale(double a, std::span<double> x) {
  active_table()->scale(a, x.data(), x.size());
}

}  // namespace mecsim::kernels
