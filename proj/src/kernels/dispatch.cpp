#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"
#include "reduction_lab/errors.hpp"

namespace rlab::kernels {
namespace {

const KernelTable* initial_table() noexcept {
  const char* requested = std::getenv("REDUCTION_LAB_KERNELS");
  if (requested != nullptr && std::string_view(requested) == "scalar") return &scalar_table();
  if (cpu_supports(Backend::Avx2)) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return detail::scalar_kernels(); }

const KernelTable* avx2_table() noexcept {
#ifdef REDUCTION_LAB_HAVE_AVX2
  return &detail::avx2_kernels();
#else
  return nullptr;
#endif
}

bool cpu_supports(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(REDUCTION_LAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

Backend active_backend() noexcept { return active().backend; }

void select_backend(Backend backend) {
  if (!cpu_supports(backend)) {
    throw InvalidArgument("kernel backend '" + std::string(backend_name(backend)) +
                          "' is not available on this machine");
  }
  current().store(backend == Backend::Avx2 ? avx2_table() : &scalar_table(), std::memory_order_release);
}

std::string_view backend_name(Backend backend) noexcept {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

}  // namespace rlab::kernels
