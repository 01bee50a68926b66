#include <cstdlib>

#include "fsp/errors.hpp"
#include "fsp/kernels.hpp"

namespace fsp::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(FSP_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select() {
  const char* force = std::getenv("FSP_FORCE_SCALAR");
  if (force != nullptr && *force != '\0') return detail::scalar_table;
#if defined(FSP_HAVE_AVX2_KERNELS)
  if (cpu_has_avx2()) return detail::avx2_table;
#endif
  return detail::scalar_table;
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) throw Error(std::string("kernel ISA not available: ") + std::string(name(isa)));
#if defined(FSP_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) return detail::avx2_table;
#endif
  return detail::scalar_table;
}

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace fsp::kernels
