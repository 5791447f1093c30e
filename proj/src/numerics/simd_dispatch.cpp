#include <atomic>
#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(__i386__)
#include <cpuid.h>
#endif

#include "rsm/error.hpp"
#include "rsm/simd.hpp"

namespace rsm::simd {

namespace {

bool cpu_has_avx2_fma() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
  if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return false;
  const bool fma = (ecx >> 12) & 1u;
  const bool osxsave = (ecx >> 27) & 1u;
  if (!fma || !osxsave) return false;
  unsigned xcr0_lo = 0, xcr0_hi = 0;
  __asm__ volatile("xgetbv" : "=a"(xcr0_lo), "=d"(xcr0_hi) : "c"(0));
  if ((xcr0_lo & 0x6u) != 0x6u) return false;
  if (__get_cpuid_max(0, nullptr) < 7) return false;
  __cpuid_count(7, 0, eax, ebx, ecx, edx);
  return (ebx >> 5) & 1u;
#else
  return false;
#endif
}

Isa initial_isa() noexcept {
  const char* env = std::getenv("RSM_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return detected_isa();
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

Isa detected_isa() noexcept {
  static const Isa isa = cpu_has_avx2_fma() ? Isa::avx2 : Isa::scalar;
  return isa;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2)
    throw Error(ErrorKind::InvalidArgument, "numerics", "AVX2/FMA not available on this CPU");
  active().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double sum(std::span<const double> xs) noexcept {
  return active_isa() == Isa::avx2 ? avx2::sum(xs) : scalar::sum(xs);
}

double dot(std::span<const double> xs, std::span<const double> ys) noexcept {
  return active_isa() == Isa::avx2 ? avx2::dot(xs, ys) : scalar::dot(xs, ys);
}

}  // namespace rsm::simd
