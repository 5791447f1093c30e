#pragma once

#include <span>

namespace rsm::simd {

enum class Isa { scalar, avx2 };

// Highest ISA the running CPU supports among the built kernels.
Isa detected_isa() noexcept;
// ISA used by the dispatching entry points; defaults to detected_isa().
Isa active_isa() noexcept;
void force_isa(Isa isa);
const char* isa_name(Isa isa) noexcept;

// Compensated sum / dot in a fixed 4-lane order. Every ISA returns the same
// bits for the same input.
double sum(std::span<const double> xs) noexcept;
double dot(std::span<const double> xs, std::span<const double> ys) noexcept;

namespace scalar {
double sum(std::span<const double> xs) noexcept;
double dot(std::span<const double> xs, std::span<const double> ys) noexcept;
}  // namespace scalar

namespace avx2 {
double sum(std::span<const double> xs) noexcept;
double dot(std::span<const double> xs, std::span<const double> ys) noexcept;
}  // namespace avx2

namespace detail {
// Lane state fold shared by every kernel.
double fold_lanes(const double* s, const double* c, std::span<const double> tail_x,
                  std::span<const double> tail_y, bool products) noexcept;
}  // namespace detail

}  // namespace rsm::simd
