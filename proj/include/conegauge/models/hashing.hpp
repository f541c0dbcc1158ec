#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>

namespace conegauge {

// SplitMix64 finalizer. Every random quantity in the models is a pure function
// of a key built by chaining this mix, so values never depend on call order.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept { return mix64(h ^ mix64(v)); }

inline std::uint64_t hash_key(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = mix64(seed);
  for (auto p : parts) h = hash_combine(h, p);
  return h;
}

inline std::uint64_t hash_key(std::uint64_t seed, std::span<const std::int64_t> parts) noexcept {
  std::uint64_t h = mix64(seed);
  for (auto p : parts) h = hash_combine(h, static_cast<std::uint64_t>(p));
  return h;
}

/// Uniform on the open interval (0,1) from the top 53 bits.
inline double to_unit(std::uint64_t h) noexcept { return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53; }

/// Standard normal via Box-Muller on two derived uniforms.
inline double to_normal(std::uint64_t h) noexcept {
  const double u1 = to_unit(h);
  const double u2 = to_unit(mix64(h ^ 0x5851f42d4c957f2dULL));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace conegauge
