#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace nbldpc {

enum class Arithmetic { kFloat64, kFixed32, kFixed8 };

std::string_view to_string(Arithmetic a);

/// Storage and intermediate types for one arithmetic mode.
///
/// Probability-domain (FFT-SPA) fixed point is unsigned Q-format held in the
/// signed storage type: Q16 for fixed32, Q6 for fixed8. Transform-domain and
/// sum intermediates use `Wide`, twice the storage width.
struct Float64Arith {
  using Value = double;
  using Wide = double;
  static constexpr Arithmetic kMode = Arithmetic::kFloat64;
  static constexpr bool kIsFloat = true;
  static constexpr int kBits = 64;
  static constexpr int kFracBits = 0;
};

struct Fixed32Arith {
  using Value = std::int32_t;
  using Wide = std::int64_t;
  static constexpr Arithmetic kMode = Arithmetic::kFixed32;
  static constexpr bool kIsFloat = false;
  static constexpr int kBits = 32;
  static constexpr int kFracBits = 16;
};

struct Fixed8Arith {
  using Value = std::int8_t;
  using Wide = std::int16_t;
  static constexpr Arithmetic kMode = Arithmetic::kFixed8;
  static constexpr bool kIsFloat = false;
  static constexpr int kBits = 8;
  static constexpr int kFracBits = 6;
};

/// Default LLR scale for Min-Max fixed-point modes: gamma_q = round(scale * gamma).
inline constexpr double default_llr_scale(Arithmetic a) {
  switch (a) {
    case Arithmetic::kFixed8: return 8.0;
    case Arithmetic::kFixed32: return 65536.0;
    case Arithmetic::kFloat64: break;
  }
  return 1.0;
}

namespace fx {

/// Probability 1.0 in the mode's Q format.
template <class A>
constexpr typename A::Wide one() {
  if constexpr (A::kIsFloat) {
    return 1.0;
  } else {
    return static_cast<typename A::Wide>(1) << A::kFracBits;
  }
}

/// Q-format product; exact product for floating point.
template <class A>
constexpr typename A::Wide mul(typename A::Wide a, typename A::Wide b) {
  if constexpr (A::kIsFloat) {
    return a * b;
  } else {
    return static_cast<typename A::Wide>((static_cast<std::int64_t>(a) * b) >> A::kFracBits);
  }
}

/// Wide -> storage with saturation to [lo, max(Value)].
template <class A>
constexpr typename A::Value saturate(typename A::Wide v, typename A::Wide lo) {
  using V = typename A::Value;
  if constexpr (A::kIsFloat) {
    return v < lo ? lo : v;
  } else {
    constexpr auto hi = static_cast<typename A::Wide>(std::numeric_limits<V>::max());
    return static_cast<V>(v < lo ? lo : (v > hi ? hi : v));
  }
}

}  // namespace fx

}  // namespace nbldpc
