#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nbldpc {

/// Polynomial-basis value of a GF(2^q) element. Bit i is the coefficient of x^i.
using Symbol = std::uint16_t;

inline constexpr int kMinQ = 2;
inline constexpr int kMaxQ = 8;

/// Minimal-weight primitive polynomial for GF(2^q), including the x^q term.
std::uint32_t default_primitive_polynomial(int q);

/// GF(2^q) for 2 <= q <= 8 backed by exp/log tables and a full multiplication
/// table. Immutable after construction; copies share the tables.
class Field {
 public:
  /// Builds the field and verifies that `poly` is primitive by walking the
  /// powers of alpha. Throws Error{kUnsupportedQ} or Error{kNonPrimitivePolynomial}.
  static Field build(int q, std::optional<std::uint32_t> poly = std::nullopt);

  int q() const noexcept { return tables_->q; }
  int order() const noexcept { return tables_->order; }
  std::uint32_t poly() const noexcept { return tables_->poly; }

  bool contains(std::uint32_t value) const noexcept { return value < static_cast<std::uint32_t>(order()); }

  Symbol add(Symbol a, Symbol b) const noexcept { return static_cast<Symbol>(a ^ b); }

  Symbol mul(Symbol a, Symbol b) const noexcept {
    return tables_->mul[static_cast<std::size_t>(a) * tables_->order + b];
  }

  /// Throws Error{kDivisionByZero} for a == 0.
  Symbol inv(Symbol a) const;

  /// a / b; throws Error{kDivisionByZero} for b == 0.
  Symbol div(Symbol a, Symbol b) const;

  /// alpha^k for any k >= 0 (reduced mod g-1).
  Symbol exp(std::uint32_t k) const noexcept { return tables_->exp[k % (tables_->order - 1)]; }

  /// Discrete log of a nonzero element.
  std::uint32_t log(Symbol a) const noexcept { return tables_->log[a]; }

  std::span<const Symbol> exp_table() const noexcept { return tables_->exp; }
  std::span<const std::uint32_t> log_table() const noexcept { return tables_->log; }

  /// Row h of the multiplication table: mul_row(h)[x] == h * x.
  std::span<const Symbol> mul_row(Symbol h) const noexcept {
    return {tables_->mul.data() + static_cast<std::size_t>(h) * tables_->order,
            static_cast<std::size_t>(tables_->order)};
  }

  /// Power-notation index used in printed matrices: 0 -> 0, alpha^k -> k + 1.
  std::uint32_t power_index(Symbol a) const noexcept { return a == 0 ? 0 : log(a) + 1; }
  Symbol from_power_index(std::uint32_t index) const;

  /// "0", "1", "α", "α^2", ...
  std::string format_power(Symbol a) const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.q() == b.q() && a.poly() == b.poly();
  }

 private:
  struct Tables {
    int q = 0;
    int order = 0;
    std::uint32_t poly = 0;
    std::vector<Symbol> exp;         // g - 1 entries
    std::vector<std::uint32_t> log;  // g entries, log[0] unused
    std::vector<Symbol> mul;         // g * g entries
  };

  explicit Field(std::shared_ptr<const Tables> tables) : tables_(std::move(tables)) {}

  std::shared_ptr<const Tables> tables_;
};

}  // namespace nbldpc
