#include "nbldpc/gf.hpp"

#include <bit>

#include "nbldpc/error.hpp"

namespace nbldpc {

std::uint32_t default_primitive_polynomial(int q) {
  switch (q) {
    case 2: return 0b111;
    case 3: return 0b1011;
    case 4: return 0b10011;
    case 5: return 0b100101;
    case 6: return 0b1000011;
    case 7: return 0b10000011;
    case 8: return 0b100011101;
    default:
      throw Error(ErrorKind::kUnsupportedQ, "q = " + std::to_string(q) + " outside [2, 8]");
  }
}

Field Field::build(int q, std::optional<std::uint32_t> poly) {
  if (q < kMinQ || q > kMaxQ) {
    throw Error(ErrorKind::kUnsupportedQ, "q = " + std::to_string(q) + " outside [2, 8]");
  }
  const std::uint32_t p = poly.value_or(default_primitive_polynomial(q));
  if (std::bit_width(p) != static_cast<unsigned>(q + 1)) {
    throw Error(ErrorKind::kNonPrimitivePolynomial,
                "polynomial " + std::to_string(p) + " does not have degree " + std::to_string(q));
  }

  auto t = std::make_shared<Tables>();
  t->q = q;
  t->order = 1 << q;
  t->poly = p;
  const auto g = static_cast<std::uint32_t>(t->order);
  t->exp.resize(g - 1);
  t->log.assign(g, 0);

  // Walk alpha^k; a repeat of 1 before g-1 steps means alpha has smaller order.
  std::uint32_t value = 1;
  for (std::uint32_t k = 0; k < g - 1; ++k) {
    if (k > 0 && value == 1) {
      throw Error(ErrorKind::kNonPrimitivePolynomial,
                  "alpha has order " + std::to_string(k) + " < " + std::to_string(g - 1));
    }
    t->exp[k] = static_cast<Symbol>(value);
    t->log[value] = k;
    value <<= 1;
    if (value & g) value ^= p;
  }
  if (value != 1) {
    // Only reachable for reducible polynomials where the walk leaves the unit group.
    throw Error(ErrorKind::kNonPrimitivePolynomial, "powers of alpha do not cycle back to 1");
  }

  t->mul.assign(static_cast<std::size_t>(g) * g, 0);
  for (std::uint32_t a = 1; a < g; ++a) {
    for (std::uint32_t b = 1; b < g; ++b) {
      t->mul[a * g + b] = t->exp[(t->log[a] + t->log[b]) % (g - 1)];
    }
  }
  return Field(std::move(t));
}

Symbol Field::inv(Symbol a) const {
  if (a == 0) throw Error(ErrorKind::kDivisionByZero, "inverse of 0");
  const auto n = static_cast<std::uint32_t>(order() - 1);
  return tables_->exp[(n - log(a)) % n];
}

Symbol Field::div(Symbol a, Symbol b) const {
  if (b == 0) throw Error(ErrorKind::kDivisionByZero, "division by 0");
  return mul(a, inv(b));
}

Symbol Field::from_power_index(std::uint32_t index) const {
  if (index > static_cast<std::uint32_t>(order() - 1)) {
    throw Error(ErrorKind::kFieldMismatch,
                "power index " + std::to_string(index) + " outside GF(" + std::to_string(order()) + ")");
  }
  return index == 0 ? Symbol{0} : exp(index - 1);
}

std::string Field::format_power(Symbol a) const {
  if (a == 0) return "0";
  const auto k = log(a);
  if (k == 0) return "1";
  if (k == 1) return "α";
  return "α^" + std::to_string(k);
}

}  // namespace nbldpc
