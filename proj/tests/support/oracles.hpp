#pragma once

// Brute-force reference implementations. Slow, obvious, and independent of the
// decoder code paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <type_traits>
#include <vector>

#include "nbldpc/channel.hpp"
#include "nbldpc/code.hpp"
#include "nbldpc/gf.hpp"

namespace oracle {

using nbldpc::Symbol;

/// Carry-less product reduced by the field polynomial.
inline Symbol clmul(std::uint32_t a, std::uint32_t b, std::uint32_t poly, int q) {
  std::uint32_t r = 0;
  for (int i = 0; i < q; ++i) {
    if ((b >> i) & 1U) r ^= a << i;
  }
  for (int i = 2 * q - 2; i >= q; --i) {
    if ((r >> i) & 1U) r ^= poly << (i - q);
  }
  return static_cast<Symbol>(r);
}

/// Visits every assignment of `count` symbols over [0, g).
template <class F>
void for_each_assignment(std::size_t count, std::size_t g, F&& visit) {
  std::vector<Symbol> x(count, 0);
  while (true) {
    visit(x);
    std::size_t i = 0;
    while (i < count && ++x[i] == g) x[i++] = 0;
    if (i == count) return;
  }
}

/// v_n(x) = sum over assignments of the other edges with
/// sum_{j != n} h_j x_j = h_n x of prod_{j != n} u_j(x_j).
inline std::vector<std::vector<double>> cn_convolution(const std::vector<std::vector<double>>& u,
                                                       const std::vector<Symbol>& h, const nbldpc::Field& f) {
  const std::size_t d = h.size();
  const auto g = static_cast<std::size_t>(f.order());
  std::vector<std::vector<double>> v(d, std::vector<double>(g, 0.0));
  for (std::size_t n = 0; n < d; ++n) {
    for_each_assignment(d - 1, g, [&](const std::vector<Symbol>& xs) {
      Symbol sum = 0;
      double p = 1.0;
      for (std::size_t k = 0, j = 0; j < d; ++j) {
        if (j == n) continue;
        sum ^= f.mul(h[j], xs[k]);
        p *= u[j][xs[k]];
        ++k;
      }
      v[n][f.div(sum, h[n])] += p;
    });
  }
  return v;
}

/// min over all assignments with sum_j h_j x_j = x of max_j alpha_j(x_j).
template <class T>
std::vector<T> minmax_full(const std::vector<std::vector<T>>& alpha, const std::vector<Symbol>& h,
                           const nbldpc::Field& f) {
  const auto g = static_cast<std::size_t>(f.order());
  std::vector<T> out(g, std::numeric_limits<T>::max());
  for_each_assignment(h.size(), g, [&](const std::vector<Symbol>& xs) {
    Symbol sum = 0;
    T worst = std::numeric_limits<T>::lowest();
    for (std::size_t j = 0; j < h.size(); ++j) {
      sum ^= f.mul(h[j], xs[j]);
      worst = std::max(worst, alpha[j][xs[j]]);
    }
    out[sum] = std::min(out[sum], worst);
  });
  return out;
}

/// beta_n(x) = min over assignments of the other edges with
/// sum_{j != n} h_j x_j = h_n x of max_{j != n} alpha_j(x_j).
template <class T>
std::vector<std::vector<T>> minmax_extrinsic(const std::vector<std::vector<T>>& alpha, const std::vector<Symbol>& h,
                                             const nbldpc::Field& f) {
  const std::size_t d = h.size();
  const auto g = static_cast<std::size_t>(f.order());
  std::vector<std::vector<T>> beta(d, std::vector<T>(g, std::numeric_limits<T>::max()));
  for (std::size_t n = 0; n < d; ++n) {
    for_each_assignment(d - 1, g, [&](const std::vector<Symbol>& xs) {
      Symbol sum = 0;
      T worst = std::numeric_limits<T>::lowest();
      for (std::size_t k = 0, j = 0; j < d; ++j) {
        if (j == n) continue;
        sum ^= f.mul(h[j], xs[k]);
        worst = std::max(worst, alpha[j][xs[k]]);
        ++k;
      }
      auto& slot = beta[n][f.div(sum, h[n])];
      slot = std::min(slot, worst);
    });
  }
  return beta;
}

/// All codewords of a small code by exhaustive encoding.
inline std::vector<nbldpc::Codeword> all_codewords(const nbldpc::ParityCheckMatrix& pcm) {
  const nbldpc::Encoder enc(pcm);
  const auto g = static_cast<std::size_t>(pcm.field().order());
  std::vector<nbldpc::Codeword> out;
  for_each_assignment(enc.k(), g, [&](const std::vector<Symbol>& msg) { out.push_back(enc.encode(msg)); });
  return out;
}

/// Maximum-likelihood codeword under independent symbol priors.
inline const nbldpc::Codeword& ml_decode(const std::vector<nbldpc::Codeword>& book, const nbldpc::SymbolPriors& p) {
  std::size_t best = 0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < book.size(); ++c) {
    double ll = 0.0;
    for (std::size_t n = 0; n < book[c].size(); ++n) {
      ll += std::log(std::max(p.row(n)[book[c][n]], nbldpc::kProbabilityFloor));
    }
    if (ll > best_ll) {
      best_ll = ll;
      best = c;
    }
  }
  return book[best];
}

/// Random probability vector of length g.
inline std::vector<double> random_distribution(std::size_t g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> p(g);
  double s = 0.0;
  for (auto& x : p) s += (x = u(rng));
  for (auto& x : p) x /= s;
  return p;
}

/// Random delta-LLR row: non-negative, zero at one random position.
template <class T>
std::vector<T> random_llr(std::size_t g, std::mt19937_64& rng, double hi) {
  std::uniform_real_distribution<double> u(0.0, hi);
  std::vector<T> r(g);
  for (auto& x : r) {
    if constexpr (std::is_floating_point_v<T>) {
      x = u(rng);
    } else {
      x = static_cast<T>(std::floor(u(rng)));
    }
  }
  r[std::uniform_int_distribution<std::size_t>(0, g - 1)(rng)] = T{};
  return r;
}

/// Random nonzero coefficients.
inline std::vector<Symbol> random_coeffs(std::size_t d, const nbldpc::Field& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(1, f.order() - 1);
  std::vector<Symbol> h(d);
  for (auto& x : h) x = static_cast<Symbol>(c(rng));
  return h;
}

}  // namespace oracle
