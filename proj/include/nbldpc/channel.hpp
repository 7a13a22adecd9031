#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "nbldpc/gf.hpp"

namespace nbldpc {

/// Received samples for N*q transmitted bits plus the noise level used to
/// interpret them.
struct ChannelObservation {
  std::vector<double> samples;
  double sigma = 0.0;
};

enum class PriorMode {
  kProbability,  // p(c_n = x | y_n), each vector sums to 1
  kDeltaLlr,     // ln(p(eta) / p(x)) >= 0 with a zero at the most likely symbol
};

/// Per-variable-node length-g vectors, row-major (N x g), in floating point.
/// Decoders quantise these on load when running in a fixed-point mode.
struct SymbolPriors {
  PriorMode mode = PriorMode::kProbability;
  std::size_t symbols = 0;
  std::size_t order = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t n) const { return {values.data() + n * order, order}; }
  std::span<double> row(std::size_t n) { return {values.data() + n * order, order}; }
};

/// Floor applied to probabilities before logarithms keeps every LLR finite.
inline constexpr double kProbabilityFloor = 1e-30;

/// Expands each symbol to q bits, MSB first; bit 0 -> +1.0, bit 1 -> -1.0.
std::vector<double> modulate_bpsk(std::span<const Symbol> codeword, const Field& field);

/// sigma^2 = 1 / (2 R Eb/N0). Throws Error{kInvalidRate} unless 0 < rate <= 1.
double noise_sigma(double ebn0_db, double rate);

ChannelObservation add_awgn(std::span<const double> signal, double ebn0_db, double rate, std::mt19937_64& rng);

/// Same sigma as add_awgn, samples left untouched.
ChannelObservation add_awgn_noiseless(std::span<const double> signal, double ebn0_db, double rate);

/// p(c_n = x | y_n) proportional to prod_i 1 / (1 + exp(2 y_i b_i / sigma^2)), normalised.
SymbolPriors symbol_priors(const ChannelObservation& obs, const Field& field);

/// gamma_n(x) = ln(p(eta) / p(x)) from probability-mode priors.
SymbolPriors llr_init_minmax(const SymbolPriors& priors);

/// round(value * scale) saturated to the signed range of `bits` (8 or 32).
std::vector<std::int32_t> quantize(std::span<const double> values, int bits, double scale);
std::int32_t quantize_one(double value, int bits, double scale);

}  // namespace nbldpc
