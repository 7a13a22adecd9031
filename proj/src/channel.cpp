#include "nbldpc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nbldpc/error.hpp"

namespace nbldpc {

std::vector<double> modulate_bpsk(std::span<const Symbol> codeword, const Field& field) {
  const int q = field.q();
  std::vector<double> out;
  out.reserve(codeword.size() * static_cast<std::size_t>(q));
  for (Symbol s : codeword) {
    for (int b = q - 1; b >= 0; --b) out.push_back(((s >> b) & 1U) ? -1.0 : 1.0);
  }
  return out;
}

double noise_sigma(double ebn0_db, double rate) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw Error(ErrorKind::kInvalidRate, "code rate " + std::to_string(rate) + " outside (0, 1]");
  }
  const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
  return std::sqrt(1.0 / (2.0 * rate * ebn0));
}

ChannelObservation add_awgn(std::span<const double> signal, double ebn0_db, double rate, std::mt19937_64& rng) {
  ChannelObservation obs{{signal.begin(), signal.end()}, noise_sigma(ebn0_db, rate)};
  std::normal_distribution<double> noise(0.0, 1.0);
  for (auto& y : obs.samples) y += obs.sigma * noise(rng);
  return obs;
}

ChannelObservation add_awgn_noiseless(std::span<const double> signal, double ebn0_db, double rate) {
  return {{signal.begin(), signal.end()}, noise_sigma(ebn0_db, rate)};
}

namespace {

// ln(1 / (1 + e^t)) without overflow.
double log_logistic(double t) { return t > 0 ? -t - std::log1p(std::exp(-t)) : -std::log1p(std::exp(t)); }

}  // namespace

SymbolPriors symbol_priors(const ChannelObservation& obs, const Field& field) {
  const int q = field.q();
  const auto g = static_cast<std::size_t>(field.order());
  if (obs.samples.size() % static_cast<std::size_t>(q) != 0) {
    throw Error(ErrorKind::kLengthMismatch, "observation length is not a multiple of q");
  }
  const std::size_t n = obs.samples.size() / static_cast<std::size_t>(q);
  SymbolPriors priors{PriorMode::kProbability, n, g, std::vector<double>(n * g)};
  const double two_over_var = 2.0 / (obs.sigma * obs.sigma);

  std::vector<double> log_one(static_cast<std::size_t>(q)), log_zero(static_cast<std::size_t>(q));
  std::vector<double> log_p(g);
  for (std::size_t v = 0; v < n; ++v) {
    // Index i runs MSB-first, matching modulate_bpsk.
    for (int i = 0; i < q; ++i) {
      const double t = two_over_var * obs.samples[v * static_cast<std::size_t>(q) + static_cast<std::size_t>(i)];
      log_one[static_cast<std::size_t>(i)] = log_logistic(t);    // b = +1 for bit value 1
      log_zero[static_cast<std::size_t>(i)] = log_logistic(-t);  // b = -1 for bit value 0
    }
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < g; ++x) {
      double acc = 0.0;
      for (int i = 0; i < q; ++i) {
        const bool bit = (x >> (q - 1 - i)) & 1U;
        acc += bit ? log_one[static_cast<std::size_t>(i)] : log_zero[static_cast<std::size_t>(i)];
      }
      log_p[x] = acc;
      peak = std::max(peak, acc);
    }
    auto row = priors.row(v);
    double sum = 0.0;
    for (std::size_t x = 0; x < g; ++x) {
      row[x] = std::exp(log_p[x] - peak);
      sum += row[x];
    }
    for (auto& p : row) p /= sum;
  }
  return priors;
}

SymbolPriors llr_init_minmax(const SymbolPriors& priors) {
  if (priors.mode != PriorMode::kProbability) {
    throw Error(ErrorKind::kInvalidConfig, "llr_init_minmax expects probability-mode priors");
  }
  SymbolPriors out{PriorMode::kDeltaLlr, priors.symbols, priors.order, std::vector<double>(priors.values.size())};
  for (std::size_t n = 0; n < priors.symbols; ++n) {
    const auto in = priors.row(n);
    auto gamma = out.row(n);
    const double best = std::max(*std::max_element(in.begin(), in.end()), kProbabilityFloor);
    for (std::size_t x = 0; x < in.size(); ++x) {
      const double p = std::max(in[x], kProbabilityFloor);
      gamma[x] = p == best ? 0.0 : std::log(best / p);
    }
  }
  return out;
}

std::int32_t quantize_one(double value, int bits, double scale) {
  const double lo = bits == 8 ? -128.0 : static_cast<double>(std::numeric_limits<std::int32_t>::min());
  const double hi = bits == 8 ? 127.0 : static_cast<double>(std::numeric_limits<std::int32_t>::max());
  const double r = std::round(value * scale);
  if (std::isnan(r)) return 0;
  return static_cast<std::int32_t>(std::clamp(r, lo, hi));
}

std::vector<std::int32_t> quantize(std::span<const double> values, int bits, double scale) {
  if (bits != 8 && bits != 32) throw Error(ErrorKind::kInvalidConfig, "quantize supports 8 or 32 bits");
  if (!(scale > 0.0)) throw Error(ErrorKind::kInvalidConfig, "quantize scale must be positive");
  std::vector<std::int32_t> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(),
                 [&](double v) { return quantize_one(v, bits, scale); });
  return out;
}

}  // namespace nbldpc
