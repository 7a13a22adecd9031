#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "nbldpc/arith.hpp"
#include "nbldpc/channel.hpp"
#include "nbldpc/code.hpp"
#include "nbldpc/counters.hpp"

namespace nbldpc {

enum class Algorithm { kFftSpa, kMinMax };

std::string_view to_string(Algorithm a);

struct DecodeConfig {
  /// I_max = 10, early stop on, float64, counters off.
  DecodeConfig() = default;
  /// Throws Error{kInvalidConfig} when max_iters < 1.
  explicit DecodeConfig(int max_iters, bool early_stop = true, Arithmetic arith = Arithmetic::kFloat64,
                        bool counters = false);

  int max_iters = 10;
  /// Check the syndrome after every iteration and stop on a codeword. When
  /// off, exactly max_iters iterations run and the decision is made once.
  bool early_stop = true;
  Arithmetic arith = Arithmetic::kFloat64;
  bool counters = false;
  /// Min-Max fixed-point LLR scale; 0 selects default_llr_scale(arith).
  double llr_scale = 0.0;

  double effective_llr_scale() const { return llr_scale > 0.0 ? llr_scale : default_llr_scale(arith); }
};

struct DecodeResult {
  Codeword decoded;
  int iterations = 0;
  bool syndrome_ok = false;
  std::optional<OpCounters> counters;
  std::uint64_t zero_sum_fallbacks = 0;
};

/// Synchronisation point between processing blocks. The default decoders run
/// without one; the staged runner supplies a counting barrier.
class PhaseSync {
 public:
  virtual ~PhaseSync() = default;
  virtual void wait() = 0;
};

/// Per-instance decoder state with the iteration split into barrier-separated
/// phases. iterate() called by `workers` threads with distinct `worker` ids and
/// a shared PhaseSync executes one iteration cooperatively; called with a null
/// sync and workers == 1 it is the sequential decoder.
class DecoderEngine {
 public:
  virtual ~DecoderEngine() = default;

  virtual Algorithm algorithm() const = 0;
  virtual Arithmetic arithmetic() const = 0;
  /// Resets all messages from channel priors (probability mode for FFT-SPA,
  /// delta-LLR mode for Min-Max).
  virtual void load(const SymbolPriors& priors) = 0;
  virtual void iterate(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& tally) = 0;
  /// A posteriori hard decision into `out` (size N).
  virtual void decide(Codeword& out, Tally& tally) = 0;
  /// PhaseSync::wait() calls made by one worker during one iteration.
  virtual std::size_t barriers_per_iteration() const = 0;
  virtual std::uint64_t zero_sum_fallbacks() const = 0;
};

/// The engine keeps a reference to `graph`, which must outlive it.
/// Throws Error{kInvalidConfig} for check nodes of degree < 2.
std::unique_ptr<DecoderEngine> make_engine(Algorithm algo, const TannerGraph& graph, const DecodeConfig& config);

/// Sequential decode loop around an engine.
DecodeResult run_decoder(DecoderEngine& engine, const TannerGraph& graph, const DecodeConfig& config,
                         const SymbolPriors& priors);

/// Reusable decoder: owns one engine, decodes one frame per call.
class Decoder {
 public:
  Decoder(Algorithm algo, const TannerGraph& graph, DecodeConfig config);

  DecodeResult decode(const SymbolPriors& priors);
  Algorithm algorithm() const { return engine_->algorithm(); }
  const DecodeConfig& config() const { return config_; }

 private:
  const TannerGraph* graph_;
  DecodeConfig config_;
  std::unique_ptr<DecoderEngine> engine_;
};

/// Splits [0, total) into `parts` contiguous chunks; returns chunk `index`.
inline std::pair<std::size_t, std::size_t> split_range(std::size_t total, std::size_t index, std::size_t parts) {
  return {total * index / parts, total * (index + 1) / parts};
}

}  // namespace nbldpc
