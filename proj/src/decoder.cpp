#include "nbldpc/decoder.hpp"

#include "nbldpc/error.hpp"
#include "nbldpc/fft_spa.hpp"
#include "nbldpc/min_max.hpp"

namespace nbldpc {

std::string_view to_string(Arithmetic a) {
  switch (a) {
    case Arithmetic::kFloat64: return "f64";
    case Arithmetic::kFixed32: return "i32";
    case Arithmetic::kFixed8: return "i8";
  }
  return "unknown";
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kFftSpa: return "fft-spa";
    case Algorithm::kMinMax: return "min-max";
  }
  return "unknown";
}

DecodeConfig::DecodeConfig(int max_iters, bool early_stop, Arithmetic arith, bool counters)
    : max_iters(max_iters), early_stop(early_stop), arith(arith), counters(counters) {
  if (max_iters < 1) throw Error(ErrorKind::kInvalidConfig, "max_iters must be >= 1");
}

namespace {

template <template <class> class Engine>
std::unique_ptr<DecoderEngine> make_for(const TannerGraph& graph, const DecodeConfig& config) {
  switch (config.arith) {
    case Arithmetic::kFloat64: return std::make_unique<Engine<Float64Arith>>(graph, config);
    case Arithmetic::kFixed32: return std::make_unique<Engine<Fixed32Arith>>(graph, config);
    case Arithmetic::kFixed8: return std::make_unique<Engine<Fixed8Arith>>(graph, config);
  }
  throw Error(ErrorKind::kInvalidConfig, "unknown arithmetic mode");
}

}  // namespace

std::unique_ptr<DecoderEngine> make_engine(Algorithm algo, const TannerGraph& graph, const DecodeConfig& config) {
  if (config.max_iters < 1) throw Error(ErrorKind::kInvalidConfig, "max_iters must be >= 1");
  if (algo == Algorithm::kFftSpa) return make_for<FftSpaEngine>(graph, config);
  return make_for<MinMaxEngine>(graph, config);
}

DecodeResult run_decoder(DecoderEngine& engine, const TannerGraph& graph, const DecodeConfig& config,
                         const SymbolPriors& priors) {
  engine.load(priors);
  DecodeResult result;
  OpCounters counters;
  for (int k = 1; k <= config.max_iters; ++k) {
    BlockTallies* sink = nullptr;
    if (config.counters) sink = &counters.per_iteration.emplace_back();
    Tally tally(sink);
    engine.iterate(nullptr, 0, 1, tally);
    if (config.early_stop || k == config.max_iters) {
      Tally decision(config.counters ? &counters.total : nullptr);
      engine.decide(result.decoded, decision);
      result.syndrome_ok = syndrome_is_zero(graph, result.decoded);
      result.iterations = k;
      if (result.syndrome_ok && config.early_stop) break;
    }
  }
  result.zero_sum_fallbacks = engine.zero_sum_fallbacks();
  if (config.counters) {
    for (const auto& it : counters.per_iteration) counters.total += it;
    counters.zero_sum_fallbacks = result.zero_sum_fallbacks;
    result.counters = std::move(counters);
  }
  return result;
}

Decoder::Decoder(Algorithm algo, const TannerGraph& graph, DecodeConfig config)
    : graph_(&graph), config_(config), engine_(make_engine(algo, graph, config)) {}

DecodeResult Decoder::decode(const SymbolPriors& priors) { return run_decoder(*engine_, *graph_, config_, priors); }

}  // namespace nbldpc
