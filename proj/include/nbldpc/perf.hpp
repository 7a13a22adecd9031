#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nbldpc/decoder.hpp"

namespace nbldpc {

/// A code with everything needed to simulate it.
struct Code {
  explicit Code(ParityCheckMatrix h) : pcm(std::move(h)), graph(pcm), encoder(pcm) {}

  ParityCheckMatrix pcm;
  TannerGraph graph;
  Encoder encoder;

  double rate() const { return encoder.rate(); }
};

// ---------------------------------------------------------------------------
// Complexity model

enum class OpField { kAdditions, kMultiplications, kDivisions, kComparisons, kMemory };

std::string_view to_string(OpField f);
std::uint64_t get(const OpTally& t, OpField f);

struct CodeShape {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t dc = 0;
  std::uint64_t dv = 0;
  std::uint64_t g = 0;
};

/// A term measured counts must reproduce exactly.
struct CoreTerm {
  OpField field;
  std::uint64_t value;
};

/// One block of the per-iteration operation table. `blocks` lists the decoder
/// blocks whose measured tallies correspond to this row.
struct BlockPrediction {
  std::string name;
  std::vector<Block> blocks;
  OpTally ops;
  OpTally loop_control;
  std::vector<CoreTerm> core;
};

struct ComplexityModel {
  Algorithm algo = Algorithm::kFftSpa;
  CodeShape shape;
  std::vector<BlockPrediction> blocks;

  /// Sum of all rows, loop control included.
  OpTally total() const;
};

/// Per-iteration closed forms for a (d_v, d_c)-regular code; g must be a power of two.
ComplexityModel predict_counts(Algorithm algo, const CodeShape& shape);

/// The counters of a decode run. Throws Error{kCountersDisabled} if it ran without them.
const OpCounters& measured_counts(const DecodeResult& result);

/// Sum of the listed blocks of one tally set.
BlockTally sum_blocks(const BlockTallies& tallies, const std::vector<Block>& blocks);

/// One line of the predicted-vs-measured report.
struct AnalyzeRow {
  std::uint64_t g = 0;
  std::string block;
  double predicted = 0.0;
  double measured = 0.0;
  double residual() const { return measured - predicted; }
};

/// Decodes one iteration of a random regular code over GF(2^q) with counters
/// on and lists every table row, its core terms (".core" suffix), the loop
/// control rows and the totals.
std::vector<AnalyzeRow> complexity_report(Algorithm algo, const CodeShape& shape, int q, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Batch simulation

struct ChannelParams {
  double ebn0_db = 0.0;
  /// Transmit without noise; sigma still follows ebn0_db.
  bool noiseless = false;
};

struct FrameOutcome {
  bool frame_error = false;
  bool syndrome_ok = false;
  int iterations = 0;
  std::uint32_t symbol_errors = 0;
  std::uint32_t bit_errors = 0;

  friend bool operator==(const FrameOutcome&, const FrameOutcome&) = default;
};

struct BatchReport {
  std::size_t frames = 0;
  std::size_t workers = 0;
  /// Decode wall time; frame preparation is excluded.
  double wall_s = 0.0;
  /// N q frames / wall_s.
  double throughput_bps = 0.0;
  std::vector<double> utilization;
  std::size_t failures = 0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t bit_errors = 0;
  double avg_iters = 0.0;
  std::vector<FrameOutcome> outcomes;
};

/// Decodes `frames` random codewords on `workers` threads. Frame i draws its
/// message and noise from a generator seeded with (seed, i), so outcomes do not
/// depend on the worker count.
BatchReport run_batch(const Code& code, Algorithm algo, const DecodeConfig& config, const ChannelParams& channel,
                      std::size_t frames, std::size_t workers, std::uint64_t seed);

/// Channel priors for one frame in the representation `algo` consumes.
SymbolPriors frame_priors(const Code& code, Algorithm algo, const ChannelParams& channel, std::uint64_t seed,
                          std::uint64_t index, Codeword& sent);

// ---------------------------------------------------------------------------
// Staged execution

struct StagedReport {
  DecodeResult result;
  std::uint64_t barriers = 0;
  std::uint64_t barriers_per_iteration = 0;
};

/// Decodes one frame with every block split across `threads` workers and a
/// counted barrier between blocks.
StagedReport staged_run(const TannerGraph& graph, Algorithm algo, const DecodeConfig& config,
                        const SymbolPriors& priors, std::size_t threads);

}  // namespace nbldpc
