#include "nbldpc/perf.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <bit>
#include <chrono>
#include <thread>

#include "nbldpc/error.hpp"

namespace nbldpc {

std::string_view to_string(OpField f) {
  switch (f) {
    case OpField::kAdditions: return "additions";
    case OpField::kMultiplications: return "multiplications";
    case OpField::kDivisions: return "divisions";
    case OpField::kComparisons: return "comparisons";
    case OpField::kMemory: return "memory";
  }
  return "unknown";
}

std::uint64_t get(const OpTally& t, OpField f) {
  switch (f) {
    case OpField::kAdditions: return t.additions;
    case OpField::kMultiplications: return t.multiplications;
    case OpField::kDivisions: return t.divisions;
    case OpField::kComparisons: return t.comparisons;
    case OpField::kMemory: return t.memory;
  }
  return 0;
}

OpTally ComplexityModel::total() const {
  OpTally t;
  for (const auto& b : blocks) {
    t += b.ops;
    t += b.loop_control;
  }
  return t;
}

namespace {

OpTally loops(std::uint64_t trips) {
  OpTally t;
  t.additions = trips;
  t.comparisons = trips;
  return t;
}

OpTally ops(std::uint64_t add, std::uint64_t mul, std::uint64_t div, std::uint64_t cmp, std::uint64_t mem) {
  return {add, mul, div, cmp, mem};
}

}  // namespace

ComplexityModel predict_counts(Algorithm algo, const CodeShape& s) {
  if (s.g < 2 || !std::has_single_bit(s.g)) throw Error(ErrorKind::kInvalidConfig, "g must be a power of two");
  if (s.dc < 2) throw Error(ErrorKind::kInvalidConfig, "d_c must be >= 2");
  const std::uint64_t M = s.m, N = s.n, dc = s.dc, dv = s.dv, g = s.g;
  const auto lg = static_cast<std::uint64_t>(std::countr_zero(g));
  const std::uint64_t cn_loops = M + M * dc + M * dc * g;
  const std::uint64_t vn_loops = N + N * dv + N * dv * g;
  using F = OpField;

  ComplexityModel model{algo, s, {}};
  auto& b = model.blocks;
  if (algo == Algorithm::kFftSpa) {
    const std::uint64_t fft = M * dc * g * lg;
    const std::uint64_t cnp = M * dc * (dc - 1) * g;
    b.push_back({"permutation", {Block::kPermutation}, ops(0, 0, 0, 0, 3 * N * dv * g), loops(vn_loops), {}});
    b.push_back({"fft", {Block::kFft}, ops(fft, fft, 0, 0, fft), {}, {{F::kAdditions, fft}, {F::kMultiplications, fft}}});
    b.push_back({"cnp_product", {Block::kCnpProduct}, ops(cnp, cnp, 0, 0, cnp), loops(cn_loops),
                 {{F::kMultiplications, cnp}}});
    b.push_back({"inverse_fft",
                 {Block::kInverseFft},
                 ops(fft, fft, M * dc * g, 0, fft + M * dc * g),
                 {},
                 {{F::kAdditions, fft}, {F::kMultiplications, fft}, {F::kDivisions, M * dc * g}}});
    b.push_back({"depermutation", {Block::kDepermutation}, ops(0, 0, 0, 0, 3 * M * dc * g), loops(cn_loops), {}});
    const std::uint64_t vmul = N * dv * (dv - 1) * g + N * dv * g;
    b.push_back({"vnp",
                 {Block::kVnp},
                 ops(N * dv * g, vmul, N * dv * g, 0, 5 * N * dv * g + N * dv * (dv - 1) * g),
                 loops(vn_loops),
                 {{F::kAdditions, N * dv * g}, {F::kMultiplications, vmul}, {F::kDivisions, N * dv * g}}});
  } else {
    const std::uint64_t fb = 2 * M * (dc - 1) * g * g;
    const std::uint64_t br = M * (dc - 2) * g * g;
    b.push_back({"fb_first_edge", {Block::kFbFirstEdge}, ops(0, 0, 0, M * dc * g, 6 * M * g), loops(cn_loops), {}});
    b.push_back({"fb_remaining_edges",
                 {Block::kFbRemainingEdges},
                 ops(fb, 0, 0, fb + 2 * M * (dc - 1) * g, 8 * M * (dc - 1) * g * g),
                 loops(M * (dc - 1) * g * g),
                 {{F::kAdditions, fb}, {F::kComparisons, fb}}});
    b.push_back({"beta_first_last_edge",
                 {Block::kBetaFirstLastEdge},
                 ops(0, 0, 0, 2 * M * dc * g, 6 * M * g),
                 loops(cn_loops),
                 {}});
    b.push_back({"beta_remaining_edges",
                 {Block::kBetaRemainingEdges},
                 ops(br, 0, 0, br + M * (dc - 2) * g, 4 * M * (dc - 2) * g * g),
                 loops(M * (dc - 2) * g * g),
                 {{F::kAdditions, br}, {F::kComparisons, br}}});
    const std::uint64_t vadd = N * dv * (dv - 1) * g + 2 * N * dv * g;
    b.push_back({"vnp",
                 {Block::kMinMaxVnp},
                 ops(vadd, 0, 0, N * dv * g, 5 * N * dv * g + N * dv * (dv - 1) * g),
                 loops(vn_loops),
                 {{F::kAdditions, vadd}, {F::kComparisons, N * dv * g}}});
  }
  return model;
}

const OpCounters& measured_counts(const DecodeResult& result) {
  if (!result.counters) throw Error(ErrorKind::kCountersDisabled, "decode ran without counters");
  return *result.counters;
}

BlockTally sum_blocks(const BlockTallies& tallies, const std::vector<Block>& blocks) {
  BlockTally out;
  for (Block b : blocks) out += tallies[static_cast<std::size_t>(b)];
  return out;
}

std::vector<AnalyzeRow> complexity_report(Algorithm algo, const CodeShape& shape, int q, std::uint64_t seed) {
  const Field field = Field::build(q);
  CodeShape s = shape;
  s.g = field.order();
  const Code code(gen_regular_code(s.n, s.m, s.dc, s.dv, field, seed));
  const ComplexityModel model = predict_counts(algo, s);

  Codeword sent;
  const auto priors = frame_priors(code, algo, ChannelParams{3.0, true}, seed, 0, sent);
  const DecodeConfig config(1, false, Arithmetic::kFloat64, true);
  const auto engine = make_engine(algo, code.graph, config);
  const auto counters = measured_counts(run_decoder(*engine, code.graph, config, priors));
  const BlockTallies& it = counters.per_iteration.front();

  const std::string prefix(to_string(algo));
  constexpr OpField kFields[] = {OpField::kAdditions, OpField::kMultiplications, OpField::kDivisions,
                                 OpField::kComparisons, OpField::kMemory};
  std::vector<AnalyzeRow> rows;
  auto add = [&](std::string name, std::uint64_t predicted, std::uint64_t measured) {
    rows.push_back({s.g, prefix + "." + name, static_cast<double>(predicted), static_cast<double>(measured)});
  };
  OpTally measured_total;
  for (const auto& b : model.blocks) {
    const BlockTally m = sum_blocks(it, b.blocks);
    for (OpField f : kFields) add(b.name + "." + std::string(to_string(f)), get(b.ops, f), get(m.ops, f));
    for (const auto& c : b.core) {
      add(b.name + "." + std::string(to_string(c.field)) + ".core", c.value, get(m.ops, c.field));
    }
    add(b.name + ".loop_control.additions", b.loop_control.additions, m.loop_control.additions);
    add(b.name + ".loop_control.comparisons", b.loop_control.comparisons, m.loop_control.comparisons);
    measured_total += m.ops;
    measured_total += m.loop_control;
  }
  const OpTally predicted_total = model.total();
  add("total.operations", predicted_total.operations(), measured_total.operations());
  add("total.memory", predicted_total.memory, measured_total.memory);
  return rows;
}

// ---------------------------------------------------------------------------

SymbolPriors frame_priors(const Code& code, Algorithm algo, const ChannelParams& channel, std::uint64_t seed,
                          std::uint64_t index, Codeword& sent) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  const Field& field = code.pcm.field();
  std::uniform_int_distribution<int> symbol(0, static_cast<int>(field.order()) - 1);
  Codeword message(code.encoder.k());
  for (auto& s : message) s = static_cast<Symbol>(symbol(rng));
  sent = code.encoder.encode(message);
  const auto signal = modulate_bpsk(sent, field);
  const auto obs = channel.noiseless ? add_awgn_noiseless(signal, channel.ebn0_db, code.rate())
                                     : add_awgn(signal, channel.ebn0_db, code.rate(), rng);
  auto priors = symbol_priors(obs, field);
  return algo == Algorithm::kMinMax ? llr_init_minmax(priors) : priors;
}

namespace {

using Clock = std::chrono::steady_clock;

FrameOutcome compare(const Codeword& sent, const DecodeResult& r) {
  FrameOutcome o;
  o.syndrome_ok = r.syndrome_ok;
  o.iterations = r.iterations;
  for (std::size_t i = 0; i < sent.size(); ++i) {
    if (sent[i] != r.decoded[i]) {
      ++o.symbol_errors;
      o.bit_errors += static_cast<std::uint32_t>(std::popcount(static_cast<unsigned>(sent[i] ^ r.decoded[i])));
    }
  }
  o.frame_error = o.symbol_errors != 0;
  return o;
}

struct BatchState {
  std::size_t frames = 0;
  std::size_t chunk = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::atomic<std::size_t> next{0};
  bool done = false;
  Clock::time_point started;
  double wall = 0.0;
};

struct DecodeStart {
  BatchState* s;
  void operator()() noexcept {
    s->next.store(s->begin, std::memory_order_relaxed);
    s->started = Clock::now();
  }
};

struct ChunkEnd {
  BatchState* s;
  void operator()() noexcept {
    s->wall += std::chrono::duration<double>(Clock::now() - s->started).count();
    s->begin = s->end;
    s->end = std::min(s->frames, s->begin + s->chunk);
    s->next.store(s->begin, std::memory_order_relaxed);
    s->done = s->begin >= s->frames;
  }
};

}  // namespace

BatchReport run_batch(const Code& code, Algorithm algo, const DecodeConfig& config, const ChannelParams& channel,
                      std::size_t frames, std::size_t workers, std::uint64_t seed) {
  workers = std::max<std::size_t>(workers, 1);
  noise_sigma(channel.ebn0_db, code.rate());
  const std::size_t n = code.graph.num_variables();
  const std::size_t g = static_cast<std::size_t>(code.pcm.field().order());

  std::vector<Decoder> decoders;
  decoders.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) decoders.emplace_back(algo, code.graph, config);

  BatchReport report;
  report.frames = frames;
  report.workers = workers;
  report.outcomes.resize(frames);
  report.utilization.assign(workers, 0.0);
  if (frames == 0) return report;

  constexpr std::size_t kPriorBudget = std::size_t{32} << 20;
  BatchState state;
  state.frames = frames;
  state.chunk = std::clamp<std::size_t>(kPriorBudget / (n * g * sizeof(double)), workers, 512);
  state.end = std::min(frames, state.chunk);
  std::vector<SymbolPriors> priors(state.chunk);
  std::vector<Codeword> sent(state.chunk);
  std::vector<double> busy(workers, 0.0);

  std::barrier prepared(static_cast<std::ptrdiff_t>(workers), DecodeStart{&state});
  std::barrier decoded(static_cast<std::ptrdiff_t>(workers), ChunkEnd{&state});

  auto work = [&](std::size_t w) {
    while (!state.done) {
      for (std::size_t i; (i = state.next.fetch_add(1, std::memory_order_relaxed)) < state.end;) {
        priors[i - state.begin] = frame_priors(code, algo, channel, seed, i, sent[i - state.begin]);
      }
      prepared.arrive_and_wait();
      for (std::size_t i; (i = state.next.fetch_add(1, std::memory_order_relaxed)) < state.end;) {
        const auto t0 = Clock::now();
        const auto r = decoders[w].decode(priors[i - state.begin]);
        busy[w] += std::chrono::duration<double>(Clock::now() - t0).count();
        report.outcomes[i] = compare(sent[i - state.begin], r);
      }
      decoded.arrive_and_wait();
    }
  };

  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  pool.clear();

  report.wall_s = state.wall;
  report.throughput_bps =
      state.wall > 0.0 ? static_cast<double>(n) * code.pcm.field().q() * static_cast<double>(frames) / state.wall
                       : 0.0;
  for (std::size_t w = 0; w < workers; ++w) report.utilization[w] = state.wall > 0.0 ? busy[w] / state.wall : 0.0;
  double iters = 0.0;
  for (const auto& o : report.outcomes) {
    report.failures += o.frame_error ? 1 : 0;
    report.symbol_errors += o.symbol_errors;
    report.bit_errors += o.bit_errors;
    iters += o.iterations;
  }
  report.avg_iters = iters / static_cast<double>(frames);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct CountPhase {
  std::atomic<std::uint64_t>* count;
  void operator()() noexcept { count->fetch_add(1, std::memory_order_relaxed); }
};

class CountingSync final : public PhaseSync {
 public:
  CountingSync(std::ptrdiff_t workers, std::atomic<std::uint64_t>* count) : barrier_(workers, CountPhase{count}) {}
  void wait() override { barrier_.arrive_and_wait(); }

 private:
  std::barrier<CountPhase> barrier_;
};

struct StagedState {
  DecoderEngine* engine;
  const TannerGraph* graph;
  const DecodeConfig* config;
  DecodeResult* result;
  BlockTallies* decision_sink;
  int iteration = 0;
  bool stop = false;
};

struct IterationEnd {
  StagedState* s;
  void operator()() noexcept {
    const int k = ++s->iteration;
    const bool last = k == s->config->max_iters;
    if (s->config->early_stop || last) {
      Tally t(s->decision_sink);
      s->engine->decide(s->result->decoded, t);
      s->result->syndrome_ok = syndrome_is_zero(*s->graph, s->result->decoded);
      s->result->iterations = k;
    }
    s->stop = last || (s->config->early_stop && s->result->syndrome_ok);
  }
};

}  // namespace

StagedReport staged_run(const TannerGraph& graph, Algorithm algo, const DecodeConfig& config,
                        const SymbolPriors& priors, std::size_t threads) {
  threads = std::max<std::size_t>(threads, 1);
  auto engine = make_engine(algo, graph, config);
  engine->load(priors);

  StagedReport report;
  OpCounters counters;
  std::atomic<std::uint64_t> barriers{0};
  const auto iters = static_cast<std::size_t>(config.max_iters);
  std::vector<std::vector<BlockTallies>> tallies(threads, std::vector<BlockTallies>(config.counters ? iters : 0));

  StagedState state{engine.get(), &graph, &config, &report.result, config.counters ? &counters.total : nullptr};
  CountingSync sync(static_cast<std::ptrdiff_t>(threads), &barriers);
  std::barrier control(static_cast<std::ptrdiff_t>(threads), IterationEnd{&state});

  auto work = [&](std::size_t w) {
    for (std::size_t k = 0; !state.stop; ++k) {
      Tally t(config.counters ? &tallies[w][k] : nullptr);
      engine->iterate(&sync, w, threads, t);
      control.arrive_and_wait();
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  pool.clear();

  auto& result = report.result;
  result.zero_sum_fallbacks = engine->zero_sum_fallbacks();
  report.barriers = barriers.load();
  report.barriers_per_iteration = report.barriers / static_cast<std::uint64_t>(state.iteration);
  if (config.counters) {
    counters.per_iteration.resize(static_cast<std::size_t>(state.iteration));
    for (const auto& worker : tallies) {
      for (std::size_t k = 0; k < counters.per_iteration.size(); ++k) counters.per_iteration[k] += worker[k];
    }
    for (const auto& it : counters.per_iteration) counters.total += it;
    counters.barriers = report.barriers;
    counters.zero_sum_fallbacks = result.zero_sum_fallbacks;
    result.counters = std::move(counters);
  }
  return report;
}

}  // namespace nbldpc
