#include "nbldpc/fft_spa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "nbldpc/error.hpp"

namespace nbldpc {

namespace {

template <class T>
void wht_stage(const T* src, T* dst, std::size_t g, std::size_t bit) {
  for (std::size_t x = 0; x < g; ++x) {
    const T s = (x & bit) ? T(-1) : T(1);
    dst[x] = static_cast<T>(src[x ^ bit] + s * src[x]);
  }
}

void require_power_of_two(std::size_t g) {
  if (g < 2 || !std::has_single_bit(g)) {
    throw Error(ErrorKind::kLengthMismatch, "transform length " + std::to_string(g) + " is not a power of two");
  }
}

void wait(PhaseSync* sync) {
  if (sync) sync->wait();
}

}  // namespace

void multiply_distribution(std::span<const double> in, std::span<double> out, Symbol a, const Field& field) {
  const auto g = static_cast<std::size_t>(field.order());
  if (in.size() != g || out.size() != g) throw Error(ErrorKind::kLengthMismatch, "distribution length != g");
  const auto map = field.mul_row(field.inv(a));
  for (std::size_t x = 0; x < g; ++x) out[x] = in[map[x]];
}

std::vector<double> permute(std::span<const double> p, Symbol h, const Field& field) {
  std::vector<double> out(p.size());
  multiply_distribution(p, out, h, field);
  return out;
}

std::vector<double> depermute(std::span<const double> p, Symbol h, const Field& field) {
  std::vector<double> out(p.size());
  multiply_distribution(p, out, field.inv(h), field);
  return out;
}

void fft_gf(std::span<double> v) {
  require_power_of_two(v.size());
  std::vector<double> tmp(v.size());
  for (std::size_t bit = 1; bit < v.size(); bit <<= 1) {
    std::copy(v.begin(), v.end(), tmp.begin());
    wht_stage(tmp.data(), v.data(), v.size(), bit);
  }
}

void ifft_gf(std::span<double> v) {
  fft_gf(v);
  const auto g = static_cast<double>(v.size());
  for (auto& x : v) x /= g;
}

std::vector<std::vector<double>> check_node_update(const std::vector<std::vector<double>>& u,
                                                   std::span<const Symbol> h, const Field& field) {
  if (u.size() != h.size()) throw Error(ErrorKind::kLengthMismatch, "one message per coefficient required");
  const auto g = static_cast<std::size_t>(field.order());
  std::vector<PcmEntry> entries;
  for (std::size_t j = 0; j < h.size(); ++j) entries.push_back({0, static_cast<std::uint32_t>(j), h[j]});
  const TannerGraph graph(ParityCheckMatrix(field, 1, h.size(), std::move(entries)));
  SymbolPriors priors{PriorMode::kProbability, h.size(), g, {}};
  for (const auto& row : u) {
    if (row.size() != g) throw Error(ErrorKind::kLengthMismatch, "message length != g");
    priors.values.insert(priors.values.end(), row.begin(), row.end());
  }
  FftSpaEngine<Float64Arith> engine(graph, DecodeConfig{});
  engine.load(priors);
  Tally off(nullptr);
  engine.check_phase(nullptr, 0, 1, off);
  std::vector<std::vector<double>> out;
  for (std::size_t e = 0; e < h.size(); ++e) {
    const auto row = engine.to_variable(e);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

template <class A>
FftSpaEngine<A>::FftSpaEngine(const TannerGraph& graph, const DecodeConfig& config)
    : graph_(graph), g_(static_cast<std::size_t>(graph.field().order())), q_(graph.field().q()) {
  (void)config;
  for (std::size_t m = 0; m < graph.num_checks(); ++m) {
    if (graph.check_degree(m) < 2) {
      throw Error(ErrorKind::kInvalidConfig, "check node " + std::to_string(m) + " has degree < 2");
    }
  }
  const std::size_t edges = graph.num_edges();
  const Field& f = graph.field();
  to_check_map_.resize(edges);
  to_variable_map_.resize(edges);
  for (std::size_t e = 0; e < edges; ++e) {
    const Symbol h = graph.edge_coeff(e);
    to_check_map_[e] = f.mul_row(f.inv(h)).data();
    to_variable_map_[e] = f.mul_row(h).data();
  }
  prior_.assign(graph.num_variables() * g_, Value{});
  u_.assign(edges * g_, Value{});
  v_.assign(edges * g_, Value{});
  w_.assign(edges * g_, Wide{});
  prod_.assign(edges * g_, Wide{});
  scratch_w_.assign(edges * g_, Wide{});
  scratch_v_.assign(edges * g_, Value{});
}

template <class A>
void FftSpaEngine<A>::normalize(Value* row, Block b, Tally& t) {
  Wide sum{};
  for (std::size_t x = 0; x < g_; ++x) sum += row[x];
  if (t.enabled()) {
    auto& o = t.ops(b);
    o.additions += g_;
    o.comparisons += 1;
    o.memory += 2 * g_;
  }
  if (sum <= Wide{}) {
    fallbacks_.fetch_add(1, std::memory_order_relaxed);
    if constexpr (A::kIsFloat) {
      std::fill(row, row + g_, 1.0 / static_cast<double>(g_));
    } else {
      const Wide one = fx::one<A>();
      const auto base = static_cast<Wide>(one / static_cast<Wide>(g_));
      const auto rem = static_cast<std::size_t>(one - base * static_cast<Wide>(g_));
      for (std::size_t x = 0; x < g_; ++x) row[x] = static_cast<Value>(base + (x < rem ? 1 : 0));
    }
    return;
  }
  if constexpr (A::kIsFloat) {
    for (std::size_t x = 0; x < g_; ++x) row[x] /= sum;
    if (t.enabled()) t.ops(b).divisions += g_;
  } else {
    const std::int64_t one = fx::one<A>();
    for (std::size_t x = 0; x < g_; ++x) row[x] = static_cast<Value>(row[x] * one / static_cast<std::int64_t>(sum));
    if (t.enabled()) {
      t.ops(b).multiplications += g_;
      t.ops(b).divisions += g_;
    }
  }
}

template <class A>
void FftSpaEngine<A>::load(const SymbolPriors& priors) {
  if (priors.mode != PriorMode::kProbability) {
    throw Error(ErrorKind::kInvalidConfig, "FFT-SPA expects probability-mode priors");
  }
  if (priors.symbols != graph_.num_variables() || priors.order != g_) {
    throw Error(ErrorKind::kLengthMismatch, "priors do not match the code dimensions");
  }
  Tally off(nullptr);
  for (std::size_t n = 0; n < priors.symbols; ++n) {
    const auto in = priors.row(n);
    Value* out = prior_.data() + n * g_;
    if constexpr (A::kIsFloat) {
      std::copy(in.begin(), in.end(), out);
    } else {
      const auto one = static_cast<double>(fx::one<A>());
      for (std::size_t x = 0; x < g_; ++x) out[x] = static_cast<Value>(quantize_one(in[x], A::kBits, one));
      normalize(out, Block::kFixedRenormalization, off);
    }
  }
  for (std::size_t e = 0; e < graph_.num_edges(); ++e) {
    const Value* p = prior_.data() + graph_.edge_variable(e) * g_;
    std::copy(p, p + g_, u_.data() + e * g_);
  }
  std::fill(v_.begin(), v_.end(), Value{});
  fallbacks_.store(0, std::memory_order_relaxed);
}

template <class A>
void FftSpaEngine<A>::permute_gather(std::size_t eb, std::size_t ee, Tally& t) {
  for (std::size_t e = eb; e < ee; ++e) {
    const Value* in = u_.data() + e * g_;
    Wide* out = scratch_w_.data() + e * g_;
    const Symbol* map = to_check_map_[e];
    for (std::size_t x = 0; x < g_; ++x) out[x] = in[map[x]];
  }
  if (t.enabled()) {
    t.ops(Block::kPermutation).memory += 2 * (ee - eb) * g_;
    t.loop(Block::kPermutation, (ee - eb) * (g_ + 1));
  }
}

template <class A>
void FftSpaEngine<A>::wide_commit(std::size_t eb, std::size_t ee) {
  std::copy(scratch_w_.begin() + static_cast<std::ptrdiff_t>(eb * g_),
            scratch_w_.begin() + static_cast<std::ptrdiff_t>(ee * g_), w_.begin() + static_cast<std::ptrdiff_t>(eb * g_));
}

template <class A>
void FftSpaEngine<A>::snapshot(std::vector<Wide>& bank, std::size_t eb, std::size_t ee) {
  std::copy(bank.begin() + static_cast<std::ptrdiff_t>(eb * g_), bank.begin() + static_cast<std::ptrdiff_t>(ee * g_),
            scratch_w_.begin() + static_cast<std::ptrdiff_t>(eb * g_));
}

template <class A>
void FftSpaEngine<A>::transform_stage(std::vector<Wide>& bank, std::size_t bit, std::size_t eb, std::size_t ee,
                                      Block b, Tally& t) {
  for (std::size_t e = eb; e < ee; ++e) wht_stage(scratch_w_.data() + e * g_, bank.data() + e * g_, g_, bit);
  if (t.enabled()) {
    const std::size_t n = (ee - eb) * g_;
    auto& o = t.ops(b);
    o.additions += n;
    o.multiplications += n;
    o.memory += n;
    t.loop(b, n);
  }
}

template <class A>
void FftSpaEngine<A>::cnp_product(std::size_t eb, std::size_t ee, Tally& t) {
  std::uint64_t muls = 0;
  std::uint64_t trips = 0;
  for (std::size_t e = eb; e < ee; ++e) {
    const std::size_t m = graph_.edge_check(e);
    const std::size_t first = graph_.cn_offset(m);
    const std::size_t dc = graph_.check_degree(m);
    Wide* out = prod_.data() + e * g_;
    for (std::size_t x = 0; x < g_; ++x) {
      Wide acc = fx::one<A>();
      for (std::size_t j = first; j < first + dc; ++j) {
        if (j != e) acc = fx::mul<A>(acc, w_[j * g_ + x]);
      }
      out[x] = acc;
    }
    muls += (dc - 1) * g_;
    trips += 1 + g_ + dc * g_;
  }
  if (t.enabled()) {
    auto& o = t.ops(Block::kCnpProduct);
    o.multiplications += muls;
    o.memory += muls;
    t.loop(Block::kCnpProduct, trips);
  }
}

template <class A>
void FftSpaEngine<A>::inverse_scale(std::size_t eb, std::size_t ee, Tally& t) {
  for (std::size_t e = eb; e < ee; ++e) {
    const Wide* in = prod_.data() + e * g_;
    Value* out = v_.data() + e * g_;
    for (std::size_t x = 0; x < g_; ++x) {
      if constexpr (A::kIsFloat) {
        const double r = in[x] / static_cast<double>(g_);
        out[x] = r < 0.0 ? 0.0 : r;
      } else {
        out[x] = fx::saturate<A>(static_cast<Wide>(in[x] >> q_), Wide{});
      }
    }
  }
  if (t.enabled()) {
    const std::size_t n = (ee - eb) * g_;
    auto& o = t.ops(Block::kInverseFft);
    o.divisions += n;
    o.comparisons += n;
    o.memory += n;
    t.loop(Block::kInverseFft, n);
  }
}

template <class A>
void FftSpaEngine<A>::depermute_gather(std::size_t eb, std::size_t ee, Tally& t) {
  for (std::size_t e = eb; e < ee; ++e) {
    const Value* in = v_.data() + e * g_;
    Value* out = scratch_v_.data() + e * g_;
    const Symbol* map = to_variable_map_[e];
    for (std::size_t x = 0; x < g_; ++x) out[x] = in[map[x]];
  }
  if (t.enabled()) {
    t.ops(Block::kDepermutation).memory += 2 * (ee - eb) * g_;
    t.loop(Block::kDepermutation, (ee - eb) * (g_ + 1));
  }
}

template <class A>
void FftSpaEngine<A>::depermute_commit(std::size_t eb, std::size_t ee, Tally& t) {
  std::copy(scratch_v_.begin() + static_cast<std::ptrdiff_t>(eb * g_),
            scratch_v_.begin() + static_cast<std::ptrdiff_t>(ee * g_), v_.begin() + static_cast<std::ptrdiff_t>(eb * g_));
  if (t.enabled()) t.ops(Block::kDepermutation).memory += (ee - eb) * g_;
  if constexpr (!A::kIsFloat) {
    for (std::size_t e = eb; e < ee; ++e) normalize(v_.data() + e * g_, Block::kFixedRenormalization, t);
  }
}

template <class A>
void FftSpaEngine<A>::vnp_product(std::size_t eb, std::size_t ee, Tally& t) {
  std::uint64_t muls = 0;
  std::uint64_t trips = 0;
  for (std::size_t e = eb; e < ee; ++e) {
    const std::size_t n = graph_.edge_variable(e);
    const auto edges = graph_.variable_edges(n);
    const Value* p = prior_.data() + n * g_;
    Value* out = u_.data() + e * g_;
    for (std::size_t x = 0; x < g_; ++x) {
      Wide acc = fx::one<A>();
      for (const auto& ref : edges) {
        if (ref.edge != e) acc = fx::mul<A>(acc, v_[ref.edge * g_ + x]);
      }
      out[x] = static_cast<Value>(fx::mul<A>(acc, p[x]));
    }
    muls += edges.size() * g_;
    trips += 1 + g_ + edges.size() * g_;
  }
  if (t.enabled()) {
    auto& o = t.ops(Block::kVnp);
    o.multiplications += muls;
    o.memory += muls + (ee - eb) * g_;
    t.loop(Block::kVnp, trips);
  }
}

template <class A>
void FftSpaEngine<A>::vnp_normalize(std::size_t eb, std::size_t ee, Tally& t) {
  for (std::size_t e = eb; e < ee; ++e) normalize(u_.data() + e * g_, Block::kVnp, t);
  if (t.enabled()) t.loop(Block::kVnp, (ee - eb) * (1 + 2 * g_));
}

template <class A>
void FftSpaEngine<A>::check_phase(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& t) {
  const auto [eb, ee] = split_range(graph_.num_edges(), worker, workers);

  permute_gather(eb, ee, t);
  wait(sync);
  wide_commit(eb, ee);
  wait(sync);

  for (std::size_t bit = 1; bit < g_; bit <<= 1) {
    snapshot(w_, eb, ee);
    wait(sync);
    transform_stage(w_, bit, eb, ee, Block::kFft, t);
    wait(sync);
  }

  cnp_product(eb, ee, t);
  wait(sync);

  for (std::size_t bit = 1; bit < g_; bit <<= 1) {
    snapshot(prod_, eb, ee);
    wait(sync);
    transform_stage(prod_, bit, eb, ee, Block::kInverseFft, t);
    wait(sync);
  }
  inverse_scale(eb, ee, t);
  wait(sync);

  depermute_gather(eb, ee, t);
  wait(sync);
  depermute_commit(eb, ee, t);
  wait(sync);
}

template <class A>
void FftSpaEngine<A>::variable_phase(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& t) {
  const auto [eb, ee] = split_range(graph_.num_edges(), worker, workers);
  vnp_product(eb, ee, t);
  wait(sync);
  vnp_normalize(eb, ee, t);
  wait(sync);
}

template <class A>
void FftSpaEngine<A>::iterate(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& t) {
  check_phase(sync, worker, workers, t);
  variable_phase(sync, worker, workers, t);
}

template <class A>
void FftSpaEngine<A>::decide(Codeword& out, Tally& t) {
  const std::size_t n_vars = graph_.num_variables();
  out.resize(n_vars);
  std::uint64_t muls = 0;
  for (std::size_t n = 0; n < n_vars; ++n) {
    const auto edges = graph_.variable_edges(n);
    const Value* p = prior_.data() + n * g_;
    Wide best{};
    Symbol arg = 0;
    for (std::size_t x = 0; x < g_; ++x) {
      Wide acc = p[x];
      for (const auto& ref : edges) acc = fx::mul<A>(acc, v_[ref.edge * g_ + x]);
      if (x == 0 || acc > best) {
        best = acc;
        arg = static_cast<Symbol>(x);
      }
    }
    out[n] = arg;
    muls += edges.size() * g_;
  }
  if (t.enabled()) {
    auto& o = t.ops(Block::kDecision);
    o.multiplications += muls;
    o.comparisons += n_vars * g_;
    o.memory += muls + n_vars * g_;
  }
}

template class FftSpaEngine<Float64Arith>;
template class FftSpaEngine<Fixed32Arith>;
template class FftSpaEngine<Fixed8Arith>;

DecodeResult decode_fft_spa(const TannerGraph& graph, const SymbolPriors& priors, const DecodeConfig& config) {
  auto engine = make_engine(Algorithm::kFftSpa, graph, config);
  return run_decoder(*engine, graph, config, priors);
}

}  // namespace nbldpc
