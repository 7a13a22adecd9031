#include "nbldpc/min_max.hpp"

#include <algorithm>

#include "nbldpc/error.hpp"

namespace nbldpc {

namespace {

template <class T>
void gather(const T* in, T* out, const Symbol* map, std::size_t xb, std::size_t xe) {
  for (std::size_t x = xb; x < xe; ++x) out[x] = in[map[x]];
}

// out[x] = min over x' ^ h x'' == x of max(prev[x'], alpha[x''])
template <class T>
void minmax_step(const T* prev, const T* alpha, const Symbol* hrow, T* out, std::size_t g, std::size_t xb,
                 std::size_t xe) {
  for (std::size_t x = xb; x < xe; ++x) {
    T best = std::max(prev[x ^ hrow[0]], alpha[0]);
    for (std::size_t y = 1; y < g; ++y) best = std::min(best, std::max(prev[x ^ hrow[y]], alpha[y]));
    out[x] = best;
  }
}

// out[x] = min over x' of max(fprev[x' ^ h x], bnext[x'])
template <class T>
void minmax_merge(const T* fprev, const T* bnext, const Symbol* hrow, T* out, std::size_t g, std::size_t xb,
                  std::size_t xe) {
  for (std::size_t x = xb; x < xe; ++x) {
    const std::size_t hx = hrow[x];
    T best = std::max(fprev[hx], bnext[0]);
    for (std::size_t y = 1; y < g; ++y) best = std::min(best, std::max(fprev[y ^ hx], bnext[y]));
    out[x] = best;
  }
}

void count_gather(Tally& t, Block b, std::size_t n) {
  if (!t.enabled()) return;
  t.ops(b).memory += 2 * n;
  t.loop(b, n);
}

void count_pairs(Tally& t, Block b, std::size_t outputs, std::size_t g) {
  if (!t.enabled()) return;
  const std::uint64_t pairs = static_cast<std::uint64_t>(outputs) * g;
  auto& o = t.ops(b);
  o.additions += pairs;
  o.comparisons += pairs;
  o.memory += 3 * pairs + outputs;
  t.loop(b, pairs + outputs);
}

void wait(PhaseSync* sync) {
  if (sync) sync->wait();
}

}  // namespace

template <class T>
FBWorkspace<T> forward_backward(const std::vector<std::vector<T>>& alpha, std::span<const Symbol> h,
                                const Field& field) {
  const std::size_t d = h.size();
  const auto g = static_cast<std::size_t>(field.order());
  if (d < 2 || alpha.size() != d) throw Error(ErrorKind::kLengthMismatch, "need d_c >= 2 rows and coefficients");
  for (const auto& row : alpha) {
    if (row.size() != g) throw Error(ErrorKind::kLengthMismatch, "alpha row length != g");
  }
  FBWorkspace<T> ws{d, g, std::vector<T>(d * g), std::vector<T>(d * g)};
  gather(alpha[0].data(), ws.forward.data(), field.mul_row(field.inv(h[0])).data(), 0, g);
  gather(alpha[d - 1].data(), ws.backward.data() + (d - 1) * g, field.mul_row(field.inv(h[d - 1])).data(), 0, g);
  for (std::size_t s = 1; s < d; ++s) {
    minmax_step(ws.forward.data() + (s - 1) * g, alpha[s].data(), field.mul_row(h[s]).data(),
                ws.forward.data() + s * g, g, 0, g);
    const std::size_t j = d - 1 - s;
    minmax_step(ws.backward.data() + (j + 1) * g, alpha[j].data(), field.mul_row(h[j]).data(),
                ws.backward.data() + j * g, g, 0, g);
  }
  return ws;
}

template <class T>
std::vector<std::vector<T>> beta_extract(const FBWorkspace<T>& ws, std::span<const Symbol> h, const Field& field) {
  const std::size_t d = ws.degree;
  const std::size_t g = ws.order;
  if (h.size() != d || g != static_cast<std::size_t>(field.order())) {
    throw Error(ErrorKind::kLengthMismatch, "workspace does not match coefficients");
  }
  std::vector<std::vector<T>> beta(d, std::vector<T>(g));
  gather(ws.backward.data() + g, beta[0].data(), field.mul_row(h[0]).data(), 0, g);
  gather(ws.forward.data() + (d - 2) * g, beta[d - 1].data(), field.mul_row(h[d - 1]).data(), 0, g);
  for (std::size_t j = 1; j + 1 < d; ++j) {
    minmax_merge(ws.forward.data() + (j - 1) * g, ws.backward.data() + (j + 1) * g, field.mul_row(h[j]).data(),
                 beta[j].data(), g, 0, g);
  }
  return beta;
}

template FBWorkspace<double> forward_backward(const std::vector<std::vector<double>>&, std::span<const Symbol>,
                                              const Field&);
template FBWorkspace<std::int32_t> forward_backward(const std::vector<std::vector<std::int32_t>>&,
                                                    std::span<const Symbol>, const Field&);
template FBWorkspace<std::int8_t> forward_backward(const std::vector<std::vector<std::int8_t>>&,
                                                   std::span<const Symbol>, const Field&);
template std::vector<std::vector<double>> beta_extract(const FBWorkspace<double>&, std::span<const Symbol>,
                                                       const Field&);
template std::vector<std::vector<std::int32_t>> beta_extract(const FBWorkspace<std::int32_t>&,
                                                             std::span<const Symbol>, const Field&);
template std::vector<std::vector<std::int8_t>> beta_extract(const FBWorkspace<std::int8_t>&,
                                                            std::span<const Symbol>, const Field&);

// ---------------------------------------------------------------------------

template <class A>
MinMaxEngine<A>::MinMaxEngine(const TannerGraph& graph, const DecodeConfig& config)
    : graph_(graph),
      g_(static_cast<std::size_t>(graph.field().order())),
      scale_(config.effective_llr_scale()),
      barriers_(1) {
  for (std::size_t m = 0; m < graph.num_checks(); ++m) {
    const std::size_t d = graph.check_degree(m);
    if (d < 2) throw Error(ErrorKind::kInvalidConfig, "check node " + std::to_string(m) + " has degree < 2");
    barriers_ += 2 * d;
  }
  gamma_.assign(graph.num_variables() * g_, Value{});
  alpha_.assign(graph.num_edges() * g_, Value{});
  beta_.assign(graph.num_edges() * g_, Value{});
  fwd_.assign(graph.max_check_degree() * g_, Value{});
  bwd_.assign(graph.max_check_degree() * g_, Value{});
}

template <class A>
void MinMaxEngine<A>::load(const SymbolPriors& priors) {
  if (priors.mode == PriorMode::kProbability) {
    load(llr_init_minmax(priors));
    return;
  }
  if (priors.symbols != graph_.num_variables() || priors.order != g_) {
    throw Error(ErrorKind::kLengthMismatch, "priors do not match the code dimensions");
  }
  for (std::size_t i = 0; i < priors.values.size(); ++i) {
    const double gamma = std::max(priors.values[i], 0.0);
    if constexpr (A::kIsFloat) {
      gamma_[i] = gamma;
    } else {
      gamma_[i] = static_cast<Value>(quantize_one(gamma, A::kBits, scale_));
    }
  }
  for (std::size_t e = 0; e < graph_.num_edges(); ++e) {
    const Value* p = gamma_.data() + graph_.edge_variable(e) * g_;
    std::copy(p, p + g_, alpha_.data() + e * g_);
  }
  std::fill(beta_.begin(), beta_.end(), Value{});
}

template <class A>
void MinMaxEngine<A>::check_phase(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& t) {
  const Field& f = graph_.field();
  const auto [xb, xe] = split_range(g_, worker, workers);
  const std::size_t span = xe - xb;
  Value* fw = fwd_.data();
  Value* bw = bwd_.data();
  for (std::size_t m = 0; m < graph_.num_checks(); ++m) {
    const std::size_t d = graph_.check_degree(m);
    const std::size_t base = graph_.cn_offset(m);
    const auto edges = graph_.check_edges(m);
    const Value* a = alpha_.data() + base * g_;
    Value* beta = beta_.data() + base * g_;

    gather(a, fw, f.mul_row(f.inv(edges[0].coeff)).data(), xb, xe);
    gather(a + (d - 1) * g_, bw + (d - 1) * g_, f.mul_row(f.inv(edges[d - 1].coeff)).data(), xb, xe);
    count_gather(t, Block::kFbFirstEdge, 2 * span);
    wait(sync);

    for (std::size_t s = 1; s < d; ++s) {
      minmax_step(fw + (s - 1) * g_, a + s * g_, f.mul_row(edges[s].coeff).data(), fw + s * g_, g_, xb, xe);
      const std::size_t j = d - 1 - s;
      minmax_step(bw + (j + 1) * g_, a + j * g_, f.mul_row(edges[j].coeff).data(), bw + j * g_, g_, xb, xe);
      count_pairs(t, Block::kFbRemainingEdges, 2 * span, g_);
      wait(sync);
    }

    gather(bw + g_, beta, f.mul_row(edges[0].coeff).data(), xb, xe);
    count_gather(t, Block::kBetaFirstLastEdge, span);
    wait(sync);
    gather(fw + (d - 2) * g_, beta + (d - 1) * g_, f.mul_row(edges[d - 1].coeff).data(), xb, xe);
    count_gather(t, Block::kBetaFirstLastEdge, span);
    wait(sync);

    for (std::size_t j = 1; j + 1 < d; ++j) {
      minmax_merge(fw + (j - 1) * g_, bw + (j + 1) * g_, f.mul_row(edges[j].coeff).data(), beta + j * g_, g_, xb,
                   xe);
      count_pairs(t, Block::kBetaRemainingEdges, span, g_);
      wait(sync);
    }
  }
}

template <class A>
void MinMaxEngine<A>::variable_phase(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& t) {
  const auto [eb, ee] = split_range(graph_.num_edges(), worker, workers);
  std::uint64_t adds = 0;
  std::uint64_t trips = 0;
  for (std::size_t e = eb; e < ee; ++e) {
    const std::size_t n = graph_.edge_variable(e);
    const auto edges = graph_.variable_edges(n);
    const Value* gamma = gamma_.data() + n * g_;
    Value* out = alpha_.data() + e * g_;
    Value lowest{};
    for (std::size_t x = 0; x < g_; ++x) {
      Wide acc = gamma[x];
      for (const auto& ref : edges) {
        if (ref.edge != e) acc += beta_[ref.edge * g_ + x];
      }
      out[x] = fx::saturate<A>(acc, Wide{});
      if (x == 0 || out[x] < lowest) lowest = out[x];
    }
    for (std::size_t x = 0; x < g_; ++x) out[x] = static_cast<Value>(out[x] - lowest);
    adds += (edges.size() + 1) * g_;
    trips += 1 + 2 * g_ + edges.size() * g_;
  }
  if (t.enabled()) {
    const std::uint64_t n = (ee - eb) * g_;
    auto& o = t.ops(Block::kMinMaxVnp);
    o.additions += adds;
    o.comparisons += n;
    o.memory += adds - n + 2 * n;
    t.loop(Block::kMinMaxVnp, trips);
  }
  wait(sync);
}

template <class A>
void MinMaxEngine<A>::iterate(PhaseSync* sync, std::size_t worker, std::size_t workers, Tally& t) {
  check_phase(sync, worker, workers, t);
  variable_phase(sync, worker, workers, t);
}

template <class A>
void MinMaxEngine<A>::decide(Codeword& out, Tally& t) {
  const std::size_t n_vars = graph_.num_variables();
  out.resize(n_vars);
  std::uint64_t adds = 0;
  for (std::size_t n = 0; n < n_vars; ++n) {
    const auto edges = graph_.variable_edges(n);
    const Value* gamma = gamma_.data() + n * g_;
    Wide best{};
    Symbol arg = 0;
    for (std::size_t x = 0; x < g_; ++x) {
      Wide acc = gamma[x];
      for (const auto& ref : edges) acc += beta_[ref.edge * g_ + x];
      if (x == 0 || acc < best) {
        best = acc;
        arg = static_cast<Symbol>(x);
      }
    }
    out[n] = arg;
    adds += edges.size() * g_;
  }
  if (t.enabled()) {
    auto& o = t.ops(Block::kDecision);
    o.additions += adds;
    o.comparisons += n_vars * g_;
    o.memory += adds + n_vars * g_;
  }
}

template class MinMaxEngine<Float64Arith>;
template class MinMaxEngine<Fixed32Arith>;
template class MinMaxEngine<Fixed8Arith>;

DecodeResult decode_min_max(const TannerGraph& graph, const SymbolPriors& gamma, const DecodeConfig& config) {
  auto engine = make_engine(Algorithm::kMinMax, graph, config);
  return run_decoder(*engine, graph, config, gamma);
}

}  // namespace nbldpc
